#include "dxs/edit_ecc.hpp"

#include <bit>

namespace dxs {

namespace {

size_t ones_in_range(const BitString& bits, size_t lo, size_t hi) {
  size_t ones = 0;
  for (size_t pos = lo; pos < hi; pos += 64) {
    uint64_t w = bits.word_at(pos);
    size_t take = std::min<size_t>(64, hi - pos);
    if (take < 64) w &= ~uint64_t{0} << (64 - take);
    ones += static_cast<size_t>(std::popcount(w));
  }
  return ones;
}

}  // namespace

BitString repeat_each_bit(const BitString& x, size_t copies) {
  BitString out;
  for (size_t i = 0; i < x.size(); ++i) {
    for (size_t c = 0; c < copies; ++c) out.push_back(x[i]);
  }
  return out;
}

BitString majority_decode(const BitString& tail, size_t source_bits,
                          size_t copies) {
  BitString out;
  for (size_t i = 0; i < source_bits; ++i) {
    const size_t lo = i * copies;
    const bool last = (i + 1 == source_bits);
    if (lo >= tail.size()) {
      out.push_back(false);
      continue;
    }
    const size_t hi = last ? tail.size() : std::min(tail.size(), lo + copies);
    const size_t width = last ? tail.size() - lo : copies;
    const size_t ones = ones_in_range(tail, lo, hi);
    if (last) {
      out.push_back(2 * ones >= width);  // ragged ties resolve to 1
    } else {
      out.push_back(2 * ones > width);
    }
  }
  return out;
}

uint64_t ecc_sketch_bits(uint64_t n, uint32_t k) {
  return plan_levels(n, k).sketch_bytes * 8;
}

uint64_t ecc_protected_bits(uint64_t n, uint32_t k) {
  return ecc_sketch_bits(n, k) * (2ull * k + 1);
}

EditCodeword ecc_encode(const BitString& s, uint32_t k, bool allow_large_k) {
  if (k < 1) throw std::invalid_argument("ecc_encode: k must be >= 1");
  const uint64_t n = s.size();
  if (!allow_large_k && uint64_t{k} * k * k > n) {
    throw std::invalid_argument("ecc_encode: k exceeds n^(1/3); pass the override to force");
  }
  std::vector<uint8_t> bytes = serialize_sketch(build_sketch(s, k));
  BitString sketch_bits = BitString::from_bytes(bytes, bytes.size() * 8);
  EditCodeword out;
  out.payload = s;
  out.protected_part = repeat_each_bit(sketch_bits, 2ull * k + 1);
  return out;
}

EccDecodeResult ecc_decode(const BitString& received, uint64_t n, uint32_t k) {
  if (k < 1) throw std::invalid_argument("ecc_decode: k must be >= 1");
  const uint64_t r = ecc_sketch_bits(n, k);
  const uint64_t m = r * (2ull * k + 1);
  if (received.size() + k < n + m || received.size() > n + m + k) {
    throw std::invalid_argument("ecc_decode: received length outside n + m +/- k");
  }
  EccDecodeResult res;
  BitString head = received.substr(0, n);
  BitString tail = received.substr(n, received.size() - n);
  BitString sketch_bits = majority_decode(tail, r, 2ull * k + 1);

  Sketch sketch;
  try {
    sketch = parse_sketch(sketch_bits.to_bytes());
    if (sketch.n != n || sketch.k != k) throw SketchParseError("header mismatch");
  } catch (const SketchParseError&) {
    res.text = std::move(head);
    res.detected_failure = true;
    return res;
  }
  ReconstructResult rec = reconstruct(head, sketch);
  res.text = std::move(rec.text);
  res.detected_failure = rec.detected_failure;
  return res;
}

}  // namespace dxs
