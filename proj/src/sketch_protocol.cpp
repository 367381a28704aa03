#include "dxs/sketch_protocol.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

namespace dxs {

namespace {

class BitWriter {
 public:
  void put(uint64_t value, uint32_t width) {
    bits_.append_word(value << (64 - width), width);
  }
  void pad_to(size_t total) {
    while (bits_.size() + 64 <= total) bits_.append_word(0, 64);
    if (bits_.size() < total) bits_.append_word(0, total - bits_.size());
  }
  BitString take() { return std::move(bits_); }

 private:
  BitString bits_;
};

class BitReader {
 public:
  explicit BitReader(const BitString& bits) : bits_(bits) {}
  bool ok() const { return ok_; }
  uint64_t get(uint32_t width) {
    if (pos_ + width > bits_.size()) {
      ok_ = false;
      return 0;
    }
    uint64_t v = bits_.word_at(pos_) >> (64 - width);
    pos_ += width;
    return v;
  }

 private:
  const BitString& bits_;
  size_t pos_ = 0;
  bool ok_ = true;
};

uint32_t ceil_log2(uint64_t x) {
  return x <= 1 ? 0 : static_cast<uint32_t>(std::bit_width(x - 1));
}

// Fixed-width field layout of a serialized signature at one level; derived
// from (piece_len, k) only, so both sides agree without negotiation.
struct SigLayout {
  uint32_t w_pi;        // periodic-branch period and positions
  uint32_t w_cnt_per;
  uint32_t max_cnt_per;
  uint32_t w_s;         // offset of p' within the piece
  uint32_t w_l;         // aperiodic lengths, period, shift, positions
  uint32_t w_cnt_ap;
  uint32_t max_cnt_ap;
  uint32_t total;       // r_B
};

SigLayout sig_layout(uint64_t piece_len, uint32_t k) {
  const uint64_t pi_max = 4ull * k + 2;
  const uint64_t l_max = 12ull * k + 6;
  SigLayout L;
  L.w_pi = static_cast<uint32_t>(std::bit_width(pi_max));
  L.max_cnt_per = ceil_log2(pi_max) + 1;
  L.w_cnt_per = static_cast<uint32_t>(std::bit_width(uint64_t{L.max_cnt_per}));
  L.w_s = static_cast<uint32_t>(std::bit_width(piece_len));
  L.w_l = static_cast<uint32_t>(std::bit_width(l_max));
  L.max_cnt_ap = ceil_log2(l_max / 2 + 1);
  L.w_cnt_ap = static_cast<uint32_t>(std::bit_width(uint64_t{L.max_cnt_ap}));
  uint32_t per = L.w_pi + L.w_cnt_per + L.max_cnt_per * (L.w_pi + 1);
  uint32_t ap = L.w_s + 3 * L.w_l + L.w_cnt_ap + L.max_cnt_ap * (L.w_l + 1);
  L.total = 1 + std::max(per, ap);
  return L;
}

BitString serialize_signature(const PieceSignature& sig, const SigLayout& L) {
  BitWriter w;
  w.put(sig.periodic ? 1 : 0, 1);
  if (sig.periodic) {
    if (sig.positions.size() > L.max_cnt_per) {
      throw std::logic_error("signature sample exceeds periodic size bound");
    }
    w.put(sig.period, L.w_pi);
    w.put(sig.positions.size(), L.w_cnt_per);
    for (uint32_t q : sig.positions) w.put(q, L.w_pi);
    for (size_t r = 0; r < sig.positions.size(); ++r) w.put(sig.values[r], 1);
  } else {
    if (sig.positions.size() > L.max_cnt_ap) {
      throw std::logic_error("signature sample exceeds aperiodic size bound");
    }
    w.put(sig.offset, L.w_s);
    w.put(sig.len, L.w_l);
    w.put(sig.period, L.w_l);
    w.put(sig.shift, L.w_l);
    w.put(sig.positions.size(), L.w_cnt_ap);
    for (uint32_t q : sig.positions) w.put(q, L.w_l);
    for (size_t r = 0; r < sig.positions.size(); ++r) w.put(sig.values[r], 1);
  }
  w.pad_to(L.total);
  return w.take();
}

// Tolerant parse: range violations mark the signature invalid rather than
// throwing, since uncorrected blocks may carry arbitrary bits.
PieceSignature parse_signature(const BitString& block, const SigLayout& L,
                               uint64_t piece_len, uint32_t k) {
  PieceSignature sig;
  BitReader r(block);
  sig.periodic = r.get(1) != 0;
  const uint64_t pi_cap = 4ull * k + 2;
  if (sig.periodic) {
    sig.period = static_cast<uint32_t>(r.get(L.w_pi));
    size_t cnt = static_cast<size_t>(r.get(L.w_cnt_per));
    if (cnt > L.max_cnt_per) return sig;
    for (size_t i = 0; i < cnt; ++i) {
      sig.positions.push_back(static_cast<uint32_t>(r.get(L.w_pi)));
    }
    for (size_t i = 0; i < cnt; ++i) sig.values.push_back(r.get(1) != 0);
    sig.offset = 0;
    sig.len = static_cast<uint32_t>(piece_len);
    if (!r.ok() || sig.period < 1 || sig.period > pi_cap || sig.period > piece_len) {
      return sig;
    }
    for (uint32_t q : sig.positions) {
      if (q >= sig.period) return sig;
    }
  } else {
    sig.offset = static_cast<uint32_t>(r.get(L.w_s));
    sig.len = static_cast<uint32_t>(r.get(L.w_l));
    sig.period = static_cast<uint32_t>(r.get(L.w_l));
    sig.shift = static_cast<uint32_t>(r.get(L.w_l));
    size_t cnt = static_cast<size_t>(r.get(L.w_cnt_ap));
    if (cnt > L.max_cnt_ap) return sig;
    for (size_t i = 0; i < cnt; ++i) {
      sig.positions.push_back(static_cast<uint32_t>(r.get(L.w_l)));
    }
    for (size_t i = 0; i < cnt; ++i) sig.values.push_back(r.get(1) != 0);
    if (!r.ok() || sig.len < 8ull * k + 4 || sig.len > 12ull * k + 6 ||
        sig.len > piece_len || sig.offset > piece_len - sig.len ||
        sig.period < 1 || sig.period > sig.len || 2ull * sig.period <= sig.len ||
        2ull * sig.shift >= sig.len) {
      return sig;
    }
    for (uint32_t q : sig.positions) {
      if (q >= sig.len) return sig;
    }
  }
  sig.valid = true;
  return sig;
}

constexpr size_t kHeaderBytes = 20;
constexpr size_t kLevelHeaderBytes = 14;
constexpr uint8_t kVersion = 1;
constexpr uint8_t kFlagFallback = 1;

uint64_t fallback_bytes(uint64_t n) { return kHeaderBytes + 4 + (n + 7) / 8; }

uint64_t planned_bytes(const LevelPlan& plan) {
  uint64_t total = kHeaderBytes;
  for (size_t lv = 0; lv < plan.levels.size(); ++lv) {
    const LevelInfo& li = plan.levels[lv];
    total += kLevelHeaderBytes;
    if (lv == 0) {
      total += (li.piece_count * li.sig_bits + 7) / 8;
    } else {
      total += uint64_t{li.streams} * 4 * plan.k * 2;
    }
  }
  total += 4 + uint64_t{plan.bottom_streams} * 4 * plan.k * 2;
  return total;
}

}  // namespace

LevelPlan plan_levels(uint64_t n, uint32_t k) {
  if (n < 1 || k < 1) {
    throw std::invalid_argument("plan_levels: need n >= 1 and k >= 1");
  }
  LevelPlan plan;
  plan.n = n;
  plan.k = k;
  plan.k_pow2 = std::bit_ceil(k);
  uint32_t b = 1;
  while ((uint64_t{plan.k_pow2} << b) < n) ++b;
  plan.n_pad = uint64_t{plan.k_pow2} << b;

  const uint64_t top_len = uint64_t{1} << (b - 1);  // n_pad / (2 * k_pow2)
  const uint32_t log_n = static_cast<uint32_t>(std::bit_width(plan.n_pad)) - 1;
  const uint64_t bottom_len =
      std::bit_ceil(std::max<uint64_t>(32ull * k, std::bit_ceil(uint64_t{log_n})));

  if (top_len < bottom_len) {
    plan.fallback = true;
    plan.sketch_bytes = fallback_bytes(n);
    return plan;
  }
  for (uint64_t len = top_len; len >= bottom_len; len >>= 1) {
    LevelInfo li;
    li.piece_len = len;
    li.piece_count = plan.n_pad / len;
    SigLayout L = sig_layout(len, k);
    li.sig_bits = L.total;
    li.streams = (L.total + 15) / 16;
    plan.levels.push_back(li);
  }
  plan.bottom_streams = static_cast<uint32_t>(plan.levels.back().piece_len / 16);
  if (plan.levels.back().piece_count + 4ull * k > gf16::kOrder) {
    throw std::invalid_argument("plan_levels: stream would exceed GF(2^16)");
  }
  // Keep the level arithmetic for introspection even when the fallback wins;
  // build_sketch consults only the flag.
  plan.sketch_bytes = planned_bytes(plan);
  if (plan.sketch_bytes * 8 > n) {
    plan.fallback = true;
    plan.sketch_bytes = fallback_bytes(n);
  }
  return plan;
}

PieceSignature build_signature(const BitString& piece, uint32_t k) {
  const size_t B = piece.size();
  if (k < 1) throw std::invalid_argument("build_signature: k must be >= 1");
  if (B < 32ull * k) {
    throw std::invalid_argument("build_signature: piece shorter than 32k bits");
  }
  PieceSignature sig;
  const size_t pi_cap = 4ull * k + 2;
  const size_t pi = period_at_most(piece, 0, B, pi_cap);
  if (pi != 0) {
    sig.periodic = true;
    sig.period = static_cast<uint32_t>(pi);
    sig.offset = 0;
    sig.len = static_cast<uint32_t>(B);
    PeriodicDetSample ps = build_periodic_det_sample(piece, pi);
    sig.positions = std::move(ps.positions);
    sig.values = std::move(ps.values);
  } else {
    HighPeriodWindow hw = find_high_period_window(piece, pi_cap);
    const size_t wp = shortest_period_range(hw.window, 0, hw.window.size());
    BitString pprime = 2 * wp > hw.window.size()
                           ? std::move(hw.window)
                           : hw.window.substr(0, 2 * wp - 1);
    sig.periodic = false;
    sig.offset = static_cast<uint32_t>(hw.start);
    sig.len = static_cast<uint32_t>(pprime.size());
    sig.period = static_cast<uint32_t>(wp);
    DetSample ds = build_det_sample(pprime);
    sig.positions = std::move(ds.positions);
    sig.values = std::move(ds.values);
    sig.shift = ds.shift;
  }
  sig.valid = true;
  return sig;
}

Sketch build_sketch(const BitString& t_a, uint32_t k) {
  LevelPlan plan = plan_levels(t_a.size(), k);
  Sketch sk;
  sk.n = t_a.size();
  sk.k = k;
  if (plan.fallback) {
    sk.fallback = true;
    sk.fallback_payload = t_a;
    return sk;
  }
  BitString padded = t_a;
  padded.resize(plan.n_pad);

  for (size_t lv = 0; lv < plan.levels.size(); ++lv) {
    const LevelInfo& li = plan.levels[lv];
    SigLayout L = sig_layout(li.piece_len, k);
    std::vector<BitString> blocks;
    blocks.reserve(li.piece_count);
    for (uint64_t i = 0; i < li.piece_count; ++i) {
      PieceSignature sig =
          build_signature(padded.substr(i * li.piece_len, li.piece_len), k);
      blocks.push_back(serialize_signature(sig, L));
    }
    if (lv == 0) {
      sk.level0_sigs = std::move(blocks);
    } else {
      std::vector<std::vector<uint16_t>> parity;
      for (const auto& stream : interleave_signatures(blocks)) {
        parity.push_back(rs_encode(stream, 2ull * k));
      }
      sk.level_parity.push_back(std::move(parity));
    }
  }

  const LevelInfo& bot = plan.levels.back();
  std::vector<BitString> pieces;
  pieces.reserve(bot.piece_count);
  for (uint64_t i = 0; i < bot.piece_count; ++i) {
    pieces.push_back(padded.substr(i * bot.piece_len, bot.piece_len));
  }
  for (const auto& stream : interleave_signatures(pieces)) {
    sk.bottom_parity.push_back(rs_encode(stream, 2ull * k));
  }
  return sk;
}

namespace {

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v));
  out.push_back(static_cast<uint8_t>(v >> 8));
}
void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}
void put_u64(std::vector<uint8_t>& out, uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

class ByteReader {
 public:
  explicit ByteReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}
  uint64_t take(size_t count) {
    if (pos_ + count > bytes_.size()) {
      throw SketchParseError("sketch truncated");
    }
    uint64_t v = 0;
    for (size_t i = 0; i < count; ++i) {
      v |= uint64_t{bytes_[pos_ + i]} << (8 * i);
    }
    pos_ += count;
    return v;
  }
  std::span<const uint8_t> take_bytes(size_t count) {
    if (pos_ + count > bytes_.size()) {
      throw SketchParseError("sketch truncated");
    }
    auto out = bytes_.subspan(pos_, count);
    pos_ += count;
    return out;
  }
  bool exhausted() const { return pos_ == bytes_.size(); }

 private:
  std::span<const uint8_t> bytes_;
  size_t pos_ = 0;
};

}  // namespace

std::vector<uint8_t> serialize_sketch(const Sketch& sk) {
  LevelPlan plan = plan_levels(sk.n, sk.k);
  if (plan.fallback != sk.fallback) {
    throw std::invalid_argument("serialize_sketch: sketch disagrees with plan");
  }
  std::vector<uint8_t> out;
  out.reserve(plan.sketch_bytes);
  for (char c : {'D', 'X', 'S', '1'}) out.push_back(static_cast<uint8_t>(c));
  out.push_back(kVersion);
  out.push_back(sk.fallback ? kFlagFallback : 0);
  put_u64(out, sk.n);
  put_u32(out, sk.k);
  put_u16(out, sk.fallback ? 0 : static_cast<uint16_t>(plan.levels.size()));

  if (sk.fallback) {
    std::vector<uint8_t> payload = sk.fallback_payload.to_bytes();
    put_u32(out, static_cast<uint32_t>(payload.size()));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
  }

  for (size_t lv = 0; lv < plan.levels.size(); ++lv) {
    const LevelInfo& li = plan.levels[lv];
    put_u32(out, static_cast<uint32_t>(li.piece_count));
    put_u32(out, static_cast<uint32_t>(li.piece_len));
    put_u16(out, static_cast<uint16_t>(li.sig_bits));
    if (lv == 0) {
      BitString all;
      for (const BitString& blk : sk.level0_sigs) all.append(blk);
      std::vector<uint8_t> payload = all.to_bytes();
      put_u32(out, static_cast<uint32_t>(payload.size()));
      out.insert(out.end(), payload.begin(), payload.end());
    } else {
      const auto& parity = sk.level_parity[lv - 1];
      put_u32(out, static_cast<uint32_t>(li.streams * 4ull * sk.k * 2));
      for (const auto& stream : parity) {
        for (uint16_t sym : stream) put_u16(out, sym);
      }
    }
  }
  put_u32(out, static_cast<uint32_t>(plan.bottom_streams * 4ull * sk.k * 2));
  for (const auto& stream : sk.bottom_parity) {
    for (uint16_t sym : stream) put_u16(out, sym);
  }
  return out;
}

Sketch parse_sketch(std::span<const uint8_t> bytes) {
  ByteReader r(bytes);
  if (r.take(1) != 'D' || r.take(1) != 'X' || r.take(1) != 'S' || r.take(1) != '1') {
    throw SketchParseError("bad magic");
  }
  if (r.take(1) != kVersion) throw SketchParseError("unsupported version");
  const uint8_t flags = static_cast<uint8_t>(r.take(1));
  Sketch sk;
  sk.n = r.take(8);
  sk.k = static_cast<uint32_t>(r.take(4));
  const size_t level_count = static_cast<size_t>(r.take(2));
  sk.fallback = (flags & kFlagFallback) != 0;

  LevelPlan plan;
  try {
    plan = plan_levels(sk.n, sk.k);
  } catch (const std::invalid_argument& e) {
    throw SketchParseError(std::string("unplannable header: ") + e.what());
  }
  if (plan.fallback != sk.fallback ||
      level_count != (sk.fallback ? 0 : plan.levels.size())) {
    throw SketchParseError("sketch header disagrees with the (n, k) plan");
  }

  if (sk.fallback) {
    const size_t payload_len = static_cast<size_t>(r.take(4));
    if (payload_len != (sk.n + 7) / 8) throw SketchParseError("bad fallback length");
    auto payload = r.take_bytes(payload_len);
    sk.fallback_payload = BitString::from_bytes(payload, sk.n);
    return sk;
  }

  for (size_t lv = 0; lv < plan.levels.size(); ++lv) {
    const LevelInfo& li = plan.levels[lv];
    if (r.take(4) != li.piece_count || r.take(4) != li.piece_len ||
        r.take(2) != li.sig_bits) {
      throw SketchParseError("level header disagrees with the (n, k) plan");
    }
    const size_t payload_len = static_cast<size_t>(r.take(4));
    if (lv == 0) {
      const size_t expect = (li.piece_count * li.sig_bits + 7) / 8;
      if (payload_len != expect) throw SketchParseError("bad level-0 payload");
      BitString all =
          BitString::from_bytes(r.take_bytes(payload_len), li.piece_count * li.sig_bits);
      for (uint64_t i = 0; i < li.piece_count; ++i) {
        sk.level0_sigs.push_back(all.substr(i * li.sig_bits, li.sig_bits));
      }
    } else {
      if (payload_len != li.streams * 4ull * sk.k * 2) {
        throw SketchParseError("bad parity payload");
      }
      auto payload = r.take_bytes(payload_len);
      std::vector<std::vector<uint16_t>> parity(li.streams);
      size_t at = 0;
      for (auto& stream : parity) {
        for (size_t i = 0; i < 4ull * sk.k; ++i, at += 2) {
          stream.push_back(
              static_cast<uint16_t>(payload[at] | (payload[at + 1] << 8)));
        }
      }
      sk.level_parity.push_back(std::move(parity));
    }
  }
  const size_t bottom_len = static_cast<size_t>(r.take(4));
  if (bottom_len != plan.bottom_streams * 4ull * sk.k * 2) {
    throw SketchParseError("bad bottom payload");
  }
  auto payload = r.take_bytes(bottom_len);
  size_t at = 0;
  for (uint32_t s = 0; s < plan.bottom_streams; ++s) {
    std::vector<uint16_t> stream;
    for (size_t i = 0; i < 4ull * sk.k; ++i, at += 2) {
      stream.push_back(static_cast<uint16_t>(payload[at] | (payload[at + 1] << 8)));
    }
    sk.bottom_parity.push_back(std::move(stream));
  }
  if (!r.exhausted()) throw SketchParseError("trailing bytes");
  return sk;
}

std::optional<size_t> match_piece(const PieceSignature& sig, const LceIndex& text,
                                  size_t expected_start, uint32_t k) {
  if (!sig.valid) return std::nullopt;
  const size_t span = sig.offset + size_t{sig.len};
  std::vector<size_t> candidates;
  const size_t lo = expected_start > k ? expected_start - k : 0;
  for (size_t j = lo; j <= expected_start + k; ++j) {
    if (j + span <= text.size()) candidates.push_back(j);
  }
  if (candidates.empty()) return std::nullopt;
  SignatureView view;
  view.periodic = sig.periodic;
  view.period = sig.period;
  view.offset = sig.offset;
  view.len = sig.len;
  view.shift = sig.shift;
  view.positions = sig.positions;
  view.values = &sig.values;
  return eliminate_candidates(view, text, candidates);
}

ReconstructResult reconstruct(const BitString& t_b, const Sketch& sk,
                              ReconstructStats* stats) {
  ReconstructResult res;
  if (sk.fallback) {
    if (sk.fallback_payload.size() != sk.n) {
      throw SketchParseError("fallback payload length mismatch");
    }
    res.text = sk.fallback_payload;
    return res;
  }
  LevelPlan plan;
  try {
    plan = plan_levels(sk.n, sk.k);
  } catch (const std::invalid_argument& e) {
    throw SketchParseError(std::string("unplannable sketch: ") + e.what());
  }
  if (plan.fallback || sk.level0_sigs.size() != plan.levels[0].piece_count ||
      sk.level_parity.size() + 1 != plan.levels.size() ||
      sk.bottom_parity.size() != plan.bottom_streams) {
    throw SketchParseError("sketch shape disagrees with the (n, k) plan");
  }
  for (size_t lv = 1; lv < plan.levels.size(); ++lv) {
    if (sk.level_parity[lv - 1].size() != plan.levels[lv].streams) {
      throw SketchParseError("sketch parity shape disagrees with the plan");
    }
    for (const auto& stream : sk.level_parity[lv - 1]) {
      if (stream.size() != 4ull * sk.k) {
        throw SketchParseError("parity stream has the wrong length");
      }
    }
  }
  for (const auto& stream : sk.bottom_parity) {
    if (stream.size() != 4ull * sk.k) {
      throw SketchParseError("bottom parity stream has the wrong length");
    }
  }
  const uint32_t k = sk.k;
  if (stats) {
    stats->wrong_signatures.assign(plan.levels.size() - 1, 0);
    stats->wrong_bottom_pieces = 0;
    stats->unmatched_pieces = 0;
  }

  BitString work = t_b;
  if (work.size() < plan.n_pad + k) {
    work.resize(plan.n_pad + k);
  }
  LceIndex lce(std::move(work));
  const BitString& text = lce.text();

  SigLayout L0 = sig_layout(plan.levels[0].piece_len, k);
  std::vector<PieceSignature> sigs;
  sigs.reserve(plan.levels[0].piece_count);
  for (const BitString& blk : sk.level0_sigs) {
    sigs.push_back(parse_signature(blk, L0, plan.levels[0].piece_len, k));
  }

  std::vector<std::optional<size_t>> matches;
  for (size_t lv = 0;; ++lv) {
    const LevelInfo& li = plan.levels[lv];
    matches.assign(li.piece_count, std::nullopt);
    for (uint64_t i = 0; i < li.piece_count; ++i) {
      matches[i] = match_piece(sigs[i], lce, i * li.piece_len, k);
      if (stats && !matches[i]) ++stats->unmatched_pieces;
    }
    if (lv + 1 == plan.levels.size()) break;

    // Derive the next level's signatures from matched content; unmatched
    // parents leave all-zero placeholders for the RS correction to fix.
    const LevelInfo& ch = plan.levels[lv + 1];
    SigLayout Lc = sig_layout(ch.piece_len, k);
    std::vector<BitString> derived(ch.piece_count, BitString(Lc.total));
    for (uint64_t i = 0; i < li.piece_count; ++i) {
      if (!matches[i]) continue;
      for (int half = 0; half < 2; ++half) {
        BitString content =
            text.substr(*matches[i] + half * ch.piece_len, ch.piece_len);
        derived[2 * i + half] =
            serialize_signature(build_signature(content, k), Lc);
      }
    }
    auto streams = interleave_signatures(derived);
    for (size_t s = 0; s < streams.size(); ++s) {
      std::vector<uint16_t> received = streams[s];
      received.insert(received.end(), sk.level_parity[lv][s].begin(),
                      sk.level_parity[lv][s].end());
      auto fixed = rs_decode(received, ch.piece_count, 2ull * k);
      if (fixed) {
        streams[s] = std::move(*fixed);
      } else {
        res.detected_failure = true;
      }
    }
    std::vector<BitString> corrected = deinterleave_signatures(streams, Lc.total);
    if (stats) {
      for (uint64_t i = 0; i < ch.piece_count; ++i) {
        if (!(corrected[i] == derived[i])) ++stats->wrong_signatures[lv];
      }
    }
    sigs.clear();
    for (const BitString& blk : corrected) {
      sigs.push_back(parse_signature(blk, Lc, ch.piece_len, k));
    }
  }

  // Bottom level: copy matched contents, then RS-correct the piece columns.
  const LevelInfo& bot = plan.levels.back();
  std::vector<BitString> pieces(bot.piece_count, BitString(bot.piece_len));
  for (uint64_t i = 0; i < bot.piece_count; ++i) {
    if (matches[i] && *matches[i] + bot.piece_len <= text.size()) {
      pieces[i] = text.substr(*matches[i], bot.piece_len);
    }
  }
  auto streams = interleave_signatures(pieces);
  for (size_t s = 0; s < streams.size(); ++s) {
    std::vector<uint16_t> received = streams[s];
    received.insert(received.end(), sk.bottom_parity[s].begin(),
                    sk.bottom_parity[s].end());
    auto fixed = rs_decode(received, bot.piece_count, 2ull * k);
    if (fixed) {
      streams[s] = std::move(*fixed);
    } else {
      res.detected_failure = true;
    }
  }
  std::vector<BitString> corrected = deinterleave_signatures(streams, bot.piece_len);
  BitString out;
  for (uint64_t i = 0; i < bot.piece_count; ++i) {
    if (stats && !(corrected[i] == pieces[i])) ++stats->wrong_bottom_pieces;
    out.append(corrected[i]);
  }
  out.resize(sk.n);
  res.text = std::move(out);
  return res;
}

}  // namespace dxs
