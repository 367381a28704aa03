#include "dxs/rs_codec.hpp"

#include <array>
#include <stdexcept>

namespace dxs {

namespace gf16 {
namespace {

struct Tables {
  std::vector<uint16_t> exp;  // exp[i] = alpha^i, doubled for wraparound
  std::vector<uint32_t> log;  // log[a] for a != 0

  Tables() : exp(2 * kOrder), log(65536, 0) {
    uint32_t el = 1;
    for (uint32_t i = 0; i < kOrder; ++i) {
      exp[i] = static_cast<uint16_t>(el);
      log[el] = i;
      el <<= 1;
      if (el & 0x10000) el ^= kPoly;
    }
    if (el != 1) throw std::logic_error("gf16: polynomial is not primitive");
    for (uint32_t i = 0; i < kOrder; ++i) exp[kOrder + i] = exp[i];
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

uint16_t mul(uint16_t a, uint16_t b) {
  if (a == 0 || b == 0) return 0;
  const Tables& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

uint16_t inv(uint16_t a) {
  if (a == 0) throw std::domain_error("gf16::inv(0)");
  const Tables& t = tables();
  return t.exp[kOrder - t.log[a]];
}

uint16_t pow_alpha(uint32_t e) { return tables().exp[e % kOrder]; }

}  // namespace gf16

namespace {

using gf16::mul;

// Generator polynomial prod_{j=1..2t} (x + alpha^j), coefficients ascending,
// g[2t] = 1.
std::vector<uint16_t> generator_poly(size_t t) {
  std::vector<uint16_t> g{1};
  for (size_t j = 1; j <= 2 * t; ++j) {
    uint16_t root = gf16::pow_alpha(static_cast<uint32_t>(j));
    std::vector<uint16_t> next(g.size() + 1, 0);
    for (size_t i = 0; i < g.size(); ++i) {
      next[i + 1] ^= g[i];
      next[i] ^= mul(g[i], root);
    }
    g = std::move(next);
  }
  return g;
}

// Horner evaluation; poly[0] is the highest-degree coefficient, matching the
// first-symbol-is-highest-degree codeword convention.
uint16_t eval_poly_desc(std::span<const uint16_t> poly, uint16_t x) {
  uint16_t acc = 0;
  for (uint16_t c : poly) acc = static_cast<uint16_t>(mul(acc, x) ^ c);
  return acc;
}

}  // namespace

std::vector<uint16_t> rs_encode(std::span<const uint16_t> data, size_t t) {
  if (data.size() + 2 * t > gf16::kOrder) {
    throw std::invalid_argument("rs_encode: codeword exceeds field size");
  }
  if (t == 0) return {};
  std::vector<uint16_t> g = generator_poly(t);
  const size_t np = 2 * t;
  // Remainder of data(x) * x^{2t} mod g(x) via LFSR-style long division.
  std::vector<uint16_t> rem(np, 0);
  for (uint16_t d : data) {
    uint16_t feedback = static_cast<uint16_t>(d ^ rem[0]);
    for (size_t i = 0; i + 1 < np; ++i) {
      rem[i] = static_cast<uint16_t>(rem[i + 1] ^ mul(feedback, g[np - 1 - i]));
    }
    rem[np - 1] = mul(feedback, g[0]);
  }
  return rem;
}

std::optional<std::vector<uint16_t>> rs_decode(std::span<const uint16_t> received,
                                               size_t data_len, size_t t) {
  if (received.size() != data_len + 2 * t) {
    throw std::invalid_argument("rs_decode: length mismatch");
  }
  std::vector<uint16_t> word(received.begin(), received.end());
  auto data_part = [&] {
    return std::vector<uint16_t>(word.begin(), word.begin() + data_len);
  };
  if (t == 0) return data_part();

  const size_t n2t = 2 * t;
  std::vector<uint16_t> synd(n2t);
  bool clean = true;
  for (size_t j = 1; j <= n2t; ++j) {
    synd[j - 1] = eval_poly_desc(word, gf16::pow_alpha(static_cast<uint32_t>(j)));
    if (synd[j - 1] != 0) clean = false;
  }
  if (clean) return data_part();

  // Berlekamp-Massey for the error locator (coefficients ascending).
  std::vector<uint16_t> lambda{1}, prev{1};
  size_t errors = 0, shift = 1;
  uint16_t prev_disc = 1;
  for (size_t step = 0; step < n2t; ++step) {
    uint16_t disc = synd[step];
    for (size_t i = 1; i <= errors; ++i) {
      if (i < lambda.size()) disc ^= mul(lambda[i], synd[step - i]);
    }
    if (disc == 0) {
      ++shift;
    } else if (2 * errors <= step) {
      std::vector<uint16_t> saved = lambda;
      uint16_t scale = mul(disc, gf16::inv(prev_disc));
      lambda.resize(std::max(lambda.size(), prev.size() + shift), 0);
      for (size_t i = 0; i < prev.size(); ++i) {
        lambda[i + shift] ^= mul(scale, prev[i]);
      }
      prev = std::move(saved);
      prev_disc = disc;
      errors = step + 1 - errors;
      shift = 1;
    } else {
      uint16_t scale = mul(disc, gf16::inv(prev_disc));
      if (lambda.size() < prev.size() + shift) lambda.resize(prev.size() + shift, 0);
      for (size_t i = 0; i < prev.size(); ++i) {
        lambda[i + shift] ^= mul(scale, prev[i]);
      }
      ++shift;
    }
  }
  while (!lambda.empty() && lambda.back() == 0) lambda.pop_back();
  if (errors > t || lambda.size() != errors + 1) return std::nullopt;

  // Omega(x) = S(x) * Lambda(x) mod x^{2t}, S ascending from S_1.
  std::vector<uint16_t> omega(n2t, 0);
  for (size_t i = 0; i < lambda.size(); ++i) {
    for (size_t j = 0; i + j < n2t && j < n2t; ++j) {
      omega[i + j] ^= mul(lambda[i], synd[j]);
    }
  }

  // Chien search over every codeword position; Forney for magnitudes.
  const size_t n = word.size();
  size_t roots = 0;
  for (size_t pos = 0; pos < n; ++pos) {
    uint32_t e = static_cast<uint32_t>(n - 1 - pos);
    uint16_t x = gf16::pow_alpha(e);            // locator of this position
    uint16_t xi = gf16::inv(x);
    uint16_t lam = 0;
    for (size_t i = lambda.size(); i-- > 0;) {
      lam = static_cast<uint16_t>(mul(lam, xi) ^ lambda[i]);
    }
    if (lam != 0) continue;
    ++roots;
    uint16_t num = 0;
    for (size_t i = omega.size(); i-- > 0;) {
      num = static_cast<uint16_t>(mul(num, xi) ^ omega[i]);
    }
    uint16_t den = 0;  // Lambda'(xi); odd-degree terms only in char 2
    for (size_t i = 1; i < lambda.size(); i += 2) {
      uint16_t term = lambda[i];
      for (size_t c = 0; c + 1 < i; ++c) term = mul(term, xi);
      den ^= term;
    }
    if (den == 0) return std::nullopt;
    word[pos] ^= mul(num, gf16::inv(den));
  }
  if (roots != errors) return std::nullopt;

  for (size_t j = 1; j <= n2t; ++j) {
    if (eval_poly_desc(word, gf16::pow_alpha(static_cast<uint32_t>(j))) != 0) {
      return std::nullopt;
    }
  }
  return data_part();
}

std::vector<uint16_t> hamming_redundancy(std::span<const uint16_t> s, size_t k) {
  return rs_encode(s, k);
}

std::optional<std::vector<uint16_t>> hamming_recover(
    std::span<const uint16_t> s_b, std::span<const uint16_t> redundancy,
    size_t k) {
  std::vector<uint16_t> received(s_b.begin(), s_b.end());
  received.insert(received.end(), redundancy.begin(), redundancy.end());
  return rs_decode(received, s_b.size(), k);
}

std::vector<std::vector<uint16_t>> interleave_signatures(
    std::span<const BitString> sigs, size_t symbol_bits) {
  if (symbol_bits < 1 || symbol_bits > 16) {
    throw std::invalid_argument("interleave_signatures: symbol_bits must be 1..16");
  }
  if (sigs.empty()) return {};
  const size_t width = sigs[0].size();
  for (const BitString& s : sigs) {
    if (s.size() != width) {
      throw std::invalid_argument("interleave_signatures: ragged widths");
    }
  }
  const size_t d = (width + symbol_bits - 1) / symbol_bits;
  std::vector<std::vector<uint16_t>> seqs(d);
  for (auto& s : seqs) s.reserve(sigs.size());
  for (const BitString& sig : sigs) {
    for (size_t i = 0; i < d; ++i) {
      size_t lo = i * symbol_bits;
      size_t take = std::min(symbol_bits, width - lo);
      uint16_t sym = static_cast<uint16_t>(sig.word_at(lo) >> (64 - symbol_bits));
      if (take < symbol_bits) {
        sym &= static_cast<uint16_t>(~uint32_t{0} << (symbol_bits - take));
      }
      seqs[i].push_back(sym);
    }
  }
  return seqs;
}

std::vector<BitString> deinterleave_signatures(
    std::span<const std::vector<uint16_t>> seqs, size_t width,
    size_t symbol_bits) {
  if (seqs.empty()) return {};
  const size_t d = (width + symbol_bits - 1) / symbol_bits;
  if (seqs.size() != d) {
    throw std::invalid_argument("deinterleave_signatures: sequence count mismatch");
  }
  const size_t count = seqs[0].size();
  for (const auto& s : seqs) {
    if (s.size() != count) {
      throw std::invalid_argument("deinterleave_signatures: ragged sequences");
    }
  }
  std::vector<BitString> sigs(count);
  for (size_t j = 0; j < count; ++j) {
    for (size_t i = 0; i < d; ++i) {
      size_t lo = i * symbol_bits;
      size_t take = std::min(symbol_bits, width - lo);
      uint64_t word = static_cast<uint64_t>(seqs[i][j]) << (64 - symbol_bits);
      sigs[j].append_word(word, take);
    }
  }
  return sigs;
}

}  // namespace dxs
