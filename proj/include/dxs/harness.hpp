#pragma once

#include <cstdint>

#include "dxs/bitstring.hpp"

namespace dxs {

// splitmix64; all harness randomness flows through explicit seeds so that
// identical invocations reproduce identical trials on any platform.
class DetRng {
 public:
  explicit DetRng(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  uint64_t below(uint64_t bound) { return next() % bound; }
  bool flip() { return next() & 1; }

 private:
  uint64_t state_;
};

inline uint64_t mix_seed(uint64_t a, uint64_t b) {
  return DetRng(a * 0x9E3779B97F4A7C15ull + b).next();
}

BitString random_bits(size_t n, uint64_t seed);

enum class EditOp { kInsert, kDelete, kSubstitute };

BitString apply_edit(const BitString& s, EditOp op, size_t pos, bool bit);

// Applies exactly e random edits; the true distance of the result may be
// smaller since edits can cancel.
BitString apply_random_edits(const BitString& s, size_t e, uint64_t seed);

}  // namespace dxs
