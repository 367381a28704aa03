#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dxs/bitstring.hpp"
#include "dxs/strings_core.hpp"

namespace dxs {

// Vishkin deterministic sample of a non-periodic pattern p: a small position
// set plus an elimination shift. If a text window agrees with p at all
// sampled positions when aligned at i, then p cannot occur at alignments
// i - shift .. i - 1 or i + 1 .. i + floor(m/2) - shift.
struct DetSample {
  std::vector<uint32_t> positions;  // sorted, 0-based within the pattern
  BitString values;                 // values[r] = p[positions[r]]
  uint32_t shift = 0;               // 0 <= shift < m/2
  uint32_t pattern_len = 0;
};

// Sample for a periodic pattern, re-based into the first period. A window
// with period `period` agreeing with p at these positions rules out
// occurrences of p at the next period-1 alignments.
struct PeriodicDetSample {
  std::vector<uint32_t> positions;  // sorted, 0-based within [0, period)
  BitString values;
  uint32_t period = 0;
  uint32_t pattern_len = 0;
};

// Consistency oracle for (positions, shift) against pattern p: true iff every
// forbidden offset is witnessed by a sampled position whose value pins it
// down. This is exactly the condition under which an S-agreement at one
// alignment excludes a full occurrence at the offset alignment.
bool check_sample(const BitString& p, std::span<const uint32_t> positions,
                  uint32_t shift);

// Copy-elimination construction. Requires shortest_period(p) > |p|/2.
// O(m^2); positions count is at most ceil(log2(m/2 + 1)).
DetSample build_det_sample(const BitString& p);

// Requires shortest_period(p) == pi and 3*pi <= |p|. Builds the sample on the
// non-periodic prefix p[0, 2*pi-1) and folds positions modulo the period.
PeriodicDetSample build_periodic_det_sample(const BitString& p, size_t pi);

// What a decoder needs to test one signature against text candidates.
struct SignatureView {
  bool periodic = false;
  uint32_t period = 0;   // pi of the piece (periodic) or pi' of p' (aperiodic)
  uint64_t offset = 0;   // start of p' within the piece; 0 on the periodic branch
  uint64_t len = 0;      // |p'|; equals the piece length on the periodic branch
  uint32_t shift = 0;    // aperiodic elimination constant
  std::span<const uint32_t> positions;
  const BitString* values = nullptr;
};

// Runs the candidate elimination of the decoder over piece start positions
// (ascending). Periodic branch: leftmost candidate whose window has the
// stated period and matches the sample. Aperiodic branch: candidates passing
// the period + sample checks mutually eliminate via the shift ranges; at most
// one survivor remains. nullopt when nothing survives; a false positive when
// no true occurrence exists is acceptable to callers.
std::optional<size_t> eliminate_candidates(const SignatureView& sig,
                                           const LceIndex& text,
                                           std::span<const size_t> candidates);

}  // namespace dxs
