#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dxs/bitstring.hpp"
#include "dxs/det_sample.hpp"
#include "dxs/rs_codec.hpp"
#include "dxs/strings_core.hpp"

namespace dxs {

// One-way document exchange under edit distance: the sender of a string of n
// bits emits a single sketch; a receiver holding any string within edit
// distance k reconstructs the sender's string exactly. The sketch carries
// deterministic piece signatures level by level (piece length halving until
// max(32k, 2^ceil(log2 log2 n)) bits), RS parity to fix up to 2k wrong
// signatures per level, and RS parity over bottom-level piece contents.

struct LevelInfo {
  uint64_t piece_len = 0;
  uint64_t piece_count = 0;
  uint32_t sig_bits = 0;  // serialized signature width r_B at this level
  uint32_t streams = 0;   // ceil(sig_bits / 16)
};

struct LevelPlan {
  uint64_t n = 0;
  uint32_t k = 0;
  uint32_t k_pow2 = 0;  // k rounded up to a power of two
  uint64_t n_pad = 0;   // k_pow2 * 2^b, smallest such >= n
  bool fallback = false;
  std::vector<LevelInfo> levels;
  uint32_t bottom_streams = 0;
  uint64_t sketch_bytes = 0;  // serialized size of the non-fallback layout
};

// Deterministic in (n, k); sender and receiver recompute identical plans.
// fallback is set when no level fits or the sketch would exceed n bits.
LevelPlan plan_levels(uint64_t n, uint32_t k);

// Per-piece descriptor: the chosen substring p' (offset, length), its period,
// and a deterministic sample. periodic <=> the piece period is <= 4k+2, in
// which case p' is the whole piece.
struct PieceSignature {
  bool valid = false;
  bool periodic = false;
  uint32_t period = 0;  // piece period pi (periodic) or period of p' (aperiodic)
  uint32_t offset = 0;  // start of p' within the piece
  uint32_t len = 0;     // |p'|
  uint32_t shift = 0;   // elimination constant of the aperiodic sample
  std::vector<uint32_t> positions;
  BitString values;
};

// Requires |piece| >= 32k. Periodic branch when the shortest period is
// <= 4k+2; otherwise selects a window of length 12k+6 with period > 4k+2,
// trims it to a non-periodic p', and samples that.
PieceSignature build_signature(const BitString& piece, uint32_t k);

struct Sketch {
  uint64_t n = 0;
  uint32_t k = 0;
  bool fallback = false;
  BitString fallback_payload;                // original string when fallback
  std::vector<BitString> level0_sigs;        // raw signature blocks
  std::vector<std::vector<std::vector<uint16_t>>> level_parity;  // levels 1..
  std::vector<std::vector<uint16_t>> bottom_parity;  // content streams
};

Sketch build_sketch(const BitString& t_a, uint32_t k);

// Wire format (little-endian multi-byte fields, MSB-first bit packing):
//   "DXS1" | version u8 | flags u8 (bit0 = fallback) | n u64 | k u32 |
//   level_count u16 | per level: piece_count u32, piece_len u32, r_B u16,
//   payload_len u32, payload | bottom: payload_len u32, payload.
// Fallback sketches carry level_count 0 and the packed original bits.
std::vector<uint8_t> serialize_sketch(const Sketch& sketch);

class SketchParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Sketch parse_sketch(std::span<const uint8_t> bytes);

// Matches one signature against the 2k+1 candidate starts around
// expected_start (clipped to the text). Returns the surviving candidate.
std::optional<size_t> match_piece(const PieceSignature& sig, const LceIndex& text,
                                  size_t expected_start, uint32_t k);

struct ReconstructStats {
  std::vector<size_t> wrong_signatures;  // per RS-corrected signature level
  size_t wrong_bottom_pieces = 0;
  size_t unmatched_pieces = 0;
};

struct ReconstructResult {
  BitString text;
  bool detected_failure = false;
};

// Recovers the sender's string from the receiver's copy and the sketch.
// Exact whenever edit_distance(sender, receiver) <= sketch.k; detected RS
// inconsistencies surface in the flag with best-effort output.
ReconstructResult reconstruct(const BitString& t_b, const Sketch& sketch,
                              ReconstructStats* stats = nullptr);

}  // namespace dxs
