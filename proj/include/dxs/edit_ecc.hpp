#pragma once

#include <cstdint>

#include "dxs/bitstring.hpp"
#include "dxs/sketch_protocol.hpp"

namespace dxs {

// Error-correcting code for adversarial edit errors: the original string
// followed by its sketch protected with a (2k+1)-repetition code. The block
// majority survives k edits, and the recovered sketch then drives document
// exchange against the (possibly corrupted) head.

BitString repeat_each_bit(const BitString& x, size_t copies);

// Splits `tail` into source_bits blocks of length exactly `copies` (the last
// one ragged) and outputs each block's majority bit. Missing trailing bits
// count as zeros; a tied ragged block decodes to 1.
BitString majority_decode(const BitString& tail, size_t source_bits, size_t copies);

struct EditCodeword {
  BitString payload;         // the original n bits
  BitString protected_part;  // repetition-coded sketch, r * (2k+1) bits

  BitString full() const {
    BitString out = payload;
    out.append(protected_part);
    return out;
  }
};

// Serialized sketch size in bits for (n, k); deterministic, so the decoder
// recomputes it out of band.
uint64_t ecc_sketch_bits(uint64_t n, uint32_t k);

// Protected-part size m = r * (2k+1).
uint64_t ecc_protected_bits(uint64_t n, uint32_t k);

// Requires k^3 <= n (the regime the code targets) unless allow_large_k is set.
EditCodeword ecc_encode(const BitString& s, uint32_t k, bool allow_large_k = false);

struct EccDecodeResult {
  BitString text;
  bool detected_failure = false;
};

// (n, k) are code parameters known out of band. `received` must be within k
// bits of the nominal codeword length n + m.
EccDecodeResult ecc_decode(const BitString& received, uint64_t n, uint32_t k);

}  // namespace dxs
