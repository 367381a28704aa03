#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dxs/bitstring.hpp"

namespace dxs {

// GF(2^16) with the primitive polynomial x^16 + x^12 + x^3 + x + 1; the
// polynomial is normative for wire compatibility. Log/antilog tables are
// built once and immutable afterwards.
namespace gf16 {

inline constexpr uint32_t kPoly = 0x1100B;
inline constexpr uint32_t kOrder = 65535;  // size of the multiplicative group

uint16_t mul(uint16_t a, uint16_t b);
uint16_t inv(uint16_t a);
uint16_t pow_alpha(uint32_t e);  // alpha^e, alpha = x

}  // namespace gf16

// Systematic Reed-Solomon over GF(2^16): classical generator-polynomial
// encoding, Berlekamp-Massey + Chien + Forney decoding. Corrects up to t
// symbol errors with 2t parity symbols.

// Returns the 2t parity symbols for `data`. Requires |data| + 2t <= 65535.
std::vector<uint16_t> rs_encode(std::span<const uint16_t> data, size_t t);

// Decodes `received` = data || parity (data_len + 2t symbols). Returns the
// data symbols if at most t errors hit the codeword; nullopt on detected
// failure. More than t errors may also produce a wrong codeword undetected,
// which callers treat as wrong symbols.
std::optional<std::vector<uint16_t>> rs_decode(std::span<const uint16_t> received,
                                               size_t data_len, size_t t);

// One-way document exchange under Hamming distance: send rs parity, decode
// against the receiver's own copy.
std::vector<uint16_t> hamming_redundancy(std::span<const uint16_t> s, size_t k);
std::optional<std::vector<uint16_t>> hamming_recover(
    std::span<const uint16_t> s_b, std::span<const uint16_t> redundancy, size_t k);

// Splits each fixed-width signature block into d = ceil(width/symbol_bits)
// symbols and returns d sequences, sequence i holding symbol i of every
// block. Corrupting whole blocks then corrupts at most one symbol per
// sequence, so each sequence is protected independently.
std::vector<std::vector<uint16_t>> interleave_signatures(
    std::span<const BitString> sigs, size_t symbol_bits = 16);

// Exact inverse, given the original block bit-width.
std::vector<BitString> deinterleave_signatures(
    std::span<const std::vector<uint16_t>> seqs, size_t width,
    size_t symbol_bits = 16);

}  // namespace dxs
