#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dxs {

// Packed binary string. Bit i lives at the MSB end of word i/64, i.e. the
// packing order matches the MSB-first byte serialization used on the wire.
// Trailing bits of the last word are kept zero so whole-word compares work.
class BitString {
 public:
  BitString() = default;

  explicit BitString(size_t n) : nbits_(n), words_(word_count(n), 0) {}

  // Parses "0"/"1" characters; handy in tests.
  static BitString from_string(std::string_view s) {
    BitString out(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        out.set(i, true);
      } else if (s[i] != '0') {
        throw std::invalid_argument("BitString::from_string: bad character");
      }
    }
    return out;
  }

  // MSB-first bytes, the final byte zero-padded.
  static BitString from_bytes(std::span<const uint8_t> bytes, size_t nbits) {
    if (nbits > bytes.size() * 8) {
      throw std::invalid_argument("BitString::from_bytes: nbits too large");
    }
    BitString out(nbits);
    for (size_t w = 0; w < out.words_.size(); ++w) {
      uint64_t word = 0;
      for (size_t b = 0; b < 8; ++b) {
        size_t idx = w * 8 + b;
        word = (word << 8) | (idx < bytes.size() ? bytes[idx] : 0);
      }
      out.words_[w] = word;
    }
    out.mask_tail();
    return out;
  }

  std::vector<uint8_t> to_bytes() const {
    std::vector<uint8_t> out((nbits_ + 7) / 8, 0);
    for (size_t i = 0; i < out.size(); ++i) {
      size_t w = i / 8;
      out[i] = static_cast<uint8_t>(words_[w] >> (56 - 8 * (i % 8)));
    }
    return out;
  }

  size_t size() const { return nbits_; }
  bool empty() const { return nbits_ == 0; }

  bool operator[](size_t i) const {
    return (words_[i >> 6] >> (63 - (i & 63))) & 1u;
  }

  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (63 - (i & 63));
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void push_back(bool v) {
    if ((nbits_ & 63) == 0) words_.push_back(0);
    ++nbits_;
    if (v) set(nbits_ - 1, true);
  }

  // 64 bits starting at `pos`, MSB-first, zero-padded past the end.
  uint64_t word_at(size_t pos) const {
    if (pos >= nbits_) return 0;
    size_t w = pos >> 6;
    unsigned off = pos & 63;
    uint64_t v = words_[w] << off;
    if (off != 0 && w + 1 < words_.size()) {
      v |= words_[w + 1] >> (64 - off);
    }
    return v;
  }

  BitString substr(size_t pos, size_t len) const {
    if (pos + len > nbits_) {
      throw std::out_of_range("BitString::substr");
    }
    BitString out(len);
    for (size_t w = 0; w * 64 < len; ++w) {
      out.words_[w] = word_at(pos + w * 64);
    }
    out.mask_tail();
    return out;
  }

  void append(const BitString& other) {
    for (size_t w = 0; w * 64 < other.nbits_; ++w) {
      size_t chunk = std::min<size_t>(64, other.nbits_ - w * 64);
      append_word(other.word_at(w * 64), chunk);
    }
  }

  // Appends the top `count` bits of `word` (MSB-first).
  void append_word(uint64_t word, size_t count) {
    if (count == 0) return;
    unsigned off = nbits_ & 63;
    nbits_ += count;
    words_.resize(word_count(nbits_), 0);
    size_t w = (nbits_ - count) >> 6;
    if (count < 64) word &= ~uint64_t{0} << (64 - count);
    words_[w] |= word >> off;
    if (off != 0 && off + count > 64) {
      words_[w + 1] |= word << (64 - off);
    }
    mask_tail();
  }

  void resize(size_t n) {
    nbits_ = n;
    words_.resize(word_count(n), 0);
    mask_tail();
  }

  // Length of the longest common prefix of the suffixes at a and b,
  // by whole-word comparison.
  size_t common_prefix(size_t a, size_t b, const BitString& other) const {
    size_t limit = std::min(nbits_ - a, other.nbits_ - b);
    size_t got = 0;
    while (got < limit) {
      uint64_t x = word_at(a + got) ^ other.word_at(b + got);
      if (x != 0) {
        return std::min(limit, got + static_cast<size_t>(std::countl_zero(x)));
      }
      got += 64;
    }
    return limit;
  }

  size_t common_prefix(size_t a, size_t b) const {
    return common_prefix(a, b, *this);
  }

  // Length of the longest common suffix of the prefixes ending at a and b
  // (inclusive positions).
  size_t common_suffix(size_t a, size_t b) const {
    size_t limit = std::min(a, b) + 1;
    size_t got = 0;
    while (got < limit) {
      size_t chunk = std::min<size_t>(64, limit - got);
      uint64_t x = word_ending_at(a - got) ^ word_ending_at(b - got);
      if (chunk < 64) x &= (~uint64_t{0}) >> (64 - chunk);
      if (x != 0) {
        return got + static_cast<size_t>(std::countr_zero(x));
      }
      got += chunk;
    }
    return limit;
  }

  friend bool operator==(const BitString& a, const BitString& b) {
    return a.nbits_ == b.nbits_ && a.words_ == b.words_;
  }

  std::string to_string() const {
    std::string s(nbits_, '0');
    for (size_t i = 0; i < nbits_; ++i) {
      if ((*this)[i]) s[i] = '1';
    }
    return s;
  }

 private:
  static size_t word_count(size_t n) { return (n + 63) / 64; }

  // 64 bits ending at `pos` inclusive, bit `pos` in the LSB, zero-padded
  // before the start.
  uint64_t word_ending_at(size_t pos) const {
    size_t w = pos >> 6;
    unsigned off = pos & 63;  // bit index within word
    uint64_t v = words_[w] >> (63 - off);
    if (off != 63 && w > 0) {
      v |= words_[w - 1] << (off + 1);
    }
    return v;
  }

  void mask_tail() {
    unsigned off = nbits_ & 63;
    if (off != 0 && !words_.empty()) {
      words_.back() &= ~uint64_t{0} << (64 - off);
    }
  }

  size_t nbits_ = 0;
  std::vector<uint64_t> words_;
};

}  // namespace dxs
