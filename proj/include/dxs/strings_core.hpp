#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dxs/bitstring.hpp"

namespace dxs {

// Indexable sequence of comparable symbols. BitString qualifies, as do
// std::string_view and std::vector, so the periodicity predicates below can
// be exercised on small non-binary alphabets in tests.
template <typename S>
concept Sequence = requires(const S& s, size_t i) {
  { s.size() } -> std::convertible_to<size_t>;
  s[i];
};

// Smallest pi in [1, |s|] with s[i] == s[i - pi] for all i >= pi, computed
// from the KMP failure function in O(|s|).
template <Sequence S>
size_t shortest_period(const S& s) {
  const size_t n = s.size();
  if (n == 0) throw std::invalid_argument("shortest_period: empty string");
  std::vector<size_t> border(n + 1, 0);
  size_t k = 0;
  for (size_t i = 1; i < n; ++i) {
    while (k > 0 && !(s[i] == s[k])) k = border[k];
    if (s[i] == s[k]) ++k;
    border[i + 1] = k;
  }
  return n - border[n];
}

// Whether pi is a period of s (not necessarily the shortest one).
template <Sequence S>
bool has_period(const S& s, size_t pi) {
  const size_t n = s.size();
  if (pi < 1 || pi > n) throw std::invalid_argument("has_period: pi out of range");
  for (size_t i = pi; i < n; ++i) {
    if (!(s[i] == s[i - pi])) return false;
  }
  return true;
}

template <Sequence S>
bool is_nonperiodic(const S& s) {
  return 2 * shortest_period(s) > s.size();
}

// Smallest period of s[off, off+len) that is <= cap, or 0 if none. Each
// candidate d is tested by a word-packed prefix compare, which bails out on
// the first mismatching word, so the expected cost is O(cap) word reads.
inline size_t period_at_most(const BitString& s, size_t off, size_t len,
                             size_t cap) {
  for (size_t d = 1; d <= cap && d < len; ++d) {
    if (s.common_prefix(off, off + d) >= len - d) return d;
  }
  return cap >= len ? len : 0;
}

// Word-packed shortest period of s[off, off+len); O(len^2/64) worst case,
// O(len) expected. Preferable to the failure-function route for short windows.
inline size_t shortest_period_range(const BitString& s, size_t off, size_t len) {
  size_t d = period_at_most(s, off, len, len);
  return d == 0 ? len : d;
}

// Maximal periodic substring: [begin, end) has shortest period `period`,
// spans at least two full period copies, and extending one symbol either way
// breaks that period.
struct Run {
  size_t begin;
  size_t end;
  size_t period;
  friend bool operator==(const Run&, const Run&) = default;
};

// All runs of t, sorted by (begin, end, period). Anchor-pair enumeration over
// an LCE scan: O(n log n) pair extensions, each a word-packed compare that is
// O(1) expected on strings without giant repetitions.
std::vector<Run> compute_runs(const BitString& t);

// Restricted enumeration used internally: only runs with period <= max_period
// and length >= min_len are reported.
std::vector<Run> compute_runs_limited(const BitString& t, size_t max_period,
                                      size_t min_len);

inline constexpr uint32_t kAperiodic = 0;

// Entry i is the shortest period of t[i, i+m) when that period is <= m/2,
// else kAperiodic. Sweep over the runs that span each window.
std::vector<uint32_t> periods_of_length_m(const BitString& t, size_t m);

// Longest-common-extension index: suffix array + LCP + sparse-table RMQ.
// Immutable once built; queries are O(1) and agree with naive comparison.
class LceIndex {
 public:
  explicit LceIndex(BitString text);

  const BitString& text() const { return text_; }
  size_t size() const { return text_.size(); }

  // Longest common prefix of the suffixes starting at i and j.
  size_t lce(size_t i, size_t j) const;

  // Whether pi is a period of text[pos, pos+len), via the reduction
  // lce(pos, pos+pi) >= len - pi.
  bool has_period_range(size_t pos, size_t len, size_t pi) const;

 private:
  static constexpr size_t kBlock = 32;

  uint32_t lcp_min(size_t lo, size_t hi) const;  // min over lcp_[lo, hi)

  BitString text_;
  std::vector<uint32_t> rank_;
  std::vector<uint32_t> lcp_;  // lcp_[r] = lce(sa[r], sa[r+1])
  // Two-level range minimum: sparse table over per-block minima, with short
  // in-block scans at the edges.
  std::vector<std::vector<uint32_t>> table_;
  std::vector<uint8_t> log2_;
};

// A window p[start, start+3k) whose shortest period exceeds k. Requires
// k <= min(shortest_period(p) - 1, |p|/3); existence is then guaranteed.
// Deterministic: smallest start wins.
struct HighPeriodWindow {
  size_t start;
  BitString window;
};
HighPeriodWindow find_high_period_window(const BitString& p, size_t k);

}  // namespace dxs
