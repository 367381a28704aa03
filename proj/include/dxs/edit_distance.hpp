#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "dxs/strings_core.hpp"

namespace dxs {

// Banded Levenshtein distance: exact whenever the true distance is <= limit,
// otherwise returns limit + 1. O(max(|a|,|b|) * limit) time.
template <Sequence A, Sequence B>
size_t edit_distance_bounded(const A& a, const B& b, size_t limit) {
  const size_t n = a.size(), m = b.size();
  if (n > m) return edit_distance_bounded(b, a, limit);
  if (m - n > limit) return limit + 1;

  const size_t cap = limit + 1;
  const size_t width = 2 * limit + 1;
  // row[t] = dp value at column j = i - limit + t, clipped to cap.
  std::vector<size_t> row(width + 1, cap), next(width + 1, cap);
  for (size_t t = limit; t < width; ++t) {
    row[t] = std::min(t - limit, cap);  // dp[0][j] = j
  }
  for (size_t i = 1; i <= n; ++i) {
    std::fill(next.begin(), next.end(), cap);
    size_t best = cap;
    for (size_t t = 0; t < width; ++t) {
      // j = i - limit + t; skip columns outside [0, m]
      if (i + t < limit) continue;
      size_t j = i + t - limit;
      if (j > m) break;
      size_t v = cap;
      if (j > 0) {
        size_t diag = row[t];  // dp[i-1][j-1]
        v = std::min(v, diag + (a[i - 1] == b[j - 1] ? 0 : 1));
        if (t > 0) v = std::min(v, next[t - 1] + 1);  // insert b[j-1]
      }
      if (t + 1 < width + 1) v = std::min(v, row[t + 1] + 1);  // delete a[i-1]
      next[t] = std::min(v, cap);
      best = std::min(best, next[t]);
    }
    row.swap(next);
    if (best >= cap) return cap;
  }
  return std::min(row[m + limit - n], cap);
}

// Exact distance by doubling the band until it contains the answer.
template <Sequence A, Sequence B>
size_t edit_distance(const A& a, const B& b) {
  if (a.size() == 0) return b.size();
  if (b.size() == 0) return a.size();
  for (size_t limit = 1;; limit *= 2) {
    size_t d = edit_distance_bounded(a, b, limit);
    if (d <= limit) return d;
  }
}

}  // namespace dxs
