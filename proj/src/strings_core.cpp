#include "dxs/strings_core.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <set>
#include <string>

namespace dxs {

namespace {

// Extends the anchor pair (a, a+p) to the maximal p-periodic extent around
// it, or nothing if the extent is shorter than 2p.
std::optional<Run> extent_at(const BitString& t, size_t a, size_t p) {
  size_t fwd = t.common_prefix(a, a + p);
  size_t bwd = (a == 0) ? 0 : t.common_suffix(a - 1, a + p - 1);
  if (fwd + bwd < p) return std::nullopt;
  return Run{a - bwd, a + p + fwd, p};
}

}  // namespace

std::vector<Run> compute_runs_limited(const BitString& t, size_t max_period,
                                      size_t min_len) {
  const size_t n = t.size();
  std::vector<Run> found;
  for (size_t p = 1; p <= max_period && 2 * p <= n; ++p) {
    for (size_t a = p; a + p <= n;) {
      auto ext = extent_at(t, a, p);
      if (!ext) {
        a += p;
        continue;
      }
      found.push_back(*ext);
      // Every anchor inside [begin, end - p) re-derives this same extent.
      size_t next = ext->end - p + 1;
      a = ((next + p - 1) / p) * p;
    }
  }
  std::sort(found.begin(), found.end(), [](const Run& a, const Run& b) {
    return std::tie(a.begin, a.end, a.period) < std::tie(b.begin, b.end, b.period);
  });
  found.erase(std::unique(found.begin(), found.end()), found.end());

  // Keep only extents whose anchor period is the shortest period of the
  // extent. Length >= 2p forces the shortest period to divide p (Fine-Wilf),
  // so scanning divisors suffices; discarded extents reappear under their
  // true period.
  std::vector<Run> runs;
  for (const Run& r : found) {
    size_t len = r.end - r.begin;
    if (len < min_len) continue;
    bool shortest = true;
    for (size_t d = 1; d * d <= r.period && shortest; ++d) {
      if (r.period % d != 0) continue;
      for (size_t q : {d, r.period / d}) {
        if (q < r.period &&
            t.common_prefix(r.begin, r.begin + q) >= len - q) {
          shortest = false;
          break;
        }
      }
    }
    if (shortest) runs.push_back(r);
  }
  return runs;
}

std::vector<Run> compute_runs(const BitString& t) {
  return compute_runs_limited(t, t.size() / 2, 2);
}

std::vector<uint32_t> periods_of_length_m(const BitString& t, size_t m) {
  const size_t n = t.size();
  if (m < 1 || m > n) {
    throw std::invalid_argument("periods_of_length_m: m out of range");
  }
  // Only runs with period <= m/2 and length >= m can certify a window.
  std::vector<Run> runs = compute_runs_limited(t, m / 2, m);

  std::vector<size_t> by_begin(runs.size()), by_end(runs.size());
  std::iota(by_begin.begin(), by_begin.end(), 0);
  std::iota(by_end.begin(), by_end.end(), 0);
  std::sort(by_begin.begin(), by_begin.end(),
            [&](size_t a, size_t b) { return runs[a].begin < runs[b].begin; });
  std::sort(by_end.begin(), by_end.end(),
            [&](size_t a, size_t b) { return runs[a].end < runs[b].end; });

  std::vector<uint32_t> out(n - m + 1, kAperiodic);
  std::multiset<uint32_t> active;
  size_t bi = 0, ei = 0;
  for (size_t i = 0; i + m <= n; ++i) {
    while (bi < by_begin.size() && runs[by_begin[bi]].begin == i) {
      active.insert(static_cast<uint32_t>(runs[by_begin[bi]].period));
      ++bi;
    }
    while (ei < by_end.size() && runs[by_end[ei]].end < i + m) {
      auto it = active.find(static_cast<uint32_t>(runs[by_end[ei]].period));
      if (it != active.end()) active.erase(it);
      ++ei;
    }
    if (!active.empty()) out[i] = *active.begin();
  }
  return out;
}

LceIndex::LceIndex(BitString text) : text_(std::move(text)) {
  const size_t n = text_.size();
  if (n == 0) throw std::invalid_argument("LceIndex: empty string");

  // Suffix array by prefix doubling with counting sort; early exit once all
  // ranks are distinct (a handful of rounds on non-degenerate input).
  std::vector<uint32_t> sa(n), tmp(n), cnt;
  rank_.assign(n, 0);
  for (size_t i = 0; i < n; ++i) {
    sa[i] = static_cast<uint32_t>(i);
    rank_[i] = text_[i] ? 1u : 0u;
  }
  std::vector<uint32_t> nrank(n);
  for (size_t len = 1;; len <<= 1) {
    auto key2 = [&](uint32_t i) -> uint32_t {
      return i + len < n ? rank_[i + len] + 1 : 0;
    };
    uint32_t classes = *std::max_element(rank_.begin(), rank_.end()) + 2;
    // sort by second key
    cnt.assign(classes, 0);
    for (size_t i = 0; i < n; ++i) cnt[key2(static_cast<uint32_t>(i))]++;
    for (size_t c = 1; c < classes; ++c) cnt[c] += cnt[c - 1];
    for (size_t i = n; i-- > 0;) tmp[--cnt[key2(static_cast<uint32_t>(i))]] = static_cast<uint32_t>(i);
    // then stably by first key
    cnt.assign(classes, 0);
    for (size_t i = 0; i < n; ++i) cnt[rank_[i] + 1]++;
    for (size_t c = 1; c < classes; ++c) cnt[c] += cnt[c - 1];
    for (size_t i = n; i-- > 0;) sa[--cnt[rank_[tmp[i]] + 1]] = tmp[i];

    nrank[sa[0]] = 0;
    bool all_distinct = true;
    for (size_t r = 1; r < n; ++r) {
      bool same = rank_[sa[r]] == rank_[sa[r - 1]] &&
                  key2(sa[r]) == key2(sa[r - 1]);
      if (same) all_distinct = false;
      nrank[sa[r]] = nrank[sa[r - 1]] + (same ? 0 : 1);
    }
    rank_.swap(nrank);
    if (all_distinct || (len << 1) >= n) break;
  }

  // Kasai LCP over adjacent suffix-array entries.
  lcp_.assign(n > 1 ? n - 1 : 0, 0);
  size_t h = 0;
  for (size_t i = 0; i < n; ++i) {
    if (rank_[i] + 1 < n) {
      size_t j = sa[rank_[i] + 1];
      while (i + h < n && j + h < n && text_[i + h] == text_[j + h]) ++h;
      lcp_[rank_[i]] = static_cast<uint32_t>(h);
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }

  // Sparse min table over per-block minima.
  const size_t blocks = (lcp_.size() + kBlock - 1) / kBlock;
  log2_.assign(blocks + 1, 0);
  for (size_t i = 2; i <= blocks; ++i) log2_[i] = log2_[i / 2] + 1;
  table_.clear();
  if (blocks > 0) {
    std::vector<uint32_t> mins(blocks, ~uint32_t{0});
    for (size_t i = 0; i < lcp_.size(); ++i) {
      mins[i / kBlock] = std::min(mins[i / kBlock], lcp_[i]);
    }
    table_.push_back(std::move(mins));
    for (size_t lev = 1; (size_t{1} << lev) <= blocks; ++lev) {
      size_t span = size_t{1} << lev;
      std::vector<uint32_t> row(blocks - span + 1);
      for (size_t i = 0; i + span <= blocks; ++i) {
        row[i] = std::min(table_[lev - 1][i], table_[lev - 1][i + span / 2]);
      }
      table_.push_back(std::move(row));
    }
  }
}

uint32_t LceIndex::lcp_min(size_t lo, size_t hi) const {
  size_t bl = lo / kBlock, bh = (hi - 1) / kBlock;
  uint32_t best = ~uint32_t{0};
  if (bl == bh) {
    for (size_t i = lo; i < hi; ++i) best = std::min(best, lcp_[i]);
    return best;
  }
  for (size_t i = lo; i < (bl + 1) * kBlock; ++i) best = std::min(best, lcp_[i]);
  for (size_t i = bh * kBlock; i < hi; ++i) best = std::min(best, lcp_[i]);
  if (bl + 1 < bh) {
    size_t lev = log2_[bh - bl - 1];
    best = std::min(best, std::min(table_[lev][bl + 1],
                                   table_[lev][bh - (size_t{1} << lev)]));
  }
  return best;
}

size_t LceIndex::lce(size_t i, size_t j) const {
  const size_t n = text_.size();
  if (i >= n || j >= n) throw std::out_of_range("LceIndex::lce");
  if (i == j) return n - i;
  uint32_t a = rank_[i], b = rank_[j];
  if (a > b) std::swap(a, b);
  return lcp_min(a, b);
}

bool LceIndex::has_period_range(size_t pos, size_t len, size_t pi) const {
  if (len == 0 || pos + len > text_.size() || pi < 1 || pi > len) {
    throw std::out_of_range("LceIndex::has_period_range");
  }
  if (pi == len) return true;
  return lce(pos, pos + pi) >= len - pi;
}

HighPeriodWindow find_high_period_window(const BitString& p, size_t k) {
  const size_t n = p.size();
  if (k < 1) throw std::invalid_argument("find_high_period_window: k must be >= 1");
  if (3 * k > n) {
    throw std::invalid_argument(
        "find_high_period_window: k exceeds |p|/3 (window would not fit)");
  }
  if (period_at_most(p, 0, n, k) != 0) {
    throw std::invalid_argument(
        "find_high_period_window: k exceeds shortest_period(p) - 1");
  }
  const size_t m = 3 * k;

  // The first window qualifies almost surely on non-degenerate input, so try
  // a few directly before paying for the runs sweep over the remainder.
  constexpr size_t kDirectProbes = 64;
  const size_t probes = std::min(kDirectProbes, n - m + 1);
  for (size_t i = 0; i < probes; ++i) {
    if (period_at_most(p, i, m, k) == 0) return {i, p.substr(i, m)};
  }
  if (probes == n - m + 1) {
    throw std::logic_error("find_high_period_window: no window found");
  }

  const BitString rest = p.substr(probes, n - probes);
  std::vector<uint32_t> periods = periods_of_length_m(rest, m);
  for (size_t i = 0; i < periods.size(); ++i) {
    if (periods[i] == kAperiodic || periods[i] > k) {
      return {probes + i, rest.substr(i, m)};
    }
  }
  // Unreachable when the precondition holds.
  throw std::logic_error("find_high_period_window: no window found");
}

}  // namespace dxs
