#include "dxs/det_sample.hpp"

#include <algorithm>

namespace dxs {

namespace {

bool offset_blocked(const BitString& p, std::span<const uint32_t> positions,
                    int64_t d) {
  const int64_t m = static_cast<int64_t>(p.size());
  for (uint32_t q : positions) {
    int64_t other = static_cast<int64_t>(q) - d;
    if (other >= 0 && other < m && p[q] != p[static_cast<size_t>(other)]) {
      return true;
    }
  }
  return false;
}

}  // namespace

bool check_sample(const BitString& p, std::span<const uint32_t> positions,
                  uint32_t shift) {
  const int64_t half = static_cast<int64_t>(p.size() / 2);
  for (int64_t d = -static_cast<int64_t>(shift); d <= half - shift; ++d) {
    if (d == 0) continue;
    if (!offset_blocked(p, positions, d)) return false;
  }
  return true;
}

DetSample build_det_sample(const BitString& p) {
  const size_t m = p.size();
  if (m == 0 || period_at_most(p, 0, m, m / 2) != 0) {
    throw std::invalid_argument("build_det_sample: pattern must be non-periodic");
  }

  // Candidate copies of p at offsets 0 .. ceil(m/2)-1; copy d spans absolute
  // columns [d, d+m). While two survive, the extreme pair must disagree
  // somewhere in the common span (otherwise their distance would be a period
  // of p), so a splitting column always exists there.
  std::vector<uint32_t> alive((m + 1) / 2);
  for (size_t d = 0; d < alive.size(); ++d) alive[d] = static_cast<uint32_t>(d);
  std::vector<uint32_t> columns;

  while (alive.size() > 1) {
    const uint32_t lo = alive.front(), hi = alive.back();
    uint32_t col = 0;
    bool found = false;
    for (uint32_t c = hi; c < lo + m && !found; ++c) {
      bool first = p[c - alive[0]];
      for (uint32_t d : alive) {
        if (p[c - d] != first) {
          col = c;
          found = true;
          break;
        }
      }
    }
    if (!found) throw std::logic_error("build_det_sample: no splitting column");

    std::vector<uint32_t> zeros, ones;
    for (uint32_t d : alive) (p[col - d] ? ones : zeros).push_back(d);
    // Keep the smaller side; ties go to the side holding the smallest offset.
    std::vector<uint32_t>* keep;
    if (zeros.size() != ones.size()) {
      keep = zeros.size() < ones.size() ? &zeros : &ones;
    } else {
      keep = zeros.front() < ones.front() ? &zeros : &ones;
    }
    alive = std::move(*keep);
    columns.push_back(col);
  }

  DetSample out;
  out.pattern_len = static_cast<uint32_t>(m);
  out.shift = alive.front();
  for (uint32_t c : columns) out.positions.push_back(c - out.shift);

  // The copy game covers offsets up to ceil(m/2)-1-shift; for even m the
  // forbidden range ends one later, at m/2-shift. Repair any gap with a
  // direct witness (one exists: a fully compatible offset <= m/2 would be a
  // period of p).
  const int64_t half = static_cast<int64_t>(m / 2);
  for (int64_t d = -static_cast<int64_t>(out.shift); d <= half - out.shift; ++d) {
    if (d == 0 || offset_blocked(p, out.positions, d)) continue;
    bool repaired = false;
    for (size_t q = 0; q < m && !repaired; ++q) {
      int64_t other = static_cast<int64_t>(q) - d;
      if (other >= 0 && other < static_cast<int64_t>(m) &&
          p[q] != p[static_cast<size_t>(other)]) {
        out.positions.push_back(static_cast<uint32_t>(q));
        repaired = true;
      }
    }
    if (!repaired) throw std::logic_error("build_det_sample: unblockable offset");
  }

  std::sort(out.positions.begin(), out.positions.end());
  out.positions.erase(std::unique(out.positions.begin(), out.positions.end()),
                      out.positions.end());
  for (uint32_t q : out.positions) out.values.push_back(p[q]);
  return out;
}

PeriodicDetSample build_periodic_det_sample(const BitString& p, size_t pi) {
  const size_t m = p.size();
  if (pi < 1 || period_at_most(p, 0, m, pi) != pi) {
    throw std::invalid_argument(
        "build_periodic_det_sample: pi is not the shortest period");
  }
  if (3 * pi > m) {
    throw std::invalid_argument("build_periodic_det_sample: need pi <= |p|/3");
  }

  // The prefix of length 2*pi-1 is non-periodic (a shorter period would gcd
  // down to a period of p below pi).
  DetSample base = build_det_sample(p.substr(0, 2 * pi - 1));

  PeriodicDetSample out;
  out.period = static_cast<uint32_t>(pi);
  out.pattern_len = static_cast<uint32_t>(m);
  std::vector<uint32_t> folded;
  for (uint32_t q : base.positions) folded.push_back(q % pi);
  if (folded.empty()) folded.push_back(0);  // pi == 1: pin the repeated bit
  std::sort(folded.begin(), folded.end());
  folded.erase(std::unique(folded.begin(), folded.end()), folded.end());
  out.positions = std::move(folded);
  for (uint32_t q : out.positions) out.values.push_back(p[q]);
  return out;
}

namespace {

bool candidate_passes(const SignatureView& sig, const LceIndex& text,
                      size_t piece_start) {
  const size_t align = piece_start + sig.offset;
  if (align + sig.len > text.size()) return false;
  if (sig.period < 1 || sig.period > sig.len) return false;
  if (!text.has_period_range(align, sig.len, sig.period)) return false;
  for (size_t r = 0; r < sig.positions.size(); ++r) {
    if (text.text()[align + sig.positions[r]] != (*sig.values)[r]) return false;
  }
  return true;
}

}  // namespace

std::optional<size_t> eliminate_candidates(const SignatureView& sig,
                                           const LceIndex& text,
                                           std::span<const size_t> candidates) {
  if (sig.len == 0 || sig.values == nullptr) return std::nullopt;

  std::vector<bool> passes(candidates.size());
  for (size_t i = 0; i < candidates.size(); ++i) {
    passes[i] = candidate_passes(sig, text, candidates[i]);
  }

  if (sig.periodic) {
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (passes[i]) return candidates[i];
    }
    return std::nullopt;
  }

  // A passing candidate excludes occurrences within `shift` to its left and
  // floor(len/2) - shift to its right. Any two candidates are close enough
  // that one of the two witnesses fires, so at most one position survives.
  const int64_t left = sig.shift;
  const int64_t right = static_cast<int64_t>(sig.len / 2) - sig.shift;
  std::vector<bool> killed(candidates.size(), false);
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (!passes[i]) continue;
    for (size_t j = 0; j < candidates.size(); ++j) {
      if (j == i) continue;
      int64_t delta = static_cast<int64_t>(candidates[j]) -
                      static_cast<int64_t>(candidates[i]);
      if ((delta < 0 && -delta <= left) || (delta > 0 && delta <= right)) {
        killed[j] = true;
      }
    }
  }

  std::optional<size_t> survivor;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (passes[i] && !killed[i]) {
      if (survivor) return std::nullopt;  // cannot happen for valid samples
      survivor = candidates[i];
    }
  }
  return survivor;
}

}  // namespace dxs
