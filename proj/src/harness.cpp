#include "dxs/harness.hpp"

#include <stdexcept>
#include <vector>

namespace dxs {

BitString random_bits(size_t n, uint64_t seed) {
  DetRng rng(seed);
  BitString out;
  for (size_t got = 0; got < n; got += 64) {
    out.append_word(rng.next(), std::min<size_t>(64, n - got));
  }
  return out;
}

BitString apply_edit(const BitString& s, EditOp op, size_t pos, bool bit) {
  BitString out;
  switch (op) {
    case EditOp::kInsert:
      if (pos > s.size()) throw std::out_of_range("apply_edit: insert position");
      out = s.substr(0, pos);
      out.push_back(bit);
      out.append(s.substr(pos, s.size() - pos));
      return out;
    case EditOp::kDelete:
      if (pos >= s.size()) throw std::out_of_range("apply_edit: delete position");
      out = s.substr(0, pos);
      out.append(s.substr(pos + 1, s.size() - pos - 1));
      return out;
    case EditOp::kSubstitute:
      if (pos >= s.size()) throw std::out_of_range("apply_edit: substitute position");
      out = s;
      out.set(pos, !out[pos]);  // binary substitution is a flip
      return out;
  }
  throw std::logic_error("apply_edit: bad op");
}

BitString apply_random_edits(const BitString& s, size_t e, uint64_t seed) {
  DetRng rng(seed);
  BitString cur = s;
  for (size_t i = 0; i < e; ++i) {
    EditOp op = cur.empty() ? EditOp::kInsert
                            : static_cast<EditOp>(rng.below(3));
    switch (op) {
      case EditOp::kInsert:
        cur = apply_edit(cur, op, rng.below(cur.size() + 1), rng.flip());
        break;
      case EditOp::kDelete:
        cur = apply_edit(cur, op, rng.below(cur.size()), false);
        break;
      case EditOp::kSubstitute:
        cur = apply_edit(cur, op, rng.below(cur.size()), false);
        break;
    }
  }
  return cur;
}

}  // namespace dxs
