#include <doctest.h>

#include <string_view>

#include <dxs/edit_distance.hpp>
#include <dxs/harness.hpp>

using namespace dxs;

namespace {

// Quadratic reference DP, independent of the banded implementation.
size_t full_dp(std::string_view a, std::string_view b) {
  std::vector<size_t> row(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    size_t diag = row[0];
    row[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t next = std::min({row[j] + 1, row[j - 1] + 1,
                              diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diag = row[j];
      row[j] = next;
    }
  }
  return row[b.size()];
}

std::string random_binary(size_t len, uint64_t seed) {
  DetRng rng(seed);
  std::string s(len, '0');
  for (auto& c : s) c = rng.flip() ? '1' : '0';
  return s;
}

}  // namespace

TEST_CASE("edit_distance examples") {
  CHECK(edit_distance(std::string_view("same"), std::string_view("same")) == 0);
  CHECK(edit_distance(std::string_view(""), std::string_view("ab")) == 2);
  CHECK(edit_distance(std::string_view("kitten"), std::string_view("sitting")) == 3);
  CHECK(edit_distance(BitString::from_string("0011"), BitString::from_string("0011")) == 0);
}

TEST_CASE("banded distance agrees with the full DP") {
  DetRng rng(2);
  for (int trial = 0; trial < 400; ++trial) {
    std::string a = random_binary(rng.below(60), rng.next());
    std::string b = random_binary(rng.below(60), rng.next());
    size_t want = full_dp(a, b);
    CHECK(edit_distance(std::string_view(a), std::string_view(b)) == want);
    size_t limit = rng.below(12);
    size_t bounded = edit_distance_bounded(std::string_view(a), std::string_view(b), limit);
    if (want <= limit) {
      CHECK(bounded == want);
    } else {
      CHECK(bounded == limit + 1);
    }
  }
}

TEST_CASE("apply_edit primitives") {
  BitString s = BitString::from_string("000");
  CHECK(apply_edit(s, EditOp::kSubstitute, 0, false) == BitString::from_string("100"));
  CHECK(apply_edit(s, EditOp::kInsert, 3, true) == BitString::from_string("0001"));
  CHECK(apply_edit(s, EditOp::kDelete, 1, false) == BitString::from_string("00"));
  CHECK_THROWS_AS(apply_edit(s, EditOp::kDelete, 3, false), std::out_of_range);
}

TEST_CASE("apply_random_edits respects the distance budget") {
  CHECK(apply_random_edits(BitString::from_string("0110"), 0, 9) ==
        BitString::from_string("0110"));
  DetRng rng(77);
  for (int trial = 0; trial < 300; ++trial) {
    size_t n = 1 + rng.below(600);
    size_t e = rng.below(12);
    BitString s = random_bits(n, rng.next());
    uint64_t seed = rng.next();
    BitString out = apply_random_edits(s, e, seed);
    CHECK(edit_distance_bounded(s, out, e) <= e);
    // deterministic in the seed
    CHECK(apply_random_edits(s, e, seed) == out);
  }
}

TEST_CASE("random_bits is reproducible and well-formed") {
  BitString a = random_bits(100, 5);
  BitString b = random_bits(100, 5);
  CHECK(a == b);
  CHECK(a.size() == 100);
  CHECK(!(random_bits(100, 6) == a));
}
