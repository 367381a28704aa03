#include <doctest.h>

#include <dxs/bitstring.hpp>
#include <dxs/harness.hpp>

using namespace dxs;

TEST_CASE("byte round trip is MSB-first with zero padding") {
  std::vector<uint8_t> bytes{0xA5, 0x01};
  BitString b = BitString::from_bytes(bytes, 16);
  CHECK(b.to_string() == "1010010100000001");
  CHECK(b.to_bytes() == bytes);

  BitString c = BitString::from_bytes(bytes, 10);
  CHECK(c.to_string() == "1010010100");
  CHECK(c.to_bytes() == std::vector<uint8_t>{0xA5, 0x00});

  CHECK_THROWS_AS(BitString::from_bytes(bytes, 17), std::invalid_argument);
}

TEST_CASE("substr and append agree with string semantics") {
  DetRng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 1 + rng.below(300);
    BitString a = random_bits(n, rng.next());
    std::string s = a.to_string();
    size_t pos = rng.below(n), len = rng.below(n - pos + 1);
    CHECK(a.substr(pos, len).to_string() == s.substr(pos, len));

    BitString b = random_bits(rng.below(100), rng.next());
    BitString joined = a;
    joined.append(b);
    CHECK(joined.to_string() == s + b.to_string());

    BitString grown = a;
    grown.resize(n + 7);
    CHECK(grown.to_string() == s + std::string(7, '0'));
    grown.resize(n > 3 ? n - 3 : 0);
    CHECK(grown.to_string() == s.substr(0, n > 3 ? n - 3 : 0));
  }
  CHECK_THROWS_AS(BitString(8).substr(4, 5), std::out_of_range);
}

TEST_CASE("word_at pads with zeros past the end") {
  BitString b = BitString::from_string("1");
  CHECK(b.word_at(0) == (uint64_t{1} << 63));
  CHECK(b.word_at(1) == 0);
  CHECK(b.word_at(100) == 0);
}

TEST_CASE("common_prefix and common_suffix match naive scans") {
  DetRng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    size_t n = 2 + rng.below(400);
    BitString b = random_bits(n, rng.next());
    // plant repeats so extensions are sometimes long
    if (trial % 3 == 0) {
      size_t p = 1 + rng.below(4);
      for (size_t i = p; i < n; ++i) {
        if (rng.below(8) != 0) b.set(i, b[i - p]);
      }
    }
    size_t i = rng.below(n), j = rng.below(n);
    size_t fwd = 0;
    while (i + fwd < n && j + fwd < n && b[i + fwd] == b[j + fwd]) ++fwd;
    CHECK(b.common_prefix(i, j) == fwd);

    size_t bwd = 0;
    while (bwd <= std::min(i, j) && b[i - bwd] == b[j - bwd]) ++bwd;
    CHECK(b.common_suffix(i, j) == bwd);
  }
}

TEST_CASE("push_back and equality") {
  BitString a;
  for (bool v : {true, false, true, true}) a.push_back(v);
  CHECK(a == BitString::from_string("1011"));
  CHECK(!(a == BitString::from_string("10110")));
  CHECK(!(a == BitString::from_string("1010")));
}
