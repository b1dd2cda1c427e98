#include <doctest.h>

#include <set>

#include "slehull/rng.hpp"

using namespace slehull;

// Known-answer vectors for Philox4x32-10 from the Random123 distribution.
static_assert(Philox4x32::block({0, 0, 0, 0}, {0, 0}) ==
              Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});

TEST_CASE("philox known answers") {
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) ==
        Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const std::uint32_t ones = 0xffffffffu;
  CHECK(Philox4x32::block({ones, ones, ones, ones}, {ones, ones}) ==
        Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("stream is a pure function of the seed") {
  PhiloxStream a(Seed{7, 3});
  PhiloxStream b(Seed{7, 3});
  for (int i = 0; i < 1000; ++i) REQUIRE(a() == b());
  CHECK(a.blocks() == 250);
}

TEST_CASE("distinct streams and children differ") {
  std::set<std::uint32_t> firsts;
  for (std::uint64_t s = 0; s < 64; ++s) firsts.insert(PhiloxStream(Seed{1, s})());
  CHECK(firsts.size() == 64);

  const Seed base{5, 11};
  CHECK(base.child(0) != base.child(1));
  CHECK(base.child(Seed::kRoles - 1) != Seed{5, 12}.child(0));
  CHECK(PhiloxStream(Seed{1, 0})() != PhiloxStream(Seed{2, 0})());
}

TEST_CASE("uniform words look uniform") {
  PhiloxStream g(Seed{2024, 0});
  const int n = 200000;
  double sum = 0.0;
  int high_bit = 0;
  for (int i = 0; i < n; ++i) {
    const auto w = g();
    sum += w / 4294967296.0;
    high_bit += (w >> 31) & 1u;
  }
  CHECK(sum / n == doctest::Approx(0.5).epsilon(0.005));
  CHECK(static_cast<double>(high_bit) / n == doctest::Approx(0.5).epsilon(0.01));
}
