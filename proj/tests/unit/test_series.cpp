#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "slehull/rational_function.hpp"
#include "slehull/series.hpp"

using namespace slehull;

namespace {

using Q = Rational;

std::vector<Q> zeros(std::size_t n) { return std::vector<Q>(n, Q(0)); }

// Coefficient of z^-m (m = 0..M-1) in h * v for affine h and pure tail v
// starting at z^-1, computed directly from the definitions.
template <class S>
std::vector<S> affine_times_tail(const TailSeries<S>& h, const TailSeries<S>& v, std::size_t M) {
  std::vector<S> out(M, S(0));
  for (std::size_t m = 0; m < M; ++m) {
    S acc = v[m + 1];                      // z * v_{m+1} z^-(m+1)
    if (m >= 1) acc += h.constant() * v[m];  // c0 * v_m z^-m
    for (std::size_t j = 1; j + 1 <= m; ++j) acc += h[j] * v[m - j];
    out[m] = acc;
  }
  return out;
}

Q random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  return ratio(num(rng), den(rng));
}

}  // namespace

TEST_CASE("tail_reciprocal examples") {
  SUBCASE("identity") {
    const auto inv = tail_reciprocal(TailSeries<Q>::identity(6), 6);
    CHECK(inv.lead() == Lead::PureTail);
    CHECK(inv[1] == 1);
    for (std::size_t j = 2; j <= 6; ++j) CHECK(inv[j] == 0);
  }
  SUBCASE("z - 1 gives the geometric series") {
    const TailSeries<Q> h(Lead::Affine, Q(-1), zeros(6));
    const auto inv = tail_reciprocal(h, 6);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(inv[j] == 1);
  }
  SUBCASE("2/(g - X) with X = 1, a1 = 2") {
    const TailSeries<Q> h(Lead::Affine, Q(-1), {Q(2), Q(0), Q(0), Q(0)});
    const auto inv = tail_reciprocal(h, 4);
    const std::vector<Q> expected{2, 2, -2, -6};
    for (std::size_t j = 1; j <= 4; ++j) CHECK(Q(2) * inv[j] == expected[j - 1]);
  }
  SUBCASE("empty truncation") {
    CHECK_THROWS_WITH(tail_reciprocal(TailSeries<Q>::identity(3), 0), "empty truncation");
    CHECK_THROWS_AS(TailSeries<Q>(Lead::Affine, 0), std::invalid_argument);
  }
  SUBCASE("order cannot grow") {
    CHECK_THROWS_AS(tail_reciprocal(TailSeries<Q>::identity(3), 4), std::invalid_argument);
    CHECK_THROWS_AS(TailSeries<double>(Lead::Affine, kMaxOrder + 1), std::invalid_argument);
  }
}

TEST_CASE("shifted_power_tail examples") {
  SUBCASE("z^-2") {
    const auto p = shifted_power_tail(TailSeries<Q>::identity(6), Q(0), 2, 6);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(p[j] == (j == 2 ? 1 : 0));
  }
  SUBCASE("1/(z - 1)") {
    const auto p = shifted_power_tail(TailSeries<Q>::identity(6), Q(1), 1, 6);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(p[j] == 1);
  }
  SUBCASE("(z + 2/z)^-2 against the binomial series") {
    const auto g = TailSeries<Q>::affine({Q(2), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0)});
    const auto p = shifted_power_tail(g, Q(0), 2, 8);
    // z^-2 (1 + 2 w^2)^-2 = z^-2 sum_k (-1)^k (k+1) 2^k w^(2k)
    const std::vector<Q> expected{0, 1, 0, -4, 0, 12, 0, -32};
    for (std::size_t j = 1; j <= 8; ++j) CHECK(p[j] == expected[j - 1]);
  }
  SUBCASE("n = 0 rejected") { CHECK_THROWS(shifted_power_tail(TailSeries<Q>::identity(3), Q(0), 0, 3)); }
}

TEST_CASE("assemble_G examples") {
  const std::vector<Q> atilde{Q(3), ratio(-1, 2), Q(5), Q(7), ratio(2, 3), Q(-4)};
  SUBCASE("zero atilde leaves g alone") {
    const auto g = TailSeries<Q>::affine({Q(1), Q(2), Q(-3), Q(4), Q(0), Q(1)});
    const auto G = assemble_G(g, std::span<const Q>(zeros(6)), Q(3), Q(-2), 6);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(G[j] == g[j]);
  }
  SUBCASE("identity g, unit phi") {
    const auto G = assemble_G(TailSeries<Q>::identity(6), std::span<const Q>(atilde), Q(1), Q(0), 6);
    for (std::size_t j = 1; j <= 6; ++j) CHECK(G[j] == atilde[j - 1]);
  }
  SUBCASE("phi(z) = 2z") {
    const auto G = assemble_G(TailSeries<Q>::identity(6), std::span<const Q>(atilde), Q(2), Q(0), 6);
    Q scale = 2;
    for (std::size_t j = 1; j <= 6; ++j) {
      scale *= 2;
      CHECK(G[j] == scale * atilde[j - 1]);
    }
  }
  SUBCASE("degenerate scaling") {
    CHECK_THROWS_WITH(assemble_G(TailSeries<Q>::identity(6), std::span<const Q>(atilde), Q(0), Q(0), 6),
                      "degenerate scaling");
    CHECK_THROWS_WITH(assemble_G(TailSeries<Q>::identity(6), std::span<const Q>(atilde), Q(-1), Q(0), 6),
                      "degenerate scaling");
  }
  SUBCASE("atilde too short") {
    CHECK_THROWS(assemble_G(TailSeries<Q>::identity(6), std::span<const Q>(atilde).first(3), Q(1), Q(0), 6));
  }
}

TEST_CASE("h * (1/h) = 1, exact in rational mode") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t M = 3 + trial % 8;
    std::vector<Q> tail(M);
    for (auto& c : tail) c = random_rational(rng);
    const TailSeries<Q> h(Lead::Affine, random_rational(rng), tail);
    const auto prod = affine_times_tail(h, tail_reciprocal(h, M), M);
    CHECK(prod[0] == 1);
    for (std::size_t m = 1; m < M; ++m) CHECK(prod[m] == 0);
  }
}

TEST_CASE("h * (1/h) = 1 in float mode") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t M = 8;
    std::vector<double> tail(M);
    for (auto& c : tail) c = u(rng);
    const TailSeries<double> h(Lead::Affine, u(rng), tail);
    const auto inv = tail_reciprocal(h, M);
    const auto prod = affine_times_tail(h, inv, M);
    double scale = 1.0;
    for (std::size_t j = 1; j <= M; ++j) scale = std::max(scale, std::abs(inv[j]));
    CHECK(prod[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t m = 1; m < M; ++m) CHECK(std::abs(prod[m]) <= 1e-12 * scale);
  }
}

TEST_CASE("powers agree with repeated products") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t M = 8;
    std::vector<Q> tail(M);
    for (auto& c : tail) c = random_rational(rng);
    const auto g = TailSeries<Q>::affine(tail);
    const Q beta = random_rational(rng);
    const auto first = shifted_power_tail(g, beta, 1, M);
    auto acc = first;
    for (unsigned n = 2; n <= 5; ++n) {
      acc = multiply(acc, first, M);
      const auto direct = shifted_power_tail(g, beta, n, M);
      CHECK(acc.constant() == 0);
      for (std::size_t j = 1; j <= M; ++j) CHECK(acc[j] == direct[j]);
    }
  }
}

TEST_CASE("assemble_G scaling covariance") {
  std::mt19937 rng(3);
  for (const Q lambda : {ratio(1, 2), Q(2), ratio(7, 3)}) {
    std::vector<Q> atilde(8);
    for (auto& c : atilde) c = random_rational(rng);
    const auto G = assemble_G(TailSeries<Q>::identity(8), std::span<const Q>(atilde), lambda, Q(0), 8);
    Q power = lambda;
    for (std::size_t n = 1; n <= 8; ++n) {
      power *= lambda;
      CHECK(G[n] == power * atilde[n - 1]);
    }
  }
}

TEST_CASE("first coefficient of G is a1(g) + alpha^2 atilde_1") {
  std::mt19937 rng(8);
  std::vector<Q> g_tail(6);
  std::vector<Q> atilde(6);
  for (auto& c : g_tail) c = random_rational(rng);
  for (auto& c : atilde) c = random_rational(rng);
  const Q alpha = ratio(5, 3);
  const auto G = assemble_G(TailSeries<Q>::affine(g_tail), std::span<const Q>(atilde), alpha, ratio(-2, 7), 6);
  CHECK(G[1] == g_tail[0] + alpha * alpha * atilde[0]);
}
