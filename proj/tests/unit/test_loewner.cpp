#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "slehull/loewner.hpp"
#include "slehull/rational_function.hpp"
#include "slehull/stats.hpp"

using namespace slehull;

namespace {

using Q = Rational;

DrivingPath constant_driver_path(double t_end, std::size_t steps) {
  DrivingPath p;
  for (std::size_t i = 0; i <= steps; ++i) {
    p.times.push_back(t_end * static_cast<double>(i) / static_cast<double>(steps));
    p.Y.push_back(1.0);
    p.Z.push_back(1.0);  // X = Y - Z = 0
  }
  p.absorbed = false;
  return p;
}

DrivingPath scaled(const DrivingPath& p, double lambda) {
  DrivingPath s = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    s.times[i] = lambda * lambda * p.times[i];
    s.Y[i] = lambda * p.Y[i];
    s.Z[i] = lambda * p.Z[i];
  }
  s.tau = lambda * lambda * p.tau;
  return s;
}

}  // namespace

TEST_CASE("coefficient_rhs examples") {
  SUBCASE("a1 grows at rate 2") {
    std::mt19937 rng(1);
    std::normal_distribution<double> n;
    for (int i = 0; i < 20; ++i) {
      std::vector<double> a(8);
      for (auto& v : a) v = n(rng);
      CHECK(coefficient_rhs<double>(a, n(rng))[0] == 2.0);
    }
  }
  SUBCASE("X = 0, a1 = 1") {
    const std::vector<Q> a{Q(1), Q(0), Q(0), Q(0)};
    const auto d = coefficient_rhs<Q>(a, Q(0));
    CHECK(d[1] == 0);
    CHECK(d[2] == -2);
    CHECK(d[3] == 0);
  }
  SUBCASE("X = 1, a = (2, 0, ...)") {
    const std::vector<Q> a{Q(2), Q(0), Q(0), Q(0)};
    const auto d = coefficient_rhs<Q>(a, Q(1));
    const std::vector<Q> expected{2, 2, -2, -6};
    CHECK(d == expected);
  }
  SUBCASE("state overload") {
    CoefficientState s;
    s.a = {2, 0, 0, 0};
    const auto d = coefficient_rhs(s, 1.0);
    CHECK(d == std::vector<double>{2, 2, -2, -6});
  }
}

TEST_CASE("coefficient_rhs matches the hand formulas exactly") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> num(-20, 20);
  std::uniform_int_distribution<long> den(1, 9);
  auto r = [&] { return ratio(num(rng), den(rng)); };
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<Q> a{r(), r(), r(), r(), r(), r()};
    const Q X = r();
    const auto d = coefficient_rhs<Q>(a, X);
    CHECK(d[0] == 2);
    CHECK(d[1] == Q(2) * X);
    CHECK(d[2] == Q(2) * (X * X - a[0]));
    CHECK(d[3] == Q(2) * (X * X * X - Q(2) * a[0] * X - a[1]));
  }
}

TEST_CASE("streaming integrator is Heun on coefficient_rhs") {
  std::vector<double> a(6, 0.0);
  CoefficientIntegrator integ(6);
  std::mt19937 rng(4);
  std::normal_distribution<double> n;
  for (int step = 0; step < 50; ++step) {
    const double dt = 1e-3 * (1.0 + std::abs(n(rng)));
    const double x = n(rng);
    const auto k1 = coefficient_rhs<double>(a, x);
    std::vector<double> trial(6);
    for (std::size_t k = 0; k < 6; ++k) trial[k] = a[k] + dt * k1[k];
    const auto k2 = coefficient_rhs<double>(trial, x);
    for (std::size_t k = 0; k < 6; ++k) a[k] += 0.5 * dt * (k1[k] + k2[k]);
    integ.advance(dt, x);
  }
  for (std::size_t k = 0; k < 6; ++k) CHECK(integ.coefficients()[k] == doctest::Approx(a[k]).epsilon(1e-13));
}

TEST_CASE("integrate_coefficients examples") {
  SUBCASE("X = 0 closed form") {
    const double t = 0.75;
    const auto s = integrate_coefficients(constant_driver_path(t, 300), 6);
    CHECK(s.t == t);
    CHECK(s.a[0] == doctest::Approx(2 * t).epsilon(1e-13));
    CHECK(std::abs(s.a[1]) < 1e-15);
    CHECK(s.a[2] == doctest::Approx(-2 * t * t).epsilon(1e-12));
    CHECK(std::abs(s.a[3]) < 1e-15);
  }
  SUBCASE("zero duration") {
    const auto s = integrate_coefficients(constant_driver_path(0.0, 0), 5);
    for (double v : s.a) CHECK(v == 0.0);
  }
  SUBCASE("order limits") {
    CHECK_THROWS(integrate_coefficients(constant_driver_path(1.0, 2), kMaxOrder + 1));
    CHECK_THROWS(CoefficientIntegrator(0));
    CHECK_THROWS(integrate_coefficients(DrivingPath{}, 4));
  }
}

TEST_CASE("Loewner scaling covariance") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto path = simulate_to_hit({2, -4, -1, 1}, {}, Seed{31, s});
    const auto base = integrate_coefficients(path, 8);
    for (double lambda : {0.5, 2.0}) {
      const auto sc = integrate_coefficients(scaled(path, lambda), 8);
      double factor = lambda;
      for (std::size_t k = 1; k <= 8; ++k) {
        factor *= lambda;
        const double expected = factor * base.a[k - 1];
        CHECK(std::abs(sc.a[k - 1] - expected) <= 1e-8 * std::max(1.0, std::abs(expected)));
      }
    }
  }
}

TEST_CASE("a1 = 2t along the trajectory and a1 increases") {
  const SleParams p{1, -5, 1, -1};
  for (std::uint64_t s = 0; s < 10; ++s) {
    CoefficientIntegrator integ(8);
    NormalStream normal(Seed{5, s});
    double prev = 0.0;
    bool ok = true;
    bool increasing = true;
    drive(p, StepConfig{}, normal, [&](const StepRecord& step) {
      integ.advance(step.dt, step.x_left);
      const double a1 = integ.coefficients()[0];
      ok = ok && std::abs(a1 - 2.0 * step.t) <= 1e-6 * 2.0 * step.t;
      increasing = increasing && a1 > prev;
      prev = a1;
    });
    CHECK(ok);
    CHECK(increasing);
  }
}

TEST_CASE("sample_sle_data") {
  const SleParams p{1, -5, 1, -1};
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto st = sample_sle_data(p, {}, 8, Seed{8, s});
    CHECK(st.absorbed);
    CHECK(std::abs(st.a[0] - 2 * st.t) / (2 * st.t) < 1e-6);
    // fused pass agrees with path + integration
    const auto two_pass = integrate_coefficients(simulate_to_hit(p, {}, Seed{8, s}), 8);
    CHECK(two_pass.t == st.t);
    for (std::size_t k = 0; k < 8; ++k) CHECK(two_pass.a[k] == doctest::Approx(st.a[k]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sample_sle_data({2, 0, -1, 1}, {}, 4, Seed{1, 1}), std::domain_error);
}

TEST_CASE("ensemble does not depend on the thread count") {
  const SleParams p{2, -4, -1, 1};
  const auto one = sample_ensemble(p, {}, 4, 12, 200, 1);
  const auto three = sample_ensemble(p, {}, 4, 12, 200, 3);
  REQUIRE(one.size() == three.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].t == three[i].t);
    CHECK(one[i].a == three[i].a);
  }
}

TEST_CASE("mean of a1 at kappa = 1, rho = -5") {
  const auto states = sample_ensemble({1, -5, 1, -1}, {}, 2, 777, 10000, 0);
  MeanAccumulator acc;
  for (const auto& s : states) acc.add(s.a[0]);
  const auto est = acc.estimate();
  CHECK(std::abs(est.mean - 1.6) < 3 * est.se);
}
