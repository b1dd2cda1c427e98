#pragma once

#include <functional>
#include <string>
#include <vector>

#include "slehull/rng.hpp"

namespace slehull {

/// Law of a_1(tau) = 2 tau in the normalized frame |x - y| = 2:
///   nu(x) = C x^-a exp(-b / x),  a = (3 kappa - 2 rho - 4) / (2 kappa),  b = 4 / kappa,
/// i.e. b / G with G ~ Gamma(a - 1, 1).
class CapacityLaw {
 public:
  /// Throws std::domain_error("capacity law not normalizable") when a <= 1 and
  /// std::invalid_argument when kappa <= 0. The Gamma-function normalization
  /// is cross-checked against quadrature (relative 1e-8) on construction.
  CapacityLaw(double kappa, double rho);

  [[nodiscard]] double kappa() const { return kappa_; }
  [[nodiscard]] double rho() const { return rho_; }
  /// Power-law exponent a.
  [[nodiscard]] double exponent() const { return a_; }
  /// Exponential scale b.
  [[nodiscard]] double scale() const { return b_; }
  /// C = b^(a-1) / Gamma(a-1).
  [[nodiscard]] double normalization() const { return c_; }
  /// Quadrature value of the integral of nu found at construction.
  [[nodiscard]] double quadrature_mass() const { return mass_; }

  [[nodiscard]] double pdf(double x) const;
  /// Q(a - 1, b / x); 0 for x <= 0.
  [[nodiscard]] double cdf(double x) const;
  [[nodiscard]] double quantile(double p) const;
  /// E[a_1^n] = b^n / ((a-2)(a-3)...(a-n-1)); +inf when it does not exist.
  [[nodiscard]] double moment(unsigned n) const;

 private:
  double kappa_;
  double rho_;
  double a_;
  double b_;
  double c_;
  double mass_;
};

/// p-quantile of tau = a_1 / 2.
double tau_quantile(const CapacityLaw& law, double p);

/// Exact draw b / G with G ~ Gamma(a - 1, 1).
double sample_capacity(const CapacityLaw& law, Seed seed);
std::vector<double> sample_capacities(const CapacityLaw& law, std::uint64_t master_seed, std::size_t n);

/// Integral of x^n nu(x) over (0, inf) by quadrature; intended for checks.
double quadrature_moment(const CapacityLaw& law, unsigned n);

/// Smooth test function with compact support [lo, hi] and its first two
/// derivatives.
struct TestFunction {
  double lo = 0.0;
  double hi = 0.0;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

/// Standard bump exp(-1 / (1 - u^2)), u mapping [lo, hi] onto [-1, 1], times
/// `height`.
TestFunction bump_function(double lo, double hi, double height = 1.0);

/// Function constant on its support: f' = f'' = 0.
TestFunction constant_function(double lo, double hi);

/// Integral of (p f'' + q f') nu with p = kappa x^2 / 2 and
/// q = 2 + (kappa + 2 rho + 4) x / 4; zero for the stationary law.
double stationary_ode_residual(const CapacityLaw& law, const TestFunction& f);

}  // namespace slehull
