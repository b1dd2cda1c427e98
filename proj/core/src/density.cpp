#include "slehull/density.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <fmt/format.h>

namespace slehull {

namespace {

constexpr double kNormalizationTolerance = 1e-8;

// Integral of x^n nu(x): [0, 1] directly, [1, inf) through u = 1/x, which
// turns the power tail into the integrable endpoint singularity u^(a-2-n).
double integrate_moment(double a, double b, double c, unsigned n) {
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double nn = static_cast<double>(n);
  auto head = [&](double x) {
    if (x <= 0.0) return 0.0;
    return c * std::exp((nn - a) * std::log(x) - b / x);
  };
  // tail u^(s-1) e^(-b u) on [0,1], s = a - 1 - n; with w = u^s this is
  // (1/s) e^(-b w^(1/s)), smooth even when s is tiny
  const double s = a - 1.0 - nn;
  auto tail = [&](double w) {
    if (w <= 0.0) return c / s;
    return c / s * std::exp(-b * std::exp(std::log(w) / s));
  };
  const double tol = 1e-13;
  return integrator.integrate(head, 0.0, 1.0, tol) + integrator.integrate(tail, 0.0, 1.0, tol);
}

}  // namespace

CapacityLaw::CapacityLaw(double kappa, double rho) : kappa_(kappa), rho_(rho) {
  if (!(kappa > 0.0) || !std::isfinite(kappa) || !std::isfinite(rho)) {
    throw std::invalid_argument("capacity law needs finite kappa > 0 and finite rho");
  }
  a_ = (3.0 * kappa - 2.0 * rho - 4.0) / (2.0 * kappa);
  b_ = 4.0 / kappa;
  if (!(a_ > 1.0)) {
    throw std::domain_error(fmt::format("capacity law not normalizable (power exponent a = {} must exceed 1)", a_));
  }
  c_ = std::exp((a_ - 1.0) * std::log(b_) - std::lgamma(a_ - 1.0));
  mass_ = integrate_moment(a_, b_, c_, 0);
  if (std::abs(mass_ - 1.0) > kNormalizationTolerance) {
    throw std::logic_error(fmt::format("capacity law normalization mismatch: quadrature gives {}", mass_));
  }
}

double CapacityLaw::pdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  return c_ * std::exp(-a_ * std::log(x) - b_ / x);
}

double CapacityLaw::cdf(double x) const {
  if (!(x > 0.0)) return 0.0;
  return boost::math::gamma_q(a_ - 1.0, b_ / x);
}

double CapacityLaw::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("quantile level must lie in (0, 1)");
  return b_ / boost::math::gamma_q_inv(a_ - 1.0, p);
}

double CapacityLaw::moment(unsigned n) const {
  double m = 1.0;
  for (unsigned k = 1; k <= n; ++k) {
    const double denom = a_ - 1.0 - static_cast<double>(k);
    if (!(denom > 0.0)) return std::numeric_limits<double>::infinity();
    m *= b_ / denom;
  }
  return m;
}

double tau_quantile(const CapacityLaw& law, double p) { return 0.5 * law.quantile(p); }

double sample_capacity(const CapacityLaw& law, Seed seed) {
  PhiloxStream engine(seed);
  std::gamma_distribution<double> gamma(law.exponent() - 1.0, 1.0);
  return law.scale() / gamma(engine);
}

std::vector<double> sample_capacities(const CapacityLaw& law, std::uint64_t master_seed, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = sample_capacity(law, Seed{master_seed, i});
  return out;
}

double quadrature_moment(const CapacityLaw& law, unsigned n) {
  if (!(law.exponent() - 1.0 > static_cast<double>(n))) return std::numeric_limits<double>::infinity();
  return integrate_moment(law.exponent(), law.scale(), law.normalization(), n);
}

TestFunction bump_function(double lo, double hi, double height) {
  if (!(hi > lo) || !(lo > 0.0)) throw std::invalid_argument("bump support must be an interval inside (0, inf)");
  const double s = 2.0 / (hi - lo);
  const double mid = 0.5 * (lo + hi);
  TestFunction f;
  f.lo = lo;
  f.hi = hi;
  f.d1 = [=](double x) {
    const double u = (x - mid) * s;
    if (std::abs(u) >= 1.0) return 0.0;
    const double w = 1.0 - u * u;
    const double phi1 = -2.0 * u / (w * w);
    return height * std::exp(-1.0 / w) * phi1 * s;
  };
  f.d2 = [=](double x) {
    const double u = (x - mid) * s;
    if (std::abs(u) >= 1.0) return 0.0;
    const double w = 1.0 - u * u;
    const double phi1 = -2.0 * u / (w * w);
    const double phi2 = -(2.0 + 6.0 * u * u) / (w * w * w);
    return height * std::exp(-1.0 / w) * (phi1 * phi1 + phi2) * s * s;
  };
  return f;
}

TestFunction constant_function(double lo, double hi) {
  TestFunction f;
  f.lo = lo;
  f.hi = hi;
  f.d1 = [](double) { return 0.0; };
  f.d2 = [](double) { return 0.0; };
  return f;
}

double stationary_ode_residual(const CapacityLaw& law, const TestFunction& f) {
  const double kappa = law.kappa();
  const double q1 = (kappa + 2.0 * law.rho() + 4.0) / 4.0;
  auto integrand = [&](double x) {
    const double p = 0.5 * kappa * x * x;
    const double q = 2.0 + q1 * x;
    return (p * f.d2(x) + q * f.d1(x)) * law.pdf(x);
  };
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, f.lo, f.hi, 15, 1e-13);
}

}  // namespace slehull
