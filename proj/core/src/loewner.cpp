#include "slehull/loewner.hpp"

#include <stdexcept>

#include "slehull/parallel.hpp"

namespace slehull {

std::vector<double> coefficient_rhs(const CoefficientState& state, double X) {
  return coefficient_rhs<double>(state.a, X);
}

CoefficientIntegrator::CoefficientIntegrator(std::size_t order) : order_(order) {
  if (order == 0) throw std::invalid_argument("empty truncation");
  if (order > kMaxOrder) throw std::invalid_argument("order exceeds the series module maximum");
}

// Same algebra as tail_reciprocal, on fixed buffers: u = 1 - X w + a_1 w^2 + ...
void CoefficientIntegrator::rhs(const double* a, double x, double* out) const {
  // buffers are left uninitialized; only [0, order_) is touched
  std::array<double, kMaxOrder> u;
  u[0] = 1.0;
  if (order_ > 1) u[1] = -x;
  for (std::size_t j = 1; j + 1 < order_; ++j) u[j + 1] = a[j - 1];
  std::array<double, kMaxOrder> v;
  series_detail::invert_unit<double>(std::span<const double>(u.data(), order_), std::span<double>(v.data(), order_));
  for (std::size_t k = 0; k < order_; ++k) out[k] = 2.0 * v[k];
}

void CoefficientIntegrator::advance(double dt, double x) {
  std::array<double, kMaxOrder> k1;
  std::array<double, kMaxOrder> k2;
  std::array<double, kMaxOrder> trial;
  rhs(a_.data(), x, k1.data());
  for (std::size_t k = 0; k < order_; ++k) trial[k] = a_[k] + dt * k1[k];
  rhs(trial.data(), x, k2.data());
  for (std::size_t k = 0; k < order_; ++k) a_[k] += 0.5 * dt * (k1[k] + k2[k]);
  t_ += dt;
}

CoefficientState CoefficientIntegrator::state() const {
  CoefficientState s;
  s.t = t_;
  s.a.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(order_));
  return s;
}

CoefficientState integrate_coefficients(const DrivingPath& path, std::size_t order) {
  if (path.size() == 0) throw std::invalid_argument("empty driving path");
  CoefficientIntegrator integrator(order);
  for (std::size_t i = 1; i < path.size(); ++i) {
    integrator.advance(path.times[i] - path.times[i - 1], path.X(i - 1));
  }
  auto state = integrator.state();
  state.t = path.times.back();
  state.absorbed = path.absorbed;
  return state;
}

CoefficientState sample_sle_data(const SleParams& params, const StepConfig& cfg, std::size_t order, Seed seed) {
  params.validate();
  cfg.validate();
  require_hitting(params);
  CoefficientIntegrator integrator(order);
  NormalStream normal(seed);
  const auto outcome =
      drive(params, cfg, normal, [&](const StepRecord& step) { integrator.advance(step.dt, step.x_left); });
  auto state = integrator.state();
  state.t = outcome.t;
  state.absorbed = outcome.reason == StopReason::Absorbed;
  return state;
}

std::vector<CoefficientState> sample_ensemble(const SleParams& params, const StepConfig& cfg, std::size_t order,
                                              std::uint64_t master_seed, std::size_t n, unsigned threads) {
  std::vector<CoefficientState> out(n);
  parallel_for(n, threads, [&](std::size_t i) { out[i] = sample_sle_data(params, cfg, order, Seed{master_seed, i}); });
  return out;
}

}  // namespace slehull
