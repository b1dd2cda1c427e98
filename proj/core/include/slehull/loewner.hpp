#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "slehull/sde.hpp"
#include "slehull/series.hpp"

namespace slehull {

/// Loewner-map coefficients a_1..a_M of g_t(z) = z + sum_k a_k z^-k at time t.
struct CoefficientState {
  double t = 0.0;
  std::vector<double> a;
  /// False when the underlying path stopped at t_cap instead of absorbing.
  bool absorbed = true;
};

/// Time derivatives of a_1..a_M: the z^-k coefficients of 2 / (g_t(z) - X).
/// Generic over the scalar so the rational backend can check hand formulas.
template <class Scalar>
std::vector<Scalar> coefficient_rhs(std::span<const Scalar> a, const Scalar& X) {
  const auto g = TailSeries<Scalar>(Lead::Affine, -X, std::vector<Scalar>(a.begin(), a.end()));
  const auto inv = tail_reciprocal(g, a.size());
  std::vector<Scalar> out(a.size());
  for (std::size_t k = 1; k <= a.size(); ++k) out[k - 1] = Scalar(2) * inv[k];
  return out;
}

std::vector<double> coefficient_rhs(const CoefficientState& state, double X);

/// Streaming Heun integrator of the coefficient hierarchy, X held constant
/// across each step. Allocation-free in the step loop.
class CoefficientIntegrator {
 public:
  explicit CoefficientIntegrator(std::size_t order);

  void advance(double dt, double x);

  [[nodiscard]] double time() const { return t_; }
  [[nodiscard]] std::size_t order() const { return order_; }
  [[nodiscard]] std::span<const double> coefficients() const { return {a_.data(), order_}; }
  [[nodiscard]] CoefficientState state() const;

 private:
  void rhs(const double* a, double x, double* out) const;

  std::size_t order_;
  double t_ = 0.0;
  std::array<double, kMaxOrder> a_{};
};

/// Integrates the hierarchy from a = 0 at t = 0 along the stored path.
CoefficientState integrate_coefficients(const DrivingPath& path, std::size_t order);

/// simulate_to_hit composed with integrate_coefficients, fused in one pass.
CoefficientState sample_sle_data(const SleParams& params, const StepConfig& cfg, std::size_t order, Seed seed);

/// n independent replicas, replica i on stream Seed{master, i}. Results do not
/// depend on the thread count.
std::vector<CoefficientState> sample_ensemble(const SleParams& params, const StepConfig& cfg, std::size_t order,
                                              std::uint64_t master_seed, std::size_t n, unsigned threads = 0);

}  // namespace slehull
