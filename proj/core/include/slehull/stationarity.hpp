#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "slehull/loewner.hpp"
#include "slehull/sde.hpp"

namespace slehull {

/// phi(z) = alpha z + beta with alpha > 0.
struct AffineMap {
  double alpha = 1.0;
  double beta = 0.0;

  [[nodiscard]] double operator()(double z) const { return alpha * z + beta; }
};

/// The affine map sending x to X and y to Y. Throws "marked points crossed"
/// when the ordering flips (alpha <= 0).
AffineMap phi_from_marked_points(double X, double Y, double x, double y);

struct FlowSample {
  CoefficientState state;
  /// tau <= t: the flow returned g_tau directly.
  bool exceptional = false;
  AffineMap phi;
};

/// Supplies the independent copy G~. Tests inject fixed coefficients here.
using TildeSource = std::function<CoefficientState()>;

/// One sample of G_t = phi_t o G~ o phi_t^-1 o g_t, or g_tau on {tau <= t}.
/// The driving path for g uses `g_seed`; `tilde` is only called on {tau > t}.
FlowSample flow_from_tilde(const SleParams& params, double t, const StepConfig& cfg, std::size_t order, Seed g_seed,
                           const TildeSource& tilde);

FlowSample flow_one_sample(const SleParams& params, double t, const StepConfig& cfg, std::size_t order, Seed g_seed,
                           Seed tilde_seed);

/// Stream roles inside one replica.
inline constexpr std::uint64_t kRoleFlowPath = 0;
inline constexpr std::uint64_t kRoleFlowTilde = 1;
inline constexpr std::uint64_t kRoleDirect = 2;

struct CoefficientKs {
  std::size_t coeff = 0;  // 1-based k of a_k
  double ks_stat = 0.0;
  double p_value = 1.0;
};

/// For sigma-odd coefficients (even k): fraction of positive values.
struct SignDiagnostic {
  std::size_t coeff = 0;
  double positive_flowed = 0.0;
  double positive_direct = 0.0;
};

struct EnsembleReport {
  SleParams flow_params;
  SleParams direct_params;
  StepConfig cfg;
  double t = 0.0;
  std::size_t order = 0;
  std::uint64_t seed = 0;

  std::size_t n_flowed = 0;
  std::size_t n_direct = 0;
  /// Replicas that hit t_cap; excluded from the KS comparison.
  std::size_t censored_flowed = 0;
  std::size_t censored_direct = 0;
  double frac_tau_le_t = 0.0;

  std::vector<CoefficientKs> ks;
  std::vector<SignDiagnostic> signs;
  std::vector<std::string> warnings;

  /// Smallest KS p-value over a_1..a_k.
  [[nodiscard]] double min_p_value(std::size_t up_to) const;
};

/// n flowed samples against n direct samples with the same parameters.
EnsembleReport stationarity_experiment(const SleParams& params, double t, std::size_t n, const StepConfig& cfg,
                                       std::size_t order, std::uint64_t master_seed, unsigned threads = 0);

/// Flowed ensemble under `flow_params` against the direct ensemble under
/// `direct_params`. With differing parameters this is the power control.
EnsembleReport compare_flow_to_direct(const SleParams& flow_params, const SleParams& direct_params, double t,
                                      std::size_t n, const StepConfig& cfg, std::size_t order,
                                      std::uint64_t master_seed, unsigned threads = 0);

/// Direct ensemble in the frame (x, y) against the mirrored frame (-x, -y)
/// with a_k multiplied by (-1)^(k+1). The laws agree if the mirror relation
/// holds; fields reuse EnsembleReport with "flowed" meaning the mirrored side.
EnsembleReport mirror_check(const SleParams& params, std::size_t n, const StepConfig& cfg, std::size_t order,
                            std::uint64_t master_seed, unsigned threads = 0);

/// Flow time at the p-quantile of tau in the frame of `params`.
double suggest_flow_time(const SleParams& params, double p = 1e-3);

}  // namespace slehull
