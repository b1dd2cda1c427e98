#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "slehull/rng.hpp"

namespace slehull {

/// SLE_kappa(rho) started from x with the extra marked point y.
struct SleParams {
  double kappa = 2.0;
  double rho = 0.0;
  double x = -1.0;
  double y = 1.0;
  /// Set when the normalized frame x = sigma, y = -sigma is claimed.
  std::optional<int> sigma;

  /// x = sigma, y = -sigma.
  static SleParams normalized(double kappa, double rho, int sigma);

  /// +1 when x < y, -1 otherwise. Z = orientation * (Y - X) > 0 before tau.
  [[nodiscard]] int orientation() const { return x < y ? 1 : -1; }

  /// Throws std::invalid_argument on kappa <= 0, x == y, non-finite values,
  /// or an inconsistent sigma claim.
  void validate() const;
};

/// Adaptive Euler-Maruyama controls: dt = min(dt_max, step_factor * Z^2 / kappa).
struct StepConfig {
  double dt_max = 1e-3;
  double step_factor = 0.01;
  double eps_abs = 1e-5;
  double t_cap = 1e6;

  void validate() const;
};

/// Discretized driving triple. Y and Z are stored; X is derived as
/// Y - orientation * Z so the identity Z = orientation * (Y - X) has a single
/// source of truth.
struct DrivingPath {
  std::vector<double> times;
  std::vector<double> Y;
  std::vector<double> Z;
  int orientation = 1;
  bool absorbed = false;
  double tau = 0.0;

  [[nodiscard]] std::size_t size() const { return times.size(); }
  [[nodiscard]] double X(std::size_t i) const { return Y[i] - orientation * Z[i]; }
};

/// Bessel index nu = 2(rho + 2)/kappa of Z / sqrt(kappa).
double bessel_index(double kappa, double rho);

/// Z hits zero in finite time iff nu < 1. nu >= 1 is treated as non-hitting.
inline bool hits_zero(double nu) { return nu < 1.0; }

/// rho = sign * theta + (kappa - 6)/2.
double rho_from_theta(double theta, double kappa, int sign);
double theta_from_rho(double rho, double kappa, int sign);

/// One accepted integrator step, reported to kernel visitors.
struct StepRecord {
  double t;       // time after the step
  double dt;      // step length
  double x_left;  // driving value at the start of the step
  double y;       // Y after the step
  double z;       // Z after the step (clamped at 0 on overshoot)
};

enum class StopReason { Absorbed, StopTime, TimeCap };

struct KernelOutcome {
  StopReason reason = StopReason::TimeCap;
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  std::size_t steps = 0;
};

/// Euler-Maruyama integration of
///   dZ = (rho + 2) dt / Z - s sqrt(kappa) dB,   dY = s 2 dt / Z,   X = Y - s Z
/// with s the orientation. `normal()` supplies standard normal variates and
/// `visit(const StepRecord&)` sees every accepted step. Stops at absorption
/// (Z <= eps_abs, overshoot below 0 included), at stop_time, or at t_cap.
template <class NormalSource, class Visitor>
KernelOutcome drive(const SleParams& params, const StepConfig& cfg, NormalSource&& normal, Visitor&& visit,
                    double stop_time = std::numeric_limits<double>::infinity()) {
  const double s = params.orientation();
  const double drift = params.rho + 2.0;
  const double sqrt_kappa = std::sqrt(params.kappa);
  const double dt_scale = cfg.step_factor / params.kappa;

  double t = 0.0;
  double y = params.y;
  double z = std::abs(params.y - params.x);
  KernelOutcome out;

  while (true) {
    if (z <= cfg.eps_abs) {
      out.reason = StopReason::Absorbed;
      break;
    }
    if (t >= stop_time) {
      out.reason = StopReason::StopTime;
      break;
    }
    if (t >= cfg.t_cap) {
      out.reason = StopReason::TimeCap;
      break;
    }
    double dt = std::min(cfg.dt_max, dt_scale * z * z);
    double t_next = t + dt;
    const double limit = std::min(stop_time, cfg.t_cap);
    if (t_next >= limit) {
      dt = limit - t;
      t_next = limit;
    }
    const double x_left = y - s * z;
    const double dw = std::sqrt(dt) * normal();
    const double z_next = z + drift * dt / z - s * sqrt_kappa * dw;
    y += s * 2.0 * dt / z;
    z = z_next < 0.0 ? 0.0 : z_next;
    t = t_next;
    ++out.steps;
    visit(StepRecord{t, dt, x_left, y, z});
  }
  out.t = t;
  out.y = y;
  out.z = z;
  out.x = y - s * z;
  return out;
}

/// Standard normal variates from one Philox stream.
class NormalStream {
 public:
  explicit NormalStream(Seed seed) : engine_(seed) {}
  double operator()() { return dist_(engine_); }

 private:
  PhiloxStream engine_;
  std::normal_distribution<double> dist_;
};

/// Throws std::domain_error("tau almost surely infinite") when absorption is
/// required but nu >= 1.
void require_hitting(const SleParams& params);

/// Full path to absorption (or to t_cap, flagged via absorbed = false).
DrivingPath simulate_to_hit(const SleParams& params, const StepConfig& cfg, Seed seed,
                            bool require_absorption = true);

/// Path dump: header `t,X,Y,Z`, one row per stored step, then a comment line
/// with the absorption record.
std::string path_to_csv(const DrivingPath& path);

}  // namespace slehull
