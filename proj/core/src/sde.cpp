#include "slehull/sde.hpp"

#include <fmt/format.h>

namespace slehull {

SleParams SleParams::normalized(double kappa, double rho, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
  SleParams p;
  p.kappa = kappa;
  p.rho = rho;
  p.x = sigma;
  p.y = -sigma;
  p.sigma = sigma;
  return p;
}

void SleParams::validate() const {
  if (!std::isfinite(kappa) || !std::isfinite(rho) || !std::isfinite(x) || !std::isfinite(y)) {
    throw std::invalid_argument("SLE parameters must be finite");
  }
  if (kappa <= 0.0) throw std::invalid_argument("kappa must be positive");
  if (x == y) throw std::invalid_argument("marked points must differ (x != y)");
  if (sigma) {
    if (*sigma != 1 && *sigma != -1) throw std::invalid_argument("sigma must be +1 or -1");
    if (x != *sigma || y != -*sigma) throw std::invalid_argument("normalized frame requires x = sigma, y = -sigma");
  }
}

void StepConfig::validate() const {
  const bool ok = dt_max > 0.0 && step_factor > 0.0 && eps_abs > 0.0 && t_cap > 0.0 && !std::isnan(dt_max) &&
                  std::isfinite(step_factor) && std::isfinite(eps_abs) && !std::isnan(t_cap);
  if (!ok) throw std::invalid_argument("step configuration values must be strictly positive");
}

double bessel_index(double kappa, double rho) { return 2.0 * (rho + 2.0) / kappa; }

double rho_from_theta(double theta, double kappa, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return sign * theta + (kappa - 6.0) / 2.0;
}

double theta_from_rho(double rho, double kappa, int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return sign * (rho - (kappa - 6.0) / 2.0);
}

void require_hitting(const SleParams& params) {
  const double nu = bessel_index(params.kappa, params.rho);
  if (!hits_zero(nu)) {
    throw std::domain_error(fmt::format("tau almost surely infinite (Bessel index nu = {} but absorption needs nu < 1)", nu));
  }
}

DrivingPath simulate_to_hit(const SleParams& params, const StepConfig& cfg, Seed seed, bool require_absorption) {
  params.validate();
  cfg.validate();
  if (require_absorption) require_hitting(params);

  DrivingPath path;
  path.orientation = params.orientation();
  path.times.push_back(0.0);
  path.Y.push_back(params.y);
  path.Z.push_back(std::abs(params.y - params.x));

  NormalStream normal(seed);
  const auto outcome = drive(params, cfg, normal, [&](const StepRecord& step) {
    path.times.push_back(step.t);
    path.Y.push_back(step.y);
    path.Z.push_back(step.z);
  });
  path.absorbed = outcome.reason == StopReason::Absorbed;
  path.tau = path.absorbed ? outcome.t : 0.0;
  return path;
}

std::string path_to_csv(const DrivingPath& path) {
  std::string out = "t,X,Y,Z\n";
  for (std::size_t i = 0; i < path.size(); ++i) {
    out += fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", path.times[i], path.X(i), path.Y[i], path.Z[i]);
  }
  out += fmt::format("# absorbed={},tau={:.17g}\n", path.absorbed ? 1 : 0, path.tau);
  return out;
}

}  // namespace slehull
