#include "slehull/stationarity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>

#include "slehull/density.hpp"
#include "slehull/parallel.hpp"
#include "slehull/stats.hpp"

namespace slehull {

AffineMap phi_from_marked_points(double X, double Y, double x, double y) {
  if (x == y) throw std::invalid_argument("marked points must differ (x != y)");
  const double alpha = (X - Y) / (x - y);
  if (!(alpha > 0.0)) throw std::domain_error("marked points crossed");
  return {alpha, (Y * x - X * y) / (x - y)};
}

FlowSample flow_from_tilde(const SleParams& params, double t, const StepConfig& cfg, std::size_t order, Seed g_seed,
                           const TildeSource& tilde) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("flow time must be finite and >= 0");
  if (!(t < cfg.t_cap)) throw std::invalid_argument("flow time must lie below t_cap");
  CoefficientIntegrator integrator(order);
  NormalStream normal(g_seed);
  const auto outcome =
      drive(params, cfg, normal, [&](const StepRecord& step) { integrator.advance(step.dt, step.x_left); }, t);

  FlowSample out;
  if (outcome.reason == StopReason::Absorbed) {
    out.exceptional = true;
    out.state = integrator.state();
    out.state.t = outcome.t;
    return out;
  }

  const auto tilde_state = tilde();
  if (tilde_state.a.size() < order) throw std::invalid_argument("tilde sample shorter than the truncation order");
  out.phi = phi_from_marked_points(outcome.x, outcome.y, params.x, params.y);
  const auto g = TailSeries<double>::affine(std::vector<double>(integrator.coefficients().begin(),
                                                                integrator.coefficients().end()));
  const auto G = assemble_G<double>(g, tilde_state.a, out.phi.alpha, out.phi.beta, order);
  out.state.t = outcome.t + out.phi.alpha * out.phi.alpha * tilde_state.t;
  out.state.a.assign(G.tail().begin(), G.tail().end());
  out.state.absorbed = tilde_state.absorbed;
  return out;
}

FlowSample flow_one_sample(const SleParams& params, double t, const StepConfig& cfg, std::size_t order, Seed g_seed,
                           Seed tilde_seed) {
  params.validate();
  cfg.validate();
  require_hitting(params);
  return flow_from_tilde(params, t, cfg, order, g_seed,
                         [&] { return sample_sle_data(params, cfg, order, tilde_seed); });
}

double EnsembleReport::min_p_value(std::size_t up_to) const {
  double p = 1.0;
  for (const auto& k : ks) {
    if (k.coeff <= up_to) p = std::min(p, k.p_value);
  }
  return p;
}

namespace {

std::vector<double> column(const std::vector<CoefficientState>& states, std::size_t k) {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) {
    if (s.absorbed) out.push_back(s.a[k - 1]);
  }
  return out;
}

double positive_fraction(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const auto pos = std::count_if(v.begin(), v.end(), [](double x) { return x > 0.0; });
  return static_cast<double>(pos) / static_cast<double>(v.size());
}

std::size_t censored(const std::vector<CoefficientState>& states) {
  return static_cast<std::size_t>(
      std::count_if(states.begin(), states.end(), [](const CoefficientState& s) { return !s.absorbed; }));
}

void fill_comparison(EnsembleReport& r, const std::vector<CoefficientState>& lhs,
                     const std::vector<CoefficientState>& rhs) {
  r.n_flowed = lhs.size();
  r.n_direct = rhs.size();
  r.censored_flowed = censored(lhs);
  r.censored_direct = censored(rhs);
  if (r.n_flowed < 100 || r.n_direct < 100) {
    r.warnings.push_back(fmt::format("small sample (n = {}); KS p-values are unreliable below 100", r.n_flowed));
  }
  if (r.censored_flowed + r.censored_direct > 0) {
    r.warnings.push_back(fmt::format("{} flowed and {} direct replicas hit t_cap and were excluded",
                                     r.censored_flowed, r.censored_direct));
  }
  for (std::size_t k = 1; k <= r.order; ++k) {
    const auto a = column(lhs, k);
    const auto b = column(rhs, k);
    if (a.empty() || b.empty()) throw std::runtime_error("no absorbed replicas left to compare");
    const auto res = ks_two_sample(a, b);
    r.ks.push_back({k, res.statistic, res.p_value});
    if (k % 2 == 0) r.signs.push_back({k, positive_fraction(a), positive_fraction(b)});
  }
}

void check_ensemble_args(const SleParams& params, std::size_t n, const StepConfig& cfg) {
  params.validate();
  cfg.validate();
  require_hitting(params);
  if (n < 2) throw std::invalid_argument("ensemble needs at least two replicas");
}

}  // namespace

EnsembleReport compare_flow_to_direct(const SleParams& flow_params, const SleParams& direct_params, double t,
                                      std::size_t n, const StepConfig& cfg, std::size_t order,
                                      std::uint64_t master_seed, unsigned threads) {
  check_ensemble_args(flow_params, n, cfg);
  check_ensemble_args(direct_params, n, cfg);

  std::vector<CoefficientState> flowed(n);
  std::vector<CoefficientState> direct(n);
  std::vector<char> exceptional(n, 0);
  parallel_for(n, threads, [&](std::size_t i) {
    const Seed base{master_seed, i};
    auto f = flow_one_sample(flow_params, t, cfg, order, base.child(kRoleFlowPath), base.child(kRoleFlowTilde));
    flowed[i] = std::move(f.state);
    exceptional[i] = f.exceptional ? 1 : 0;
    direct[i] = sample_sle_data(direct_params, cfg, order, base.child(kRoleDirect));
  });

  EnsembleReport r;
  r.flow_params = flow_params;
  r.direct_params = direct_params;
  r.cfg = cfg;
  r.t = t;
  r.order = order;
  r.seed = master_seed;
  r.frac_tau_le_t =
      static_cast<double>(std::count(exceptional.begin(), exceptional.end(), 1)) / static_cast<double>(n);
  fill_comparison(r, flowed, direct);
  return r;
}

EnsembleReport stationarity_experiment(const SleParams& params, double t, std::size_t n, const StepConfig& cfg,
                                       std::size_t order, std::uint64_t master_seed, unsigned threads) {
  return compare_flow_to_direct(params, params, t, n, cfg, order, master_seed, threads);
}

EnsembleReport mirror_check(const SleParams& params, std::size_t n, const StepConfig& cfg, std::size_t order,
                            std::uint64_t master_seed, unsigned threads) {
  check_ensemble_args(params, n, cfg);
  SleParams mirrored = params;
  mirrored.x = -params.x;
  mirrored.y = -params.y;
  if (params.sigma) mirrored.sigma = -*params.sigma;

  std::vector<CoefficientState> lhs(n);
  std::vector<CoefficientState> rhs(n);
  parallel_for(n, threads, [&](std::size_t i) {
    const Seed base{master_seed, i};
    lhs[i] = sample_sle_data(mirrored, cfg, order, base.child(kRoleFlowPath));
    for (std::size_t k = 2; k <= order; k += 2) lhs[i].a[k - 1] = -lhs[i].a[k - 1];
    rhs[i] = sample_sle_data(params, cfg, order, base.child(kRoleDirect));
  });

  EnsembleReport r;
  r.flow_params = mirrored;
  r.direct_params = params;
  r.cfg = cfg;
  r.order = order;
  r.seed = master_seed;
  fill_comparison(r, lhs, rhs);
  return r;
}

double suggest_flow_time(const SleParams& params, double p) {
  params.validate();
  const CapacityLaw law(params.kappa, params.rho);
  const double half_gap = std::abs(params.x - params.y) / 2.0;
  return half_gap * half_gap * tau_quantile(law, p);
}

}  // namespace slehull
