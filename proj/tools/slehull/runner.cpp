#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "slehull/density.hpp"
#include "slehull/loewner.hpp"
#include "slehull/moments.hpp"
#include "slehull/parallel.hpp"
#include "slehull/stationarity.hpp"
#include "slehull/stats.hpp"

namespace slehull::cli {

using nlohmann::json;

namespace {

constexpr int kSchema = 1;
constexpr const char* kVersion = "0.1.0";

struct CommandName {
  Command command;
  const char* name;
  const char* help;
};

constexpr CommandName kCommands[] = {
    {Command::Simulate, "simulate", "Per-replica tau and a_1..a_M"},
    {Command::MomentsMc, "moments-mc", "Monte Carlo moment estimates next to the exact value"},
    {Command::MomentsExact, "moments-exact", "Exact moments as rational functions of kappa"},
    {Command::DensityTest, "density-test", "KS test of 2 tau against the capacity law"},
    {Command::StationarityTest, "stationarity-test", "Flowed ensemble against the direct ensemble"},
    {Command::ReversibilityReport, "reversibility-report", "Parity, denominators and numerator degrees"},
};

bool needs_absorption(Command c) {
  return c == Command::Simulate || c == Command::MomentsMc || c == Command::DensityTest ||
         c == Command::StationarityTest;
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::vector<MomentIndex> parse_indices(const std::vector<std::string>& raw) {
  std::vector<MomentIndex> out;
  for (const auto& r : raw) {
    try {
      auto idx = MomentIndex::parse(r);
      if (idx.empty()) throw std::invalid_argument("empty");
      out.push_back(std::move(idx));
    } catch (const std::exception&) {
      throw ValidationError(fmt::format("malformed moment index '{}' (expected e.g. 1 or 0,2)", r));
    }
  }
  return out;
}

void check_hitting(const SleParams& p, const std::string& what) {
  const double nu = bessel_index(p.kappa, p.rho);
  if (!hits_zero(nu)) {
    throw ValidationError(fmt::format(
        "{}: Bessel index nu = 2(rho+2)/kappa = {} >= 1, so tau is almost surely infinite; this command needs "
        "nu < 1",
        what, nu));
  }
}

StepConfig effective_cfg(const ExperimentConfig& c) {
  StepConfig cfg = c.cfg;
  // heavy tau tails make an absolute step cap cost ~tau/dt_max steps per path
  const bool control = c.command == Command::StationarityTest && (c.control_kappa || c.control_rho);
  if ((c.command == Command::DensityTest || control) && !c.dt_max_given) {
    cfg.dt_max = std::numeric_limits<double>::infinity();
  }
  return cfg;
}

SleParams control_params(const ExperimentConfig& c) {
  SleParams p = c.params;
  if (c.control_kappa) p.kappa = *c.control_kappa;
  if (c.control_rho) p.rho = *c.control_rho;
  return p;
}

json config_json(const ExperimentConfig& c) {
  const auto cfg = effective_cfg(c);
  json j;
  j["command"] = command_name(c.command);
  j["kappa"] = c.params.kappa;
  j["rho"] = c.params.rho;
  j["x"] = c.params.x;
  j["y"] = c.params.y;
  j["order"] = c.order;
  j["n"] = c.n;
  j["seed"] = c.seed;
  j["dt_max"] = std::isinf(cfg.dt_max) ? json("inf") : json(cfg.dt_max);
  j["step_factor"] = cfg.step_factor;
  j["eps_abs"] = cfg.eps_abs;
  j["t_cap"] = std::isinf(cfg.t_cap) ? json("inf") : json(cfg.t_cap);
  if (c.t) j["t"] = *c.t;
  if (!c.indices.empty()) j["indices"] = c.indices;
  j["level"] = c.level;
  return j;
}

// -- simulate ----------------------------------------------------------------

RunOutcome run_simulate(const ExperimentConfig& c) {
  const auto cfg = effective_cfg(c);
  const auto states = sample_ensemble(c.params, cfg, c.order, c.seed, c.n, c.threads);
  std::ostringstream os;
  if (c.format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "replica,absorbed,tau";
    for (std::size_t k = 1; k <= c.order; ++k) os << ",a" << k;
    os << "\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      os << i << "," << (states[i].absorbed ? 1 : 0) << "," << num(states[i].t);
      for (double a : states[i].a) os << "," << num(a);
      os << "\n";
    }
  } else {
    for (std::size_t i = 0; i < states.size(); ++i) {
      json j{{"replica", i}, {"tau", states[i].t}, {"a", states[i].a}, {"absorbed", states[i].absorbed}};
      os << j.dump() << "\n";
    }
  }
  RunOutcome out{os.str(), true, {}};
  if (!c.path_out.empty()) {
    const auto path = simulate_to_hit(c.params, cfg, Seed{c.seed, 0});
    std::ofstream f(c.path_out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + c.path_out);
    f << path_to_csv(path);
  }
  return out;
}

// -- moments -----------------------------------------------------------------

// Exact value of E[Pi] in the frame (x, y) at the configured (kappa, rho), or
// nullopt when the moment diverges or the frame map does not apply.
std::optional<double> exact_moment(const MomentIndex& index, const SleParams& p) {
  const auto N = degree(index).N;
  if (!moment_exists(N, p.kappa, p.rho)) return std::nullopt;
  if (p.x + p.y != 0.0 && index.length() > 1) return std::nullopt;
  try {
    NumericMomentSolver solver{Rational(p.kappa), Rational(p.rho)};
    const auto v = solver.solve(index);
    const int sigma = p.x > p.y ? 1 : -1;
    const double lambda = std::abs(p.x - p.y) / 2.0;
    return v.at(sigma).get_d() * std::pow(lambda, static_cast<double>(N.twice));
  } catch (const std::domain_error&) {
    return std::nullopt;
  }
}

RunOutcome run_moments_mc(const ExperimentConfig& c) {
  const auto indices = parse_indices(c.indices);
  const auto cfg = effective_cfg(c);
  const auto states = sample_ensemble(c.params, cfg, c.order, c.seed, c.n, c.threads);

  RunOutcome out;
  std::ostringstream os;
  json rows = json::array();
  if (c.format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "index,estimate,se,ci_lo,ci_hi,exact_value,tail_warning\n";
  }
  for (const auto& index : indices) {
    const auto est = estimate_moment(states, index, c.params.kappa, c.params.rho);
    const auto exact = exact_moment(index, c.params);
    if (exact && !est.tail_warning && std::abs(est.mean - *exact) > 3.0 * est.se) out.test_passed = false;
    if (c.format == Format::Csv) {
      os << csv_field(index.to_string()) << "," << num(est.mean) << "," << num(est.se) << "," << num(est.ci95.first)
         << "," << num(est.ci95.second) << "," << (exact ? num(*exact) : std::string()) << ","
         << (est.tail_warning ? "true" : "false") << "\n";
    } else {
      rows.push_back({{"index", index.to_string()},
                      {"estimate", est.mean},
                      {"se", est.se},
                      {"ci_lo", est.ci95.first},
                      {"ci_hi", est.ci95.second},
                      {"exact_value", exact ? json(*exact) : json(nullptr)},
                      {"tail_warning", est.tail_warning},
                      {"n", est.n}});
    }
    if (est.tail_warning) {
      out.notes.push_back(fmt::format("{}: E[Pi^2] diverges at kappa = {}, rho = {}; the standard error is not reliable",
                                      index.to_string(), c.params.kappa, c.params.rho));
    }
  }
  const auto censored = std::count_if(states.begin(), states.end(), [](const auto& s) { return !s.absorbed; });
  if (censored > 0) out.notes.push_back(fmt::format("{} replicas hit t_cap and were excluded", censored));
  if (c.format == Format::Json) {
    json j{{"schema", kSchema}, {"moments", rows}, {"censored", censored}};
    os << j.dump(2) << "\n";
  }
  out.report = os.str();
  return out;
}

std::string closed_form_status(const MomentIndex& index, const SigmaGradedRational& value) {
  if (index.length() == 1) return value.even == closed_form_a1n(index.k(1), 1, -1) ? "match" : "mismatch";
  if (index.length() == 2 && index.k(2) % 2 == 0) {
    return value.even == closed_form_a1n_a2m(index.k(1), index.k(2)) ? "match" : "mismatch";
  }
  return "none";
}

RunOutcome run_moments_exact(const ExperimentConfig& c) {
  auto raw = c.indices;
  if (raw.empty()) raw = {"1", "2", "0,2"};
  const auto indices = parse_indices(raw);
  MomentSolver solver;
  RunOutcome out;
  std::ostringstream os;
  json rows = json::array();
  if (c.format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "index,N,even,odd,factored,closed_form\n";
  }
  for (const auto& index : indices) {
    const auto value = solver.solve(index);
    const auto status = closed_form_status(index, value);
    if (status == "mismatch") out.test_passed = false;
    const auto factored = value.even.to_factored_string();
    const auto N = degree(index).N;
    if (c.format == Format::Csv) {
      os << csv_field(index.to_string()) << "," << N.to_string() << "," << value.even.to_string() << ","
         << value.odd.to_string() << "," << factored.value_or("") << "," << status << "\n";
    } else {
      rows.push_back({{"index", index.to_string()},
                      {"N", N.to_string()},
                      {"even", value.even.to_string()},
                      {"odd", value.odd.to_string()},
                      {"factored", factored ? json(*factored) : json(nullptr)},
                      {"closed_form", status}});
    }
  }
  if (c.format == Format::Json) os << json{{"schema", kSchema}, {"moments", rows}}.dump(2) << "\n";
  out.report = os.str();
  return out;
}

RunOutcome run_reversibility(const ExperimentConfig& c) {
  const auto indices =
      c.indices.empty() ? indices_up_to_degree(HalfInteger{2L * c.max_degree}) : parse_indices(c.indices);
  MomentSolver solver;
  const auto report = reversibility_parity_report(indices, solver);
  RunOutcome out;
  std::ostringstream os;
  json rows = json::array();
  if (c.format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "index,N,parity,is_zero,grading_ok,reversibility_violation,denominator_ok,numerator_degree_ok,value\n";
  }
  std::size_t violations = 0;
  for (const auto& e : report) {
    const auto value = solver.solve(e.index);
    std::string denominator_ok = "n/a";
    std::string numerator_ok = "n/a";
    if (!e.half_integer) {
      const bool d = denominator_divides_pole_product(value.even, e.N.twice / 2);
      const bool n = numerator_degree_within(value.even, degree(e.index).Ntilde);
      denominator_ok = d ? "true" : "false";
      numerator_ok = n ? "true" : "false";
      if (!d) out.test_passed = false;
      if (!n) out.notes.push_back(e.index.to_string() + ": numerator degree exceeds Ntilde (conjecture)");
    }
    if (e.grading_violation) out.test_passed = false;
    if (e.reversibility_violation) ++violations;
    const char* parity = e.half_integer ? "half-integer" : "integer";
    if (c.format == Format::Csv) {
      os << csv_field(e.index.to_string()) << "," << e.N.to_string() << "," << parity << ","
         << (e.is_zero ? "true" : "false") << "," << (e.grading_violation ? "false" : "true") << ","
         << (e.reversibility_violation ? "true" : "false") << "," << denominator_ok << "," << numerator_ok << ","
         << csv_field(e.value) << "\n";
    } else {
      rows.push_back({{"index", e.index.to_string()},
                      {"N", e.N.to_string()},
                      {"parity", parity},
                      {"is_zero", e.is_zero},
                      {"grading_ok", !e.grading_violation},
                      {"reversibility_violation", e.reversibility_violation},
                      {"denominator_ok", denominator_ok},
                      {"numerator_degree_ok", numerator_ok},
                      {"value", e.value}});
    }
  }
  if (violations > 0) {
    out.notes.push_back(fmt::format("{} half-integer moments are nonzero (reversibility-violating)", violations));
  }
  if (c.format == Format::Json) os << json{{"schema", kSchema}, {"moments", rows}}.dump(2) << "\n";
  out.report = os.str();
  return out;
}

// -- density -----------------------------------------------------------------

// 2 tau rescaled to the frame |x - y| = 2; +inf when the path hit t_cap.
std::vector<double> sde_capacities(const ExperimentConfig& c, const StepConfig& cfg) {
  const double to_unit = 4.0 / ((c.params.x - c.params.y) * (c.params.x - c.params.y));
  std::vector<double> out(c.n);
  parallel_for(c.n, c.threads, [&](std::size_t i) {
    NormalStream normal(Seed{c.seed, i});
    const auto o = drive(c.params, cfg, normal, [](const StepRecord&) {});
    out[i] = o.reason == StopReason::Absorbed ? 2.0 * o.t * to_unit : std::numeric_limits<double>::infinity();
  });
  return out;
}

RunOutcome run_density(const ExperimentConfig& c) {
  const CapacityLaw law(c.params.kappa, c.params.rho);
  const auto cfg = effective_cfg(c);
  const auto samples = c.source == "sampler" ? sample_capacities(law, c.seed, c.n) : sde_capacities(c, cfg);
  const auto ks = ks_one_sample(samples, [&](double x) { return law.cdf(x); });
  const auto censored = std::count_if(samples.begin(), samples.end(), [](double v) { return std::isinf(v); });
  RunOutcome out;
  out.test_passed = ks.p_value > c.level;
  if (censored > 0) out.notes.push_back(fmt::format("{} paths hit t_cap (counted as +inf)", censored));
  std::ostringstream os;
  if (c.format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "n,ks_stat,p_value\n";
    os << c.n << "," << num(ks.statistic) << "," << num(ks.p_value) << "\n";
  } else {
    json j{{"schema", kSchema},   {"n", c.n},           {"ks_stat", ks.statistic}, {"p_value", ks.p_value},
           {"source", c.source},  {"censored", censored}, {"level", c.level},      {"passed", out.test_passed}};
    os << j.dump(2) << "\n";
  }
  out.report = os.str();
  return out;
}

// -- stationarity ------------------------------------------------------------

RunOutcome run_stationarity(const ExperimentConfig& c) {
  const auto cfg = effective_cfg(c);
  const double t = c.t.value_or(suggest_flow_time(c.params));
  const bool control = c.control_kappa || c.control_rho;
  EnsembleReport r;
  std::string mode = "stationarity";
  if (c.mirror) {
    mode = "mirror";
    r = mirror_check(c.params, c.n, cfg, c.order, c.seed, c.threads);
  } else if (control) {
    mode = "control";
    r = compare_flow_to_direct(c.params, control_params(c), t, c.n, cfg, c.order, c.seed, c.threads);
  } else {
    r = stationarity_experiment(c.params, t, c.n, cfg, c.order, c.seed, c.threads);
  }
  RunOutcome out;
  const std::size_t checked = std::min<std::size_t>(c.order, 2);
  // The control has to reject; the others have to pass.
  out.test_passed = control ? r.ks.front().p_value < c.level : r.min_p_value(checked) > c.level;
  out.notes = r.warnings;

  std::ostringstream os;
  if (c.format == Format::Csv) {
    os << "# schema=" << kSchema << "\n";
    os << "coeff,ks_stat,p_value,frac_tau_le_t\n";
    for (const auto& k : r.ks) {
      os << "a" << k.coeff << "," << num(k.ks_stat) << "," << num(k.p_value) << "," << num(r.frac_tau_le_t) << "\n";
    }
  } else {
    json rows = json::array();
    for (const auto& k : r.ks) {
      rows.push_back({{"coeff", fmt::format("a{}", k.coeff)},
                      {"ks_stat", k.ks_stat},
                      {"p_value", k.p_value},
                      {"n_flowed", r.n_flowed},
                      {"n_direct", r.n_direct},
                      {"frac_tau_le_t", r.frac_tau_le_t}});
    }
    json signs = json::array();
    for (const auto& s : r.signs) {
      signs.push_back({{"coeff", fmt::format("a{}", s.coeff)},
                       {"positive_flowed", s.positive_flowed},
                       {"positive_direct", s.positive_direct}});
    }
    json j{{"schema", kSchema},
           {"mode", mode},
           {"t", t},
           {"coefficients", rows},
           {"signs", signs},
           {"censored_flowed", r.censored_flowed},
           {"censored_direct", r.censored_direct},
           {"warnings", r.warnings},
           {"passed", out.test_passed}};
    os << j.dump(2) << "\n";
  }
  out.report = os.str();
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed for " + path);
}

}  // namespace

std::string command_name(Command c) {
  for (const auto& e : kCommands) {
    if (e.command == c) return e.name;
  }
  return "?";
}

Command parse_command(const std::string& name) {
  for (const auto& e : kCommands) {
    if (name == e.name) return e.command;
  }
  throw ValidationError("unknown command '" + name + "'");
}

void validate(const ExperimentConfig& c) {
  try {
    c.params.validate();
    c.cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ValidationError(e.what());
  }
  if (c.order == 0 || c.order > kMaxOrder) {
    throw ValidationError(fmt::format("order must lie in [1, {}]", kMaxOrder));
  }
  if (!(c.level > 0.0 && c.level < 1.0)) throw ValidationError("level must lie in (0, 1)");
  if (needs_absorption(c.command)) check_hitting(c.params, command_name(c.command));

  switch (c.command) {
    case Command::Simulate:
      if (c.n < 1) throw ValidationError("simulate needs n >= 1");
      break;
    case Command::MomentsMc: {
      if (c.n < 2) throw ValidationError("moments-mc needs n >= 2");
      if (c.indices.empty()) throw ValidationError("moments-mc needs at least one --index");
      for (const auto& idx : parse_indices(c.indices)) {
        if (idx.length() > c.order) {
          throw ValidationError(fmt::format("index {} needs order >= {}", idx.to_string(), idx.length()));
        }
      }
      break;
    }
    case Command::MomentsExact:
      parse_indices(c.indices);
      break;
    case Command::ReversibilityReport:
      parse_indices(c.indices);
      if (c.max_degree < 1 || c.max_degree > 8) throw ValidationError("max-degree must lie in [1, 8]");
      break;
    case Command::DensityTest:
      if (c.n < 2) throw ValidationError("density-test needs n >= 2");
      if (c.source != "sde" && c.source != "sampler") throw ValidationError("source must be sde or sampler");
      break;
    case Command::StationarityTest: {
      if (c.n < 2) throw ValidationError("stationarity-test needs n >= 2");
      if (c.t && (!(*c.t >= 0.0) || !(*c.t < c.cfg.t_cap))) throw ValidationError("t must lie in [0, t_cap)");
      if (c.mirror && (c.control_kappa || c.control_rho)) {
        throw ValidationError("--mirror and the control parameters are exclusive");
      }
      if (c.control_kappa || c.control_rho) {
        const auto p = control_params(c);
        try {
          p.validate();
        } catch (const std::invalid_argument& e) {
          throw ValidationError(std::string("control: ") + e.what());
        }
        check_hitting(p, "control");
      }
      break;
    }
  }
}

RunOutcome execute(const ExperimentConfig& c) {
  validate(c);
  switch (c.command) {
    case Command::Simulate:
      return run_simulate(c);
    case Command::MomentsMc:
      return run_moments_mc(c);
    case Command::MomentsExact:
      return run_moments_exact(c);
    case Command::DensityTest:
      return run_density(c);
    case Command::StationarityTest:
      return run_stationarity(c);
    case Command::ReversibilityReport:
      return run_reversibility(c);
  }
  throw ValidationError("unknown command");
}

int run(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome outcome;
  try {
    outcome = execute(c);
  } catch (const ValidationError& e) {
    err << "slehull: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "slehull: " << e.what() << "\n";
    return 1;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (const auto& note : outcome.notes) err << "note: " << note << "\n";

  if (c.out.empty()) {
    out << outcome.report;
  } else {
    try {
      write_file(c.out, outcome.report);
      json manifest{{"tool", "slehull"},
                    {"version", kVersion},
                    {"schema", kSchema},
                    {"config", config_json(c)},
                    {"report", c.out},
                    {"format", c.format == Format::Csv ? "csv" : "json"},
                    {"compiler", __VERSION__},
                    {"test_passed", outcome.test_passed}};
      write_file(c.out + ".manifest.json", manifest.dump(2) + "\n");
      write_file(c.out + ".walltime", fmt::format("{:.6f}\n", seconds));
    } catch (const std::exception& e) {
      err << "slehull: " << e.what() << "\n";
      return 1;
    }
  }
  if (c.assert_pass && !outcome.test_passed) {
    err << "slehull: statistical test failed\n";
    return 3;
  }
  return 0;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and exact checks for stopped SLE_kappa(rho) hulls", "slehull"};
  app.set_config("--config", "", "Flat key = value config file; flags override it");
  app.require_subcommand(1);
  app.fallthrough();

  ExperimentConfig c;
  double dt_max = c.cfg.dt_max;
  double t = 0.0;
  double control_kappa = 0.0;
  double control_rho = 0.0;
  std::string format = "csv";

  app.add_option("--kappa", c.params.kappa, "SLE parameter kappa > 0")->capture_default_str();
  app.add_option("--rho", c.params.rho, "Force-point weight rho")->capture_default_str();
  app.add_option("--x", c.params.x, "Starting point of the driving function")->capture_default_str();
  app.add_option("--y", c.params.y, "Marked boundary point")->capture_default_str();
  auto* t_opt = app.add_option("--t", t, "Flow time (stationarity-test); default is the 0.1% tau quantile");
  app.add_option("--n", c.n, "Replicas / samples")->capture_default_str();
  app.add_option("--order", c.order, "Truncation order M")->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--out", c.out, "Report path; also writes PATH.manifest.json and PATH.walltime");
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_flag("--assert", c.assert_pass, "Exit 3 when the command's statistical test fails");
  app.add_option("--index", c.indices, "Moment index such as 1 or 0,2 (repeatable)");
  app.add_option("--max-degree", c.max_degree, "reversibility-report: all indices with N <= this")
      ->capture_default_str();
  app.add_option("--level", c.level, "Significance level of the tests")->capture_default_str();
  auto* dt_opt = app.add_option("--dt-max", dt_max, "Largest SDE step (inf allowed); density-test and the stationarity control default to inf");
  app.add_option("--step-factor", c.cfg.step_factor, "c in dt = c Z^2 / kappa")->capture_default_str();
  app.add_option("--eps-abs", c.cfg.eps_abs, "Absorption threshold on Z")->capture_default_str();
  app.add_option("--t-cap", c.cfg.t_cap, "Hard time cap per path")->capture_default_str();
  app.add_option("--source", c.source, "density-test samples: sde or sampler")->capture_default_str();
  auto* ck_opt = app.add_option("--control-kappa", control_kappa, "stationarity-test: kappa of the direct ensemble");
  auto* cr_opt = app.add_option("--control-rho", control_rho, "stationarity-test: rho of the direct ensemble");
  app.add_flag("--mirror", c.mirror, "stationarity-test: compare the frame against its mirror image");
  app.add_option("--path-out", c.path_out, "simulate: CSV dump of replica 0's driving path");

  for (const auto& e : kCommands) app.add_subcommand(e.name, e.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "slehull: " << e.what() << "\n";
    return 2;
  }

  try {
    c.command = parse_command(app.get_subcommands().front()->get_name());
  } catch (const ValidationError& e) {
    err << "slehull: " << e.what() << "\n";
    return 2;
  }
  c.format = format == "json" ? Format::Json : Format::Csv;
  if (dt_opt->count() > 0) {
    c.cfg.dt_max = dt_max;
    c.dt_max_given = true;
  }
  if (t_opt->count() > 0) c.t = t;
  if (ck_opt->count() > 0) c.control_kappa = control_kappa;
  if (cr_opt->count() > 0) c.control_rho = control_rho;
  return run(c, out, err);
}

}  // namespace slehull::cli
