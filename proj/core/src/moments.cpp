#include "slehull/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace slehull {

std::string HalfInteger::to_string() const {
  return is_integer() ? std::to_string(twice / 2) : std::to_string(twice) + "/2";
}

MomentIndex::MomentIndex(std::vector<unsigned> k) : k_(std::move(k)) {
  while (!k_.empty() && k_.back() == 0) k_.pop_back();
}

MomentIndex MomentIndex::parse(const std::string& text) {
  std::string body;
  for (char ch : text) {
    if (ch != '(' && ch != ')' && ch != ' ') body += ch;
  }
  if (body.empty()) throw std::invalid_argument("empty moment index");
  std::vector<unsigned> k;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("malformed moment index '" + text + "'");
    }
    k.push_back(static_cast<unsigned>(std::stoul(item)));
  }
  return MomentIndex(std::move(k));
}

std::string MomentIndex::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(k_[i]);
  }
  return out + ")";
}

double MomentIndex::monomial(std::span<const double> a) const {
  if (a.size() < k_.size()) throw std::invalid_argument("coefficient sample shorter than the moment index");
  double v = 1.0;
  for (std::size_t i = 0; i < k_.size(); ++i) {
    for (unsigned e = 0; e < k_[i]; ++e) v *= a[i];
  }
  return v;
}

Degrees degree(const MomentIndex& index) {
  long twice_n = 0;
  long twice_nt = 0;
  for (std::size_t i = 1; i <= index.length(); ++i) {
    twice_n += static_cast<long>(index.k(i)) * static_cast<long>(i + 1);
    twice_nt += static_cast<long>(index.k(i)) * (static_cast<long>(i) - 1);
  }
  return {HalfInteger{twice_n}, HalfInteger{twice_nt}};
}

double existence_threshold(const MomentIndex& index) {
  return 8.0 / (2.0 * degree(index).N.value() + 1.0);
}

bool moment_exists(HalfInteger N, double kappa, double rho) {
  if (N.twice <= 0) return true;
  return kappa * (static_cast<double>(N.twice) - 1.0) + 2.0 * rho + 4.0 < 0.0;
}

namespace {

void enumerate(std::vector<unsigned>& k, std::size_t i, long budget, long max_i, std::vector<MomentIndex>& out) {
  if (static_cast<long>(i) > max_i) {
    out.emplace_back(k);
    return;
  }
  const long cost = static_cast<long>(i) + 1;
  for (long e = 0; e * cost <= budget; ++e) {
    k[i - 1] = static_cast<unsigned>(e);
    enumerate(k, i + 1, budget - e * cost, max_i, out);
  }
  k[i - 1] = 0;
}

}  // namespace

std::vector<MomentIndex> indices_up_to_degree(HalfInteger max_degree) {
  std::vector<MomentIndex> out;
  if (max_degree.twice < 2) return out;
  const long max_i = max_degree.twice - 1;  // a_i alone has 2N = i + 1
  std::vector<unsigned> k(static_cast<std::size_t>(max_i), 0);
  enumerate(k, 1, max_degree.twice, max_i, out);
  std::erase_if(out, [](const MomentIndex& m) { return m.empty(); });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Drift of Pi = prod a_i^k_i.

template <class F>
std::vector<DriftTerm<F>> drift_terms(const DriftCoefficients<F>& dc, const MomentIndex& index) {
  const long n = static_cast<long>(index.length());
  std::map<MomentIndex, SigmaGraded<F>> acc;
  const auto exps = [&] { return std::vector<unsigned>(index.exponents()); };
  auto add = [&](std::vector<unsigned> target, const SigmaGraded<F>& coef) {
    if (coef.is_zero()) return;
    acc[MomentIndex(std::move(target))] += coef;
  };
  auto kf = [&](long i) { return static_cast<long>(index.k(static_cast<std::size_t>(i))); };

  // First order: sum_i k_i Pi_i (c_{i,0} + sum_{l=1..i} c_{i,l} a_l).
  for (long i = 1; i <= n; ++i) {
    const long ki = kf(i);
    if (ki == 0) continue;
    for (long l = 0; l <= i; ++l) {
      auto t = exps();
      t[static_cast<std::size_t>(i - 1)] -= 1;
      if (l >= 1) t[static_cast<std::size_t>(l - 1)] += 1;
      add(std::move(t), F(ki) * dc.c(i, l));
    }
  }

  // Second order: (1/2) sum_{i,j} k_i (k_j - delta_ij) Pi_{i,j} da_i da_j with
  // da_i da_j = sum_{p in {i-1,i}} sum_{q in {j-1,j}} d_{i,p} d_{j,q} a_p a_q dt.
  for (long i = 1; i <= n; ++i) {
    for (long j = 1; j <= n; ++j) {
      const long weight = kf(i) * (kf(j) - (i == j ? 1 : 0));
      if (weight == 0) continue;
      for (long p = i - 1; p <= i; ++p) {
        for (long q = j - 1; q <= j; ++q) {
          if (p < 1 || q < 1) continue;
          auto t = exps();
          t[static_cast<std::size_t>(i - 1)] -= 1;
          t[static_cast<std::size_t>(j - 1)] -= 1;
          t[static_cast<std::size_t>(p - 1)] += 1;
          t[static_cast<std::size_t>(q - 1)] += 1;
          add(std::move(t), F(ratio(weight, 2)) * dc.d_product(i, p, j, q));
        }
      }
    }
  }

  std::vector<DriftTerm<F>> out;
  const auto self = acc.find(index);
  out.push_back({index, self == acc.end() ? SigmaGraded<F>{} : self->second});
  for (auto& [target, coef] : acc) {
    if (target == index) continue;
    out.push_back({target, std::move(coef)});
  }
  return out;
}

template <class F>
SigmaGraded<F> MomentRecursion<F>::solve(const MomentIndex& index) {
  if (index.empty()) return {F(1), F(0)};
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(index); it != memo_.end()) return it->second;
  }
  const auto terms = drift_terms(dc_, index);
  const auto& lead = terms.front().coefficient;
  if (!is_zero(lead.odd)) throw std::logic_error("leading drift factor has a sigma-odd part");
  if (is_zero(lead.even)) {
    throw std::domain_error("moment recursion singular at " + index.to_string() + " (leading factor vanishes)");
  }
  SigmaGraded<F> rest;
  for (std::size_t t = 1; t < terms.size(); ++t) rest += terms[t].coefficient * solve(terms[t].target);
  const F scale = F(-1) / lead.even;
  SigmaGraded<F> value{scale * rest.even, scale * rest.odd};
  {
    std::unique_lock lock(mutex_);
    memo_.emplace(index, value);
  }
  return value;
}

template std::vector<DriftTerm<RationalFunction>> drift_terms(const DriftCoefficients<RationalFunction>&,
                                                              const MomentIndex&);
template std::vector<DriftTerm<Rational>> drift_terms(const DriftCoefficients<Rational>&, const MomentIndex&);
template class MomentRecursion<RationalFunction>;
template class MomentRecursion<Rational>;

DriftCoefficients<RationalFunction> symbolic_drift_coefficients() {
  const RationalFunction kappa(Polynomial::variable());
  return {kappa, kappa - RationalFunction(6)};
}

MomentSolver::MomentSolver() : MomentRecursion<RationalFunction>(symbolic_drift_coefficients()) {}

NumericMomentSolver::NumericMomentSolver(const Rational& kappa, const Rational& rho)
    : MomentRecursion<Rational>(DriftCoefficients<Rational>(kappa, rho)) {}

// ---------------------------------------------------------------------------
// Closed forms.

namespace {

Polynomial pole_product(long count) {
  Polynomial p(1);
  for (long j = 1; j <= count; ++j) p *= moment_pole(static_cast<int>(j));
  return p;
}

Rational exact(double v) { return Rational(v); }

Rational power(const Rational& base, long e) {
  Rational out(1);
  for (long i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

RationalFunction closed_form_a1n(unsigned n, double x, double y) {
  const Rational d = exact(x) - exact(y);
  const Rational top = power(Rational(2), n) * power(d, 2L * n);
  return RationalFunction(Polynomial(top), pole_product(n));
}

RationalFunction closed_form_a1n_a2m(unsigned n, unsigned m) {
  if (m % 2 != 0) throw std::invalid_argument("formula valid for m even only");
  mpz_class m_fact = 1;
  for (unsigned i = 2; i <= m; ++i) m_fact *= i;
  mpz_class half_fact = 1;
  for (unsigned i = 2; i <= m / 2; ++i) half_fact *= i;
  Rational fact_ratio(m_fact, half_fact);
  fact_ratio.canonicalize();
  const Rational coeff = power(Rational(2), 3L * n + 3L * m) * fact_ratio;
  Polynomial top(coeff);
  for (unsigned i = 0; i < m / 2; ++i) top *= Polynomial::linear(0, ratio(1, 6));
  return RationalFunction(top, pole_product(static_cast<long>(n) + 3L * m / 2));
}

RationalFunction moment_in_frame(const SigmaGradedRational& value, const MomentIndex& index, double x, double y) {
  if (x == y) throw std::invalid_argument("marked points must differ (x != y)");
  if (x + y != 0.0 && index.length() > 1) {
    throw std::invalid_argument("moments of a_k, k >= 2, are only mapped to frames with x + y = 0");
  }
  const int sigma = x > y ? 1 : -1;
  const Rational lambda = abs(exact(x) - exact(y)) / 2;
  return value.at(sigma) * RationalFunction(power(lambda, degree(index).N.twice));
}

bool denominator_divides_pole_product(const RationalFunction& value, long N) {
  return Polynomial::divmod(pole_product(N), value.denominator()).second.is_zero();
}

bool numerator_degree_within(const RationalFunction& value, HalfInteger Ntilde) {
  return 2L * value.numerator().degree() <= Ntilde.twice;
}

std::vector<ParityEntry> reversibility_parity_report(std::span<const MomentIndex> indices, MomentSolver& solver) {
  std::vector<ParityEntry> out;
  out.reserve(indices.size());
  for (const auto& index : indices) {
    const auto value = solver.solve(index);
    ParityEntry e;
    e.index = index;
    e.N = degree(index).N;
    e.half_integer = !e.N.is_integer();
    e.even_part_zero = value.even.is_zero();
    e.odd_part_zero = value.odd.is_zero();
    e.is_zero = e.even_part_zero && e.odd_part_zero;
    e.reversibility_violation = e.half_integer && !e.is_zero;
    e.grading_violation = e.half_integer ? !e.even_part_zero : !e.odd_part_zero;
    if (e.is_zero) {
      e.value = "0";
    } else if (e.half_integer) {
      e.value = "sigma * (" + value.odd.to_string() + ")";
    } else {
      e.value = value.even.to_string();
    }
    out.push_back(std::move(e));
  }
  return out;
}

McEstimate estimate_moment(std::span<const CoefficientState> samples, const MomentIndex& index, double kappa,
                           double rho) {
  MeanAccumulator acc;
  for (const auto& s : samples) {
    if (s.absorbed) acc.add(index.monomial(s.a));
  }
  const HalfInteger N = degree(index).N;
  const bool variance_finite = moment_exists(HalfInteger{2 * N.twice}, kappa, rho);
  return acc.estimate(!variance_finite);
}

}  // namespace slehull
