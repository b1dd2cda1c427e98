#pragma once

// Exact moments E[prod a_i^k_i] of the stopped Loewner coefficients, solved
// from the requirement that the drift of the monomial vanishes under the
// stationary flow. Values live in the normalized frame x = sigma, y = -sigma
// and are returned as A + sigma B.

#include <cstddef>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slehull/loewner.hpp"
#include "slehull/rational_function.hpp"
#include "slehull/stats.hpp"

namespace slehull {

/// n/2 for integer n.
struct HalfInteger {
  long twice = 0;

  [[nodiscard]] bool is_integer() const { return twice % 2 == 0; }
  [[nodiscard]] double value() const { return static_cast<double>(twice) / 2.0; }
  [[nodiscard]] Rational exact() const { return ratio(twice, 2); }
  [[nodiscard]] std::string to_string() const;
  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
};

/// Exponent vector (k_1, ..., k_n) of prod a_i^k_i. Trailing zeros are
/// dropped, so (1, 0) and (1) are the same index.
class MomentIndex {
 public:
  MomentIndex() = default;
  explicit MomentIndex(std::vector<unsigned> k);

  /// "0,2" or "(0,2)".
  static MomentIndex parse(const std::string& text);

  /// k_i for 1-based i; 0 beyond the stored length.
  [[nodiscard]] unsigned k(std::size_t i) const { return i >= 1 && i <= k_.size() ? k_[i - 1] : 0; }
  [[nodiscard]] std::size_t length() const { return k_.size(); }
  [[nodiscard]] const std::vector<unsigned>& exponents() const { return k_; }
  [[nodiscard]] bool empty() const { return k_.empty(); }

  /// "(0,2)".
  [[nodiscard]] std::string to_string() const;

  /// prod a_i^k_i for coefficient samples a_1..a_M (M >= length()).
  [[nodiscard]] double monomial(std::span<const double> a) const;

  friend auto operator<=>(const MomentIndex&, const MomentIndex&) = default;

 private:
  std::vector<unsigned> k_;
};

struct Degrees {
  HalfInteger N;       // (1/2) sum k_i (i+1)
  HalfInteger Ntilde;  // (1/2) sum k_i (i-1)
};

Degrees degree(const MomentIndex& index);

/// 8/(2N+1): the moment exists for kappa in (0, 8/(2N+1)) when rho = kappa - 6.
double existence_threshold(const MomentIndex& index);

/// Moment of degree N exists iff the leading recursion factor stays negative
/// for every degree up to N: kappa (2N - 1) + 2 rho + 4 < 0.
bool moment_exists(HalfInteger N, double kappa, double rho);

/// Every index with degree N <= max_degree, in lexicographic order.
std::vector<MomentIndex> indices_up_to_degree(HalfInteger max_degree);

inline bool is_zero(const Rational& v) { return sgn(v) == 0; }
inline bool is_zero(const RationalFunction& v) { return v.is_zero(); }

/// A + sigma B with sigma in {-1, +1}.
template <class F>
struct SigmaGraded {
  F even{};
  F odd{};

  [[nodiscard]] F at(int sigma) const { return sigma > 0 ? F(even + odd) : F(even - odd); }
  [[nodiscard]] bool is_zero() const { return slehull::is_zero(even) && slehull::is_zero(odd); }

  SigmaGraded& operator+=(const SigmaGraded& o) {
    even += o.even;
    odd += o.odd;
    return *this;
  }
  friend SigmaGraded operator+(SigmaGraded a, const SigmaGraded& b) { return a += b; }
  // sigma^2 = 1.
  friend SigmaGraded operator*(const SigmaGraded& a, const SigmaGraded& b) {
    return {a.even * b.even + a.odd * b.odd, a.even * b.odd + a.odd * b.even};
  }
  friend SigmaGraded operator*(const F& s, const SigmaGraded& b) { return {s * b.even, s * b.odd}; }
  friend bool operator==(const SigmaGraded& a, const SigmaGraded& b) { return a.even == b.even && a.odd == b.odd; }
};

using SigmaGradedRational = SigmaGraded<RationalFunction>;

/// c_{n,k} and d_{n,k} of da_n = (c_{n,0} + sum_k c_{n,k} a_k) dt
/// + (d_{n,n-1} a_{n-1} + d_{n,n} a_n) dB at t = 0 in the frame x = sigma,
/// y = -sigma. d carries a sqrt(kappa) that is only exposed through products.
template <class F>
class DriftCoefficients {
 public:
  DriftCoefficients(F kappa, F rho) : kappa_(std::move(kappa)), rho_(std::move(rho)) {}

  [[nodiscard]] const F& kappa() const { return kappa_; }
  [[nodiscard]] const F& rho() const { return rho_; }

  /// c_{n,k} for 0 <= k <= n, zero otherwise.
  [[nodiscard]] SigmaGraded<F> c(long n, long k) const {
    if (n < 1 || k < 0 || k > n) return {};
    if (k == n) return even(F(ratio(n + 1, 8)) * (kappa_ * F(n) + F(2) * rho_ + F(4)));
    // The constant term comes from dg alone; it takes precedence for n <= 2.
    if (k == 0) return sigma_power(n + 1, F(2));
    if (k == n - 1) return odd(F(ratio(n - 1, 4)) * (kappa_ * F(n) + rho_ - F(2)));
    if (k == n - 2) return even(F(ratio(n - 2, 8)) * (kappa_ * F(n - 1) - F(16)));
    return sigma_power(n - k, F(-2 * k));
  }

  /// d_{n,k} / sqrt(kappa), nonzero for k in {n-1, n}.
  [[nodiscard]] SigmaGraded<Rational> d_unit(long n, long k) const {
    if (n < 1) return {};
    if (k == n) return {Rational(0), ratio(n + 1, 2)};
    if (k == n - 1) return {ratio(n - 1, 2), Rational(0)};
    return {};
  }

  /// d_{n,k} d_{m,l}, polynomial in kappa.
  [[nodiscard]] SigmaGraded<F> d_product(long n, long k, long m, long l) const {
    const auto p = d_unit(n, k) * d_unit(m, l);
    return {kappa_ * F(p.even), kappa_ * F(p.odd)};
  }

 private:
  static SigmaGraded<F> even(F v) { return {std::move(v), F(0)}; }
  static SigmaGraded<F> odd(F v) { return {F(0), std::move(v)}; }
  static SigmaGraded<F> sigma_power(long e, F v) { return e % 2 == 0 ? even(std::move(v)) : odd(std::move(v)); }

  F kappa_;
  F rho_;
};

/// One term of the drift of Pi: coefficient times E[target monomial].
template <class F>
struct DriftTerm {
  MomentIndex target;
  SigmaGraded<F> coefficient;
};

/// Drift of Pi(k) by Ito's formula:
///   sum_i k_i Pi_i da_i + (1/2) sum_{i,j} k_i (k_j - delta_ij) Pi_{i,j} da_i da_j,
/// collected by monomial. The first entry always targets Pi itself.
template <class F>
std::vector<DriftTerm<F>> drift_terms(const DriftCoefficients<F>& dc, const MomentIndex& index);

/// Memoized solver of the recursion over a field F (RationalFunction for the
/// symbolic rho = kappa - 6 mode, Rational for numeric (kappa, rho) pairs).
/// Concurrent solve() calls are safe; racing inserts store identical values.
template <class F>
class MomentRecursion {
 public:
  explicit MomentRecursion(DriftCoefficients<F> dc) : dc_(std::move(dc)) {}

  SigmaGraded<F> solve(const MomentIndex& index);

  [[nodiscard]] const DriftCoefficients<F>& coefficients() const { return dc_; }
  [[nodiscard]] std::size_t memo_size() const {
    std::shared_lock lock(mutex_);
    return memo_.size();
  }

 private:
  DriftCoefficients<F> dc_;
  mutable std::shared_mutex mutex_;
  std::map<MomentIndex, SigmaGraded<F>> memo_;
};

extern template class MomentRecursion<RationalFunction>;
extern template class MomentRecursion<Rational>;

/// rho = kappa - 6, exact rational functions of kappa.
class MomentSolver : public MomentRecursion<RationalFunction> {
 public:
  MomentSolver();
};

/// The same recursion evaluated at one exact (kappa, rho) pair.
class NumericMomentSolver : public MomentRecursion<Rational> {
 public:
  NumericMomentSolver(const Rational& kappa, const Rational& rho);
};

/// Drift coefficients for the symbolic mode.
DriftCoefficients<RationalFunction> symbolic_drift_coefficients();

/// 2^n (x - y)^(2n) / prod_{j=1..n} (8 - (2j+1) kappa).
RationalFunction closed_form_a1n(unsigned n, double x, double y);

/// 2^(3n+3m) (kappa/6)^(m/2) m!/(m/2)! / prod_{j=1..n+3m/2} (8 - (2j+1) kappa),
/// normalized frame. Throws std::invalid_argument for odd m.
/// The power of two is 2^(3n), not 2^(2n): at m = 0 this has to reduce to
/// E[a_1^n] = 8^n / prod (8 - (2j+1) kappa).
RationalFunction closed_form_a1n_a2m(unsigned n, unsigned m);

/// Moment for general marked points from its normalized-frame value: sigma =
/// sign(x - y), scale by ((x - y)/2)^(2N). Only valid for x + y = 0 unless
/// the index involves a_1 alone (a_1 is translation invariant); throws
/// std::invalid_argument otherwise.
RationalFunction moment_in_frame(const SigmaGradedRational& value, const MomentIndex& index, double x, double y);

/// prod_{j=1..N} (8 - (2j+1) kappa) is divisible by value's denominator.
bool denominator_divides_pole_product(const RationalFunction& value, long N);

/// deg(numerator) <= Ntilde, the conjectured numerator bound.
bool numerator_degree_within(const RationalFunction& value, HalfInteger Ntilde);

struct ParityEntry {
  MomentIndex index;
  HalfInteger N;
  bool half_integer = false;
  bool is_zero = false;
  bool even_part_zero = false;
  bool odd_part_zero = false;
  /// Half-integer degree with a nonzero value: a reversibility-violating prediction.
  bool reversibility_violation = false;
  /// Integer degree with a nonzero odd part, or half-integer with nonzero even part.
  bool grading_violation = false;
  std::string value;
};

std::vector<ParityEntry> reversibility_parity_report(std::span<const MomentIndex> indices, MomentSolver& solver);

/// Sample mean of prod a_i^k_i over absorbed replicas. tail_warning is set
/// when the second moment (degree 2N) does not exist at (kappa, rho), so the
/// standard error is not meaningful.
McEstimate estimate_moment(std::span<const CoefficientState> samples, const MomentIndex& index, double kappa,
                           double rho);

}  // namespace slehull
