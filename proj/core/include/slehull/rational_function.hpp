#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace slehull {

using Rational = mpq_class;

/// p/q in lowest terms.
inline Rational ratio(long p, long q) {
  Rational r{mpz_class(p), mpz_class(q)};
  r.canonicalize();
  return r;
}

/// Dense univariate polynomial in kappa with exact rational coefficients.
/// coeffs()[i] multiplies kappa^i; trailing zeros are always trimmed, so the
/// zero polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& constant);  // NOLINT(google-explicit-constructor)
  Polynomial(int constant) : Polynomial(Rational(constant)) {}  // NOLINT(google-explicit-constructor)
  explicit Polynomial(std::vector<Rational> coeffs);

  /// kappa^1.
  static Polynomial variable();
  /// c0 + c1 kappa.
  static Polynomial linear(const Rational& c0, const Rational& c1);

  [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  [[nodiscard]] const std::vector<Rational>& coeffs() const { return coeffs_; }
  [[nodiscard]] Rational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  [[nodiscard]] Rational leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

  [[nodiscard]] Rational evaluate(const Rational& kappa) const;
  [[nodiscard]] double evaluate(double kappa) const;
  [[nodiscard]] Polynomial monic() const;

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  friend Polynomial operator-(Polynomial a);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division; throws std::domain_error on a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den);
  /// Monic gcd (zero when both inputs are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  /// Rendering with integer-looking rationals, e.g. "8 - 3*kappa".
  [[nodiscard]] std::string to_string(const std::string& var = "kappa") const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

/// Polynomial with integer coefficients (content cleared) plus the rational
/// scale that was factored out: p = scale * integer_part.
struct IntegerForm {
  Rational scale;
  Polynomial integer_part;
};
IntegerForm integer_form(const Polynomial& p);

/// numerator / denominator, kept coprime with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(1) {}
  RationalFunction(const Polynomial& p) : num_(p), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(const Rational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(int c) : RationalFunction(Polynomial(c)) {}  // NOLINT(google-explicit-constructor)
  RationalFunction(Polynomial num, Polynomial den);

  [[nodiscard]] const Polynomial& numerator() const { return num_; }
  [[nodiscard]] const Polynomial& denominator() const { return den_; }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }

  [[nodiscard]] Rational evaluate(const Rational& kappa) const;
  [[nodiscard]] double evaluate(double kappa) const;

  RationalFunction& operator+=(const RationalFunction& rhs);
  RationalFunction& operator-=(const RationalFunction& rhs);
  RationalFunction& operator*=(const RationalFunction& rhs);
  RationalFunction& operator/=(const RationalFunction& rhs);

  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  friend RationalFunction operator-(const RationalFunction& a) { return RationalFunction(-a.num_, a.den_); }
  /// Normalized forms are unique, so structural equality is mathematical equality.
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// `numerator / denominator` with integer coefficients, denominator's
  /// lowest-order coefficient positive, e.g. "8 / (8 - 3*kappa)".
  [[nodiscard]] std::string to_string(const std::string& var = "kappa") const;

  /// Same value with the denominator written as c * prod_j (8 - (2j+1) kappa)^e_j
  /// when it splits that way; std::nullopt otherwise.
  [[nodiscard]] std::optional<std::string> to_factored_string(const std::string& var = "kappa") const;

 private:
  void normalize();
  Polynomial num_;
  Polynomial den_;
};

/// 8 - (2j+1) kappa.
Polynomial moment_pole(int j);

}  // namespace slehull
