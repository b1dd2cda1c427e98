#include "slehull/rational_function.hpp"

#include <stdexcept>

namespace slehull {

namespace {

Polynomial scaled(const Polynomial& p, const Rational& s) {
  std::vector<Rational> c = p.coeffs();
  for (auto& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::string term_string(const Rational& c, std::size_t power, const std::string& var, bool first) {
  std::string out;
  Rational mag = abs(c);
  if (first) {
    if (sgn(c) < 0) out += "-";
  } else {
    out += sgn(c) < 0 ? " - " : " + ";
  }
  if (power == 0) return out + mag.get_str();
  if (mag != 1) out += mag.get_str() + "*";
  out += var;
  if (power > 1) out += "^" + std::to_string(power);
  return out;
}

bool is_single_term(const Polynomial& p) {
  int nonzero = 0;
  for (const auto& c : p.coeffs()) nonzero += sgn(c) != 0;
  return nonzero <= 1;
}

std::string wrap(const Polynomial& p, const std::string& var) {
  const auto s = p.to_string(var);
  return is_single_term(p) ? s : "(" + s + ")";
}

Rational lowest_nonzero(const Polynomial& p) {
  for (const auto& c : p.coeffs()) {
    if (sgn(c) != 0) return c;
  }
  return Rational(0);
}

}  // namespace

Polynomial::Polynomial(const Rational& constant) {
  if (sgn(constant) != 0) coeffs_.push_back(constant);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::variable() { return Polynomial(std::vector<Rational>{0, 1}); }

Polynomial Polynomial::linear(const Rational& c0, const Rational& c1) {
  return Polynomial(std::vector<Rational>{c0, c1});
}

void Polynomial::trim() {
  while (!coeffs_.empty() && sgn(coeffs_.back()) == 0) coeffs_.pop_back();
}

Rational Polynomial::evaluate(const Rational& kappa) const {
  Rational acc(0);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * kappa + *it;
  return acc;
}

double Polynomial::evaluate(double kappa) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * kappa + it->get_d();
  return acc;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(*this, Rational(1) / leading());
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  if (is_zero() || rhs.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<Rational> out(coeffs_.size() + rhs.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  }
  coeffs_ = std::move(out);
  trim();
  return *this;
}

Polynomial operator-(Polynomial a) {
  for (auto& c : a.coeffs_) c = -c;
  return a;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& num, const Polynomial& den) {
  if (den.is_zero()) throw std::domain_error("polynomial division by zero");
  if (num.degree() < den.degree()) return {Polynomial(), num};
  std::vector<Rational> rem = num.coeffs_;
  std::vector<Rational> quot(num.coeffs_.size() - den.coeffs_.size() + 1, Rational(0));
  const Rational lead = den.leading();
  const std::size_t dd = den.coeffs_.size() - 1;
  for (std::size_t k = quot.size(); k-- > 0;) {
    const Rational q = rem[k + dd] / lead;
    quot[k] = q;
    if (sgn(q) == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) rem[k + i] -= q * den.coeffs_[i];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (sgn(coeffs_[i]) == 0) continue;
    out += term_string(coeffs_[i], i, var, first);
    first = false;
  }
  return out;
}

IntegerForm integer_form(const Polynomial& p) {
  if (p.is_zero()) return {Rational(1), p};
  mpz_class lcm_den = 1;
  for (const auto& c : p.coeffs()) lcm_den = lcm(lcm_den, mpz_class(c.get_den()));
  mpz_class content = 0;
  for (const auto& c : p.coeffs()) content = gcd(content, mpz_class(c.get_num() * (lcm_den / c.get_den())));
  Rational scale(content, lcm_den);
  scale.canonicalize();
  return {scale, scaled(p, Rational(1) / scale)};
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  const auto g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Polynomial::divmod(num_, g).first;
    den_ = Polynomial::divmod(den_, g).first;
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    num_ = scaled(num_, Rational(1) / lead);
    den_ = scaled(den_, Rational(1) / lead);
  }
}

Rational RationalFunction::evaluate(const Rational& kappa) const {
  const Rational d = den_.evaluate(kappa);
  if (sgn(d) == 0) throw std::domain_error("rational function evaluated at a pole");
  return num_.evaluate(kappa) / d;
}

double RationalFunction::evaluate(double kappa) const { return num_.evaluate(kappa) / den_.evaluate(kappa); }

RationalFunction& RationalFunction::operator+=(const RationalFunction& rhs) {
  if (den_ == rhs.den_) {
    num_ += rhs.num_;
  } else {
    num_ = num_ * rhs.den_ + rhs.num_ * den_;
    den_ *= rhs.den_;
  }
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& rhs) { return *this += -rhs; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& rhs) {
  if (rhs.is_zero()) throw std::domain_error("division by the zero rational function");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

namespace {

// p/q with integer-coefficient numerator and denominator, denominator's
// lowest-order coefficient positive.
std::pair<Polynomial, Polynomial> integer_pair(const Polynomial& num, const Polynomial& den) {
  const auto n = integer_form(num);
  const auto d = integer_form(den);
  const Rational r = n.scale / d.scale;
  Polynomial top = scaled(n.integer_part, Rational(r.get_num()));
  Polynomial bottom = scaled(d.integer_part, Rational(r.get_den()));
  if (sgn(lowest_nonzero(bottom)) < 0) {
    top = -top;
    bottom = -bottom;
  }
  return {top, bottom};
}

}  // namespace

std::string RationalFunction::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  const auto [top, bottom] = integer_pair(num_, den_);
  if (bottom.degree() == 0 && bottom.leading() == 1) return top.to_string(var);
  return wrap(top, var) + " / " + wrap(bottom, var);
}

std::optional<std::string> RationalFunction::to_factored_string(const std::string& var) const {
  if (is_zero() || den_.degree() <= 0) return to_string(var);
  auto [top, rest] = integer_pair(num_, den_);
  std::string factors;
  int pieces = 0;
  for (int j = 1; rest.degree() > 0 && j <= 4 * den_.degree() + 64; ++j) {
    const auto pole = moment_pole(j);
    int exponent = 0;
    while (rest.degree() > 0) {
      auto [q, r] = Polynomial::divmod(rest, pole);
      if (!r.is_zero()) break;
      rest = std::move(q);
      ++exponent;
    }
    if (exponent == 0) continue;
    factors += "*(" + pole.to_string(var) + ")";
    if (exponent > 1) factors += "^" + std::to_string(exponent);
    ++pieces;
  }
  if (rest.degree() != 0) return std::nullopt;
  Rational c = rest.leading();
  if (sgn(c) < 0) {
    c = -c;
    top = -top;
  }
  if (c.get_den() != 1) {
    top = scaled(top, Rational(c.get_den()));
    c = Rational(c.get_num());
  }
  std::string den_str = factors.substr(1);
  if (c != 1) {
    den_str = c.get_str() + factors;
    ++pieces;
  }
  if (pieces > 1) den_str = "(" + den_str + ")";
  return wrap(top, var) + " / " + den_str;
}

Polynomial moment_pole(int j) { return Polynomial::linear(8, -(2 * j + 1)); }

}  // namespace slehull
