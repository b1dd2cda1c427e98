#pragma once

// Truncated expansions at infinity in the variable w = 1/z.
//
//   affine:    z + c_0 + c_1 z^-1 + ... + c_M z^-M
//   pure tail:     c_0 + c_1 z^-1 + ... + c_M z^-M
//
// Everything is generic over the scalar so the same algebra runs on exact
// rationals (mpq_class) and on doubles.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slehull {

/// Largest truncation order any caller may request.
inline constexpr std::size_t kMaxOrder = 32;
inline constexpr std::size_t kDefaultOrder = 8;

enum class Lead { Affine, PureTail };

template <class Scalar>
class TailSeries {
 public:
  TailSeries(Lead lead, std::size_t order) : lead_(lead), constant_(0), tail_(order, Scalar(0)) {
    check_order(order);
  }

  TailSeries(Lead lead, Scalar constant, std::vector<Scalar> tail)
      : lead_(lead), constant_(std::move(constant)), tail_(std::move(tail)) {
    check_order(tail_.size());
  }

  /// g(z) = z, the identity map.
  static TailSeries identity(std::size_t order) { return TailSeries(Lead::Affine, order); }

  /// z + sum_j tail[j-1] z^-j.
  static TailSeries affine(std::vector<Scalar> tail) {
    return TailSeries(Lead::Affine, Scalar(0), std::move(tail));
  }

  [[nodiscard]] Lead lead() const { return lead_; }
  [[nodiscard]] std::size_t order() const { return tail_.size(); }
  [[nodiscard]] const Scalar& constant() const { return constant_; }

  /// Coefficient of z^-j, 1 <= j <= order().
  [[nodiscard]] const Scalar& operator[](std::size_t j) const { return tail_.at(j - 1); }
  [[nodiscard]] std::span<const Scalar> tail() const { return tail_; }

  /// Same series with the constant term shifted by `delta`.
  [[nodiscard]] TailSeries shifted(const Scalar& delta) const {
    TailSeries out = *this;
    out.constant_ = constant_ + delta;
    return out;
  }

 private:
  static void check_order(std::size_t order) {
    if (order == 0) throw std::invalid_argument("empty truncation");
    if (order > kMaxOrder) throw std::invalid_argument("truncation order exceeds kMaxOrder");
  }

  Lead lead_;
  Scalar constant_;
  std::vector<Scalar> tail_;
};

namespace series_detail {

// Power series in w with u[0] == 1. Writes the first out.size() coefficients
// of 1/u into out.
template <class Scalar>
void invert_unit(std::span<const Scalar> u, std::span<Scalar> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    Scalar acc(k == 0 ? 1 : 0);
    for (std::size_t i = 1; i <= k && i < u.size(); ++i) acc -= u[i] * out[k - i];
    out[k] = acc;
  }
}

// J.C.P. Miller recurrence for u^p with u[0] == 1 and integer p:
//   q_0 = 1,  q_k = (1/k) sum_{i=1..k} ((p+1) i - k) u_i q_{k-i}.
template <class Scalar>
void power_unit(std::span<const Scalar> u, long p, std::span<Scalar> out) {
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k == 0) {
      out[0] = Scalar(1);
      continue;
    }
    Scalar acc(0);
    const long kk = static_cast<long>(k);
    for (std::size_t i = 1; i <= k && i < u.size(); ++i) {
      const long weight = (p + 1) * static_cast<long>(i) - kk;
      acc += Scalar(weight) * u[i] * out[k - i];
    }
    out[k] = acc / Scalar(kk);
  }
}

// Unit series u(w) with h = w^-1 u(w) for an affine h; entries 0..len-1.
template <class Scalar>
std::vector<Scalar> affine_unit(const TailSeries<Scalar>& h, std::size_t len) {
  std::vector<Scalar> u(len, Scalar(0));
  if (len > 0) u[0] = Scalar(1);
  if (len > 1) u[1] = h.constant();
  for (std::size_t j = 1; j + 1 < len && j <= h.order(); ++j) u[j + 1] = h[j];
  return u;
}

template <class Scalar>
void require_affine(const TailSeries<Scalar>& h) {
  if (h.lead() != Lead::Affine) throw std::invalid_argument("expected an affine series (leading term z)");
}

template <class Scalar>
void require_order(const TailSeries<Scalar>& h, std::size_t order) {
  if (order == 0) throw std::invalid_argument("empty truncation");
  if (order > h.order()) throw std::invalid_argument("requested order exceeds the input truncation");
}

}  // namespace series_detail

/// 1/h for affine h, as a pure tail starting at z^-1, exact through z^-order.
template <class Scalar>
TailSeries<Scalar> tail_reciprocal(const TailSeries<Scalar>& h, std::size_t order) {
  series_detail::require_affine(h);
  series_detail::require_order(h, order);
  const auto u = series_detail::affine_unit(h, order);
  std::vector<Scalar> v(order, Scalar(0));
  series_detail::invert_unit<Scalar>(u, v);
  // 1/h = w * v(w): coefficient of z^-j is v_{j-1}.
  return TailSeries<Scalar>(Lead::PureTail, Scalar(0), std::move(v));
}

/// 1/(g - beta)^n for affine g, as a pure tail starting at z^-n.
template <class Scalar>
TailSeries<Scalar> shifted_power_tail(const TailSeries<Scalar>& g, const Scalar& beta, unsigned n,
                                      std::size_t order) {
  if (n == 0) throw std::invalid_argument("shifted_power_tail needs n >= 1");
  series_detail::require_affine(g);
  series_detail::require_order(g, order);
  std::vector<Scalar> tail(order, Scalar(0));
  if (n <= order) {
    const std::size_t len = order - n + 1;
    const auto u = series_detail::affine_unit(g.shifted(-beta), len);
    std::vector<Scalar> q(len, Scalar(0));
    series_detail::power_unit<Scalar>(u, -static_cast<long>(n), q);
    for (std::size_t k = 0; k < len; ++k) tail[n - 1 + k] = q[k];
  }
  return TailSeries<Scalar>(Lead::PureTail, Scalar(0), std::move(tail));
}

/// Product of two pure tails, truncated at `order`.
template <class Scalar>
TailSeries<Scalar> multiply(const TailSeries<Scalar>& a, const TailSeries<Scalar>& b, std::size_t order) {
  if (a.lead() != Lead::PureTail || b.lead() != Lead::PureTail) {
    throw std::invalid_argument("multiply expects pure-tail series");
  }
  series_detail::require_order(a, order);
  series_detail::require_order(b, order);
  auto coeff = [](const TailSeries<Scalar>& s, std::size_t j) -> const Scalar& {
    return j == 0 ? s.constant() : s[j];
  };
  std::vector<Scalar> out(order + 1, Scalar(0));
  for (std::size_t i = 0; i <= order; ++i) {
    for (std::size_t j = 0; i + j <= order; ++j) out[i + j] += coeff(a, i) * coeff(b, j);
  }
  Scalar constant = out[0];
  out.erase(out.begin());
  return TailSeries<Scalar>(Lead::PureTail, std::move(constant), std::move(out));
}

/// Coefficients of G = phi o Gt o phi^-1 o g with phi(z) = alpha z + beta and
/// Gt(z) = z + sum_n atilde_n z^-n:
///   G = g + sum_{n>=1} atilde_n alpha^(n+1) / (g - beta)^n.
template <class Scalar>
TailSeries<Scalar> assemble_G(const TailSeries<Scalar>& g, std::span<const Scalar> atilde, const Scalar& alpha,
                              const Scalar& beta, std::size_t order) {
  if (!(alpha > Scalar(0))) throw std::invalid_argument("degenerate scaling");
  series_detail::require_affine(g);
  series_detail::require_order(g, order);
  if (atilde.size() < order) throw std::invalid_argument("atilde shorter than the truncation order");

  std::vector<Scalar> tail(g.tail().begin(), g.tail().begin() + static_cast<std::ptrdiff_t>(order));

  // (g - beta)^-n = w^n u^-n; build u^-1 once and raise by repeated products
  // so the whole sum costs O(order^3).
  const auto u = series_detail::affine_unit(g.shifted(-beta), order);
  std::vector<Scalar> inv(order, Scalar(0));
  series_detail::invert_unit<Scalar>(u, inv);
  std::vector<Scalar> pw = inv;  // u^-n, starting at n = 1
  Scalar alpha_pow = alpha;      // alpha^(n+1), starting at n = 1
  for (unsigned n = 1; n <= order; ++n) {
    alpha_pow *= alpha;
    const Scalar weight = atilde[n - 1] * alpha_pow;
    for (std::size_t k = 0; n + k <= order; ++k) tail[n - 1 + k] += weight * pw[k];
    if (n == order) break;
    std::vector<Scalar> next(order, Scalar(0));
    for (std::size_t i = 0; i < order; ++i) {
      for (std::size_t j = 0; i + j < order; ++j) next[i + j] += pw[i] * inv[j];
    }
    pw = std::move(next);
  }
  return TailSeries<Scalar>(Lead::Affine, g.constant(), std::move(tail));
}

}  // namespace slehull
