#include "slehull/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace slehull {

void MeanAccumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

// Chan et al. pairwise update.
void MeanAccumulator::merge(const MeanAccumulator& other) {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double MeanAccumulator::variance() const {
  if (n_ < 2) throw std::invalid_argument("variance needs at least two samples");
  return m2_ / static_cast<double>(n_ - 1);
}

McEstimate MeanAccumulator::estimate(bool tail_warning) const {
  if (n_ < 2) throw std::invalid_argument("mc_mean needs at least two samples");
  McEstimate e;
  e.n = n_;
  e.mean = mean_;
  e.se = std::sqrt(variance() / static_cast<double>(n_));
  e.ci95 = {mean_ - 1.96 * e.se, mean_ + 1.96 * e.se};
  e.tail_warning = tail_warning;
  return e;
}

McEstimate mc_mean(std::span<const double> samples) {
  MeanAccumulator acc;
  for (double x : samples) acc.add(x);
  return acc.estimate();
}

double kolmogorov_q(double lambda) {
  if (lambda <= 0.0) return 1.0;
  // Small lambda: the alternating series converges slowly; use the theta-function form.
  if (lambda < 1.18) {
    const double y = std::exp(-M_PI * M_PI / (8.0 * lambda * lambda));
    double sum = 0.0;
    for (int k = 1; k <= 15; k += 2) sum += std::pow(y, k * k);
    return std::clamp(1.0 - std::sqrt(2.0 * M_PI) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += sign * term;
    if (term < 1e-17) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

// Numerical Recipes finite-size correction of the asymptotic distribution.
double ks_p_value(double d, double effective_n) {
  const double root = std::sqrt(effective_n);
  return kolmogorov_q((root + 0.12 + 0.11 / root) * d);
}

}  // namespace

KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = std::isinf(sorted[i]) && sorted[i] > 0 ? 1.0 : cdf(sorted[i]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    d = std::max({d, hi - f, f - lo});
  }
  return {d, ks_p_value(d, n)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::vector<double> sa(a.begin(), a.end());
  std::vector<double> sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == v) ++i;
    while (j < sb.size() && sb[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, ks_p_value(d, na * nb / (na + nb))};
}

}  // namespace slehull
