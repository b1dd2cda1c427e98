#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <utility>

namespace slehull {

struct McEstimate {
  std::size_t n = 0;
  double mean = 0.0;
  double se = 0.0;
  std::pair<double, double> ci95{0.0, 0.0};
  bool tail_warning = false;
};

/// Welford single-pass mean/variance. Single owner; combine partial results
/// from parallel workers with merge().
class MeanAccumulator {
 public:
  void add(double x);
  void merge(const MeanAccumulator& other);

  [[nodiscard]] std::size_t count() const { return n_; }
  [[nodiscard]] double mean() const { return mean_; }
  /// Unbiased sample variance; needs count() >= 2.
  [[nodiscard]] double variance() const;

  /// Throws std::invalid_argument when count() < 2.
  [[nodiscard]] McEstimate estimate(bool tail_warning = false) const;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

McEstimate mc_mean(std::span<const double> samples);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum_{k>=1} (-1)^(k-1) exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// One-sample KS against a continuous CDF. Samples may contain +inf.
KsResult ks_one_sample(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Two-sample KS with the effective size n_e = n m / (n + m).
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace slehull
