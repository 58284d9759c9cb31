#pragma once

#include <cstddef>
#include <vector>

namespace lrf {

// Streaming (count, mean, M2..M4) accumulator with order-insensitive
// merge; replicate aggregation uses this.
struct MomentAccumulator {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;

  void add(double x);
  void merge(const MomentAccumulator& other);

  double variance() const;  // unbiased
  double stderr_of_mean() const;
  double skewness() const;
  double excess_kurtosis() const;
  // Standard error of the sample variance under approximate normality.
  double variance_stderr() const;
};

MomentAccumulator accumulate(const std::vector<double>& xs);

struct Regression {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double slope_ci_low = 0.0;   // 95%
  double slope_ci_high = 0.0;
  double r2 = 0.0;
};

// Ordinary least squares of y on x with a 95% t-interval on the slope.
Regression linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Two-sample Kolmogorov-Smirnov distance.
double ks_distance(std::vector<double> a, std::vector<double> b);

// 5% two-sample critical value 1.358 sqrt((n + m) / (n m)).
double ks_critical_5pct(std::size_t n, std::size_t m);

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace lrf
