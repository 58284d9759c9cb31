#include "lrf/stats.hpp"

#include <algorithm>
#include <cmath>

#include "lrf/errors.hpp"

namespace lrf {
namespace {

// Two-sided 97.5% Student t quantiles for small df; 1.96 beyond.
double t_quantile_975(std::size_t df) {
  static const double table[] = {0,     12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365,
                                 2.306, 2.262,  2.228, 2.201, 2.179, 2.160, 2.145, 2.131,
                                 2.120, 2.110,  2.101, 2.093, 2.086, 2.080, 2.074, 2.069,
                                 2.064, 2.060,  2.056, 2.052, 2.048, 2.045, 2.042};
  if (df == 0) return 0.0;
  if (df <= 30) return table[df];
  return 1.96;
}

}  // namespace

void MomentAccumulator::add(double x) {
  // One-pass update (Pebay's formulas for central moments).
  const double n1 = static_cast<double>(count);
  ++count;
  const double n = static_cast<double>(count);
  const double delta = x - mean;
  const double dn = delta / n;
  const double dn2 = dn * dn;
  const double term1 = delta * dn * n1;
  mean += dn;
  m4 += term1 * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
  m3 += term1 * dn * (n - 2.0) - 3.0 * dn * m2;
  m2 += term1;
}

void MomentAccumulator::merge(const MomentAccumulator& o) {
  if (o.count == 0) return;
  if (count == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
  const double n = na + nb;
  const double delta = o.mean - mean;
  const double d2 = delta * delta;
  const double new_m2 = m2 + o.m2 + d2 * na * nb / n;
  const double new_m3 = m3 + o.m3 + d2 * delta * na * nb * (na - nb) / (n * n) +
                        3.0 * delta * (na * o.m2 - nb * m2) / n;
  const double new_m4 =
      m4 + o.m4 +
      d2 * d2 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n) +
      6.0 * d2 * (na * na * o.m2 + nb * nb * m2) / (n * n) +
      4.0 * delta * (na * o.m3 - nb * m3) / n;
  mean += delta * nb / n;
  m2 = new_m2;
  m3 = new_m3;
  m4 = new_m4;
  count += o.count;
}

double MomentAccumulator::variance() const {
  if (count < 2) return 0.0;
  return m2 / static_cast<double>(count - 1);
}

double MomentAccumulator::stderr_of_mean() const {
  if (count < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(count));
}

double MomentAccumulator::skewness() const {
  if (count < 3 || m2 <= 0.0) return 0.0;
  const double n = static_cast<double>(count);
  return std::sqrt(n) * m3 / std::pow(m2, 1.5);
}

double MomentAccumulator::excess_kurtosis() const {
  if (count < 4 || m2 <= 0.0) return 0.0;
  const double n = static_cast<double>(count);
  return n * m4 / (m2 * m2) - 3.0;
}

double MomentAccumulator::variance_stderr() const {
  if (count < 2) return 0.0;
  return variance() * std::sqrt(2.0 / static_cast<double>(count - 1));
}

MomentAccumulator accumulate(const std::vector<double>& xs) {
  MomentAccumulator acc;
  for (double x : xs) acc.add(x);
  return acc;
}

Regression linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw ValidationError("linear_fit: need at least 3 paired points");
  const std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw ValidationError("linear_fit: degenerate abscissae");
  Regression reg;
  reg.slope = sxy / sxx;
  reg.intercept = my - reg.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = y[i] - (reg.intercept + reg.slope * x[i]);
    sse += e * e;
  }
  reg.r2 = (syy > 0.0) ? 1.0 - sse / syy : 1.0;
  if (n > 2) {
    const double mse = sse / static_cast<double>(n - 2);
    reg.slope_stderr = std::sqrt(mse / sxx);
    const double t = t_quantile_975(n - 2);
    reg.slope_ci_low = reg.slope - t * reg.slope_stderr;
    reg.slope_ci_high = reg.slope + t * reg.slope_stderr;
  }
  return reg;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ValidationError("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= v) ++i;
    while (j < b.size() && b[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_critical_5pct(std::size_t n, std::size_t m) {
  return 1.358 * std::sqrt(static_cast<double>(n + m) /
                           (static_cast<double>(n) * static_cast<double>(m)));
}

double pearson_correlation(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw ValidationError("pearson_correlation: need paired samples");
  const std::size_t n = a.size();
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0, sbb = 0, sab = 0;
  for (std::size_t i = 0; i < n; ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  if (saa <= 0.0 || sbb <= 0.0)
    throw ValidationError("pearson_correlation: degenerate (zero-variance) sample");
  return sab / std::sqrt(saa * sbb);
}

}  // namespace lrf
