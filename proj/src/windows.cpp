#include "lrf/windows.hpp"

#include <cmath>

#include "lrf/errors.hpp"

namespace lrf {
namespace {

constexpr double kPi = 3.14159265358979323846;

double sinc(double z) {
  if (std::abs(z) < 1e-8) return 1.0 - z * z / 6.0;
  return std::sin(z) / z;
}

}  // namespace

Window Window::interval(double a, double b) {
  if (a < 0.0 || b < 0.0 || a + b <= 0.0)
    throw ValidationError("Window::interval: need a, b >= 0 with a + b > 0");
  Window w;
  w.kind = Kind::interval;
  w.n = 1;
  w.a = a;
  w.b = b;
  return w;
}

Window Window::ball(int n) {
  if (n < 1 || n > 3) throw ValidationError("Window::ball: dimension must be 1..3");
  Window w;
  w.kind = Kind::ball;
  w.n = n;
  return w;
}

Window Window::box(int n) {
  if (n < 1 || n > 3) throw ValidationError("Window::box: dimension must be 1..3");
  Window w;
  w.kind = Kind::box;
  w.n = n;
  return w;
}

double Window::measure() const {
  switch (kind) {
    case Kind::interval:
      return a + b;
    case Kind::ball:
      return std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
    case Kind::box:
      return std::pow(2.0, n);
  }
  return 0.0;
}

bool Window::contains(const std::array<double, 3>& x, double scale) const {
  switch (kind) {
    case Kind::interval:
      return x[0] >= -b * scale && x[0] <= a * scale;
    case Kind::ball: {
      double sq = 0.0;
      for (int i = 0; i < n; ++i) sq += x[i] * x[i];
      return sq <= scale * scale;
    }
    case Kind::box:
      for (int i = 0; i < n; ++i)
        if (std::abs(x[i]) > scale) return false;
      return true;
  }
  return false;
}

std::string Window::describe() const {
  switch (kind) {
    case Kind::interval:
      return "interval[-" + std::to_string(b) + "," + std::to_string(a) + "]";
    case Kind::ball:
      return "ball(n=" + std::to_string(n) + ")";
    case Kind::box:
      return "box(n=" + std::to_string(n) + ")";
  }
  return "?";
}

double bessel_j_half_order(int n, double z) {
  switch (n) {
    case 1:
      return std::sqrt(2.0 / (kPi * z)) * std::sin(z);
    case 2:
      return std::cyl_bessel_j(1.0, z);
    case 3:
      return std::sqrt(2.0 / (kPi * z)) * (std::sin(z) / z - std::cos(z));
  }
  throw ValidationError("bessel_j_half_order: dimension must be 1..3");
}

std::complex<double> k_delta(const Window& w, const std::array<double, 3>& lambda) {
  using namespace std::complex_literals;
  switch (w.kind) {
    case Window::Kind::interval: {
      const double l = lambda[0];
      if (std::abs(l) < 1e-8) {
        // two-term series of the defining integral around l = 0
        return {w.a + w.b, 0.5 * l * (w.a * w.a - w.b * w.b)};
      }
      const std::complex<double> num =
          std::exp(1i * (w.a * l)) - std::exp(-1i * (w.b * l));
      return num / (1i * l);
    }
    case Window::Kind::box: {
      double prod = 1.0;
      for (int i = 0; i < w.n; ++i) prod *= 2.0 * sinc(lambda[i]);
      return {prod, 0.0};
    }
    case Window::Kind::ball: {
      double sq = 0.0;
      for (int i = 0; i < w.n; ++i) sq += lambda[i] * lambda[i];
      const double rho = std::sqrt(sq);
      const double nu = 0.5 * w.n;
      if (rho < 1e-4) {
        // J_nu(z)/z^nu ~ (1 - z^2/(4(nu+1))) / (2^nu Gamma(nu+1))
        const double lead = w.measure();
        return {lead * (1.0 - sq / (4.0 * (nu + 1.0))), 0.0};
      }
      const double val = std::pow(2.0 * kPi, nu) * bessel_j_half_order(w.n, rho) / std::pow(rho, nu);
      return {val, 0.0};
    }
  }
  return {0.0, 0.0};
}

std::complex<double> k_delta_quadrature(const Window& w, const std::array<double, 3>& lambda,
                                        int cells_per_axis) {
  const int m = cells_per_axis;
  double lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
  if (w.kind == Window::Kind::interval) {
    lo[0] = -w.b;
    hi[0] = w.a;
  } else {
    for (int i = 0; i < w.n; ++i) {
      lo[i] = -1.0;
      hi[i] = 1.0;
    }
  }
  double cell = 1.0;
  double step[3] = {0, 0, 0};
  for (int i = 0; i < w.n; ++i) {
    step[i] = (hi[i] - lo[i]) / m;
    cell *= step[i];
  }
  std::complex<double> sum = 0.0;
  const long total = [&] {
    long t = 1;
    for (int i = 0; i < w.n; ++i) t *= m;
    return t;
  }();
  for (long idx = 0; idx < total; ++idx) {
    long rem = idx;
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int i = w.n - 1; i >= 0; --i) {
      const long c = rem % m;
      rem /= m;
      x[i] = lo[i] + (c + 0.5) * step[i];
    }
    if (!w.contains(x, 1.0)) continue;
    double phase = 0.0;
    for (int i = 0; i < w.n; ++i) phase += lambda[i] * x[i];
    sum += std::complex<double>(std::cos(phase), std::sin(phase));
  }
  return sum * cell;
}

IndicatorMask indicator_mask(const Window& w, double r, double t, const LatticeField& grid) {
  if (r <= 0.0) throw ValidationError("indicator_mask: radius must be positive");
  if (t <= 0.0 || t > 1.0) throw ValidationError("indicator_mask: t must lie in (0, 1]");
  if (w.n != grid.n) throw ValidationError("indicator_mask: window/grid dimension mismatch");
  const double scale = r * std::pow(t, 1.0 / w.n);

  for (int axis = 0; axis < grid.n; ++axis) {
    const double lo = grid.coord(axis, 0) - 0.5 * grid.spacing;
    const double hi = grid.coord(axis, static_cast<std::ptrdiff_t>(grid.shape[axis]) - 1) +
                      0.5 * grid.spacing;
    double need_lo = -scale, need_hi = scale;
    if (w.kind == Window::Kind::interval) {
      need_lo = -w.b * scale;
      need_hi = w.a * scale;
    }
    if (lo > need_lo || hi < need_hi)
      throw ValidationError("indicator_mask: window of extent " + std::to_string(scale) +
                            " exceeds grid on axis " + std::to_string(axis));
  }

  IndicatorMask mask;
  mask.inside.assign(grid.size(), 0);
  const std::size_t n1 = grid.n > 1 ? grid.shape[1] : 1;
  const std::size_t n2 = grid.n > 2 ? grid.shape[2] : 1;
  std::size_t flat = 0;
  for (std::size_t i0 = 0; i0 < grid.shape[0]; ++i0) {
    const double x0 = grid.coord(0, static_cast<std::ptrdiff_t>(i0));
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
      const double x1 = grid.n > 1 ? grid.coord(1, static_cast<std::ptrdiff_t>(i1)) : 0.0;
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++flat) {
        const double x2 = grid.n > 2 ? grid.coord(2, static_cast<std::ptrdiff_t>(i2)) : 0.0;
        if (w.contains({x0, x1, x2}, scale)) {
          mask.inside[flat] = 1;
          ++mask.count;
        }
      }
    }
  }
  return mask;
}

double gamma_lower_bound(const Window& w) {
  switch (w.kind) {
    case Window::Kind::interval:
      return 0.0;
    case Window::Kind::ball:
      return 0.5 - 0.5 / w.n;
    case Window::Kind::box:
      if (w.n != 2) throw ValidationError("gamma_lower_bound: box supported for n = 2 only");
      return 0.0;
  }
  return 0.0;
}

}  // namespace lrf
