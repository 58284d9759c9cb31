#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "lrf/field.hpp"

namespace lrf {

// Observation-window geometry. Supported families:
//   interval [-b, a] on the line (a, b >= 0, a + b > 0),
//   unit ball in R^n,
//   box [-1, 1]^n.
struct Window {
  enum class Kind { interval, ball, box };
  Kind kind = Kind::interval;
  int n = 1;
  double a = 1.0;  // interval only
  double b = 1.0;

  static Window interval(double a, double b);
  static Window ball(int n);
  static Window box(int n);

  // Lebesgue measure |Delta|.
  double measure() const;

  // Membership of a physical point in Delta scaled by factor `scale`.
  bool contains(const std::array<double, 3>& x, double scale) const;

  std::string describe() const;
};

// Fourier transform of the window indicator evaluated at lambda
// (first n components used). Analytic formulas with removable
// singularities handled:
//   interval: (e^{i a l} - e^{-i b l}) / (i l)
//   box:      prod_j 2 sin(l_j) / l_j
//   ball:     (2 pi)^{n/2} J_{n/2}(|l|) / |l|^{n/2}
std::complex<double> k_delta(const Window& w, const std::array<double, 3>& lambda);

// Brute-force midpoint quadrature of the defining integral; the test
// oracle for k_delta.
std::complex<double> k_delta_quadrature(const Window& w, const std::array<double, 3>& lambda,
                                        int cells_per_axis);

struct IndicatorMask {
  std::vector<std::uint8_t> inside;  // parallel to LatticeField::values
  std::size_t count = 0;             // cells inside
};

// Cell-center membership in Delta(r * t^{1/n}) on the given grid.
// Throws when the scaled window is not covered by the grid.
IndicatorMask indicator_mask(const Window& w, double r, double t, const LatticeField& grid);

// Lower end gamma(Delta) of the admissible Hurst range (gamma, 1).
double gamma_lower_bound(const Window& w);

// Half-integer-order Bessel J_{n/2} used by the ball transform.
double bessel_j_half_order(int n, double z);

}  // namespace lrf
