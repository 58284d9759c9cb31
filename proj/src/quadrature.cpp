#include "lrf/quadrature.hpp"

#include <cmath>

#include "lrf/errors.hpp"

namespace lrf {
namespace {

const double kNodes[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                          0.9061798459386640};
const double kWeights[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                            0.4786286704993665, 0.2369268850561891};

}  // namespace

double panel_integral(const std::function<double(double)>& f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    for (int q = 0; q < 5; ++q) sum += kWeights[q] * f(mid + 0.5 * h * kNodes[q]);
  }
  return sum * 0.5 * h;
}

double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& quad) {
  int panels = quad.initial_panels;
  double prev = panel_integral(f, a, b, panels);
  for (int it = 0; it < quad.max_refinements; ++it) {
    panels *= 2;
    const double cur = panel_integral(f, a, b, panels);
    if (std::abs(cur - prev) <= quad.tolerance * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  throw PrecisionError("quadrature did not converge within refinement budget", prev, 0.0);
}

}  // namespace lrf
