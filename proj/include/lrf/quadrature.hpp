#pragma once

#include <functional>

namespace lrf {

struct QuadratureSpec {
  double tolerance = 1e-9;
  int initial_panels = 64;
  int max_refinements = 12;
  double upper_cutoff_sigmas = 12.0;  // cutoff policy for taper integrals
};

// Composite 5-point Gauss-Legendre on [a, b], panel count doubled until
// two successive levels agree within tolerance; PrecisionError on
// non-convergence.
double adaptive_integral(const std::function<double(double)>& f, double a, double b,
                         const QuadratureSpec& quad);

// Fixed-panel composite 5-point Gauss-Legendre (no refinement loop).
double panel_integral(const std::function<double(double)>& f, double a, double b, int panels);

}  // namespace lrf
