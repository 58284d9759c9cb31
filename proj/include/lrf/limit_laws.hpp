#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lrf/windows.hpp"

namespace lrf {

// Parameter admissibility comes in two tiers. The "theorem" gate is the
// sufficient range alpha in (0, (n - 2 beta) / kappa); the "window" gate
// is the window-specific range 0 < kappa alpha + 2 beta < U(Delta)
// (U = 2 interval, n + 1 ball, 4 box in R^2), equivalently
// H in (gamma(Delta), 1). The window gate is wider and includes H < 1/2.
enum class ValidityMode { theorem, window };

inline const char* to_string(ValidityMode m) {
  return m == ValidityMode::theorem ? "theorem" : "window";
}

struct ScalingParams {
  int n = 1;
  int kappa = 1;
  double alpha = 0.4;
  double beta = 0.0;
  Window window = Window::interval(1.0, 1.0);
  double g0 = 1.0;  // g(0)
  double h1 = 1.0;  // h(1)

  // Throws naming the violated inequality.
  void validate(ValidityMode mode) const;
  bool admissible(ValidityMode mode) const;

  // Upper bound U(Delta) of kappa alpha + 2 beta for the window gate.
  double window_exponent_bound() const;
};

// H = 1 - kappa alpha / (2n) - beta / n; requires window-gate validity.
double hurst(const ScalingParams& p);

// Scalar multiplying the window integral of V in the pre-limit process:
// r^{beta + kappa alpha/2 - n} / ((2 pi)^n c1^{kappa/2} g(0) h(1)),
// with the slowly varying part identically 1.
double normalization(const ScalingParams& p, double r);

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};

struct McOptions {
  std::size_t samples = 1'000'000;
  std::uint64_t seed = 1;
  // When positive, sampling may stop early once the relative standard
  // error drops below this; failing to reach it raises PrecisionError.
  double target_rel_stderr = 0.0;
};

// Cov(X_kappa(t), X_kappa(s)) of the limit process, on the scale the
// normalized pre-limit functional actually converges to: the spectral
// integral times kappa! (Ito isometry) divided by (2 pi)^{2n}. kappa = 1
// uses importance-sampling MC (per-coordinate radial proposal density
// proportional to rho^{alpha-1} (1+rho)^{-(alpha+n+1)}, covering the
// origin singularity and the tail). kappa = 2 with n = 1 is computed
// exactly via the convolution identity
// int |x|^{a-1}|s-x|^{a-1} dx = (B(a,a) + 2B(a,1-2a)) |s|^{2a-1},
// because the product proposal is infinite-variance near the diagonal.
McEstimate limit_covariance(const ScalingParams& p, double t, double s, const McOptions& mc);

struct LimitSampleGrid {
  double truncation_radius = 40.0;  // Lambda
  int bins_per_axis = 64;           // per half-axis; cells at (j+1/2) d
};

// Draws from the limit process X_kappa(t) via a discretized multiple
// Wiener-Ito integral on a Hermitian frequency grid. kappa = 1 supports
// n = 1..3; kappa = 2 supports n = 1 (quadratic form with the diagonal
// lambda_i = +-lambda_j cells excluded).
std::vector<double> sample_limit(const ScalingParams& p, double t, const LimitSampleGrid& grid,
                                 std::uint64_t seed, std::size_t count);

enum class IntegrabilityClass { convergent, divergent_at_origin, divergent_at_infinity, boundary };

inline const char* to_string(IntegrabilityClass c) {
  switch (c) {
    case IntegrabilityClass::convergent: return "convergent";
    case IntegrabilityClass::divergent_at_origin: return "divergent-at-origin";
    case IntegrabilityClass::divergent_at_infinity: return "divergent-at-infinity";
    case IntegrabilityClass::boundary: return "boundary-flagged";
  }
  return "?";
}

struct ScanSpec {
  double fit_rho_min = 32.0;
  double fit_rho_max = 2048.0;
  int fit_points = 12;
  double boundary_margin = 0.05;  // |q + 1| below this flags the boundary
  double min_fit_r2 = 0.99;
};

struct IntegrabilityScan {
  IntegrabilityClass classification = IntegrabilityClass::convergent;
  double fitted_tail_power = 0.0;  // q in shell form rho^q d rho
  double fit_r2 = 0.0;
  double inner_integral = 0.0;  // over the unit ball of frequencies
};

// Classifies I_1(p) = integral of |K_Delta(lambda)|^2 |lambda|^{p - n}
// d lambda for exponent p = kappa alpha + 2 beta: adaptive radial
// quadrature inside |lambda| <= 1, log-log tail fit of band-averaged
// shell integrals outside (shell rho^q convergent iff q < -1).
IntegrabilityScan integrability_scan(const Window& w, double p, const ScanSpec& scan = ScanSpec{});

}  // namespace lrf
