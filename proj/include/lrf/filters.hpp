#pragma once

#include "lrf/field.hpp"
#include "lrf/quadrature.hpp"

namespace lrf {

// Radial Fourier multiplier h(|u|) g(|u|) with h homogeneous of degree
// beta (h(u) = h_scale * u^beta) and Gaussian taper
// g(u) = exp(-u^2 / (2 sigma^2)). Square-integrability of h*g needs
// beta in (-n/2, n/2).
struct FilterSpec {
  double beta = 0.0;
  double h_scale = 1.0;  // h(1)
  double sigma = 1.0;
  int n = 1;

  void validate() const;
  double g(double u) const;
  double g0() const { return 1.0; }
};

// h(1) |lambda|^beta g(|lambda|); at zero: 0 for beta > 0, h(1) g(0) for
// beta = 0, singular-multiplier error for beta < 0.
double multiplier(const FilterSpec& spec, double lambda_norm);

// Discrete spectral convolution with the kernel G of the multiplier:
// forward DFT, pointwise multiply at the grid's continuous frequencies
// 2 pi k / (M * spacing), inverse DFT. The composite equals Riemann-sum
// convolution with G at grid resolution. The zero-frequency bin is
// annihilated when beta < 0 (the multiplier's singular point).
LatticeField apply_filter(const LatticeField& input, const FilterSpec& spec);

// Radial (Hankel-type) evaluation of the inverse Fourier integral of
// h*g; cross-validation oracle for apply_filter on small grids.
double kernel_G(const FilterSpec& spec, double x_norm, const QuadratureSpec& quad = QuadratureSpec{});

// Radial quadrature of h^2 g^2 over R^n / (2 pi)^n; Parseval reference
// for the kernel's L2 mass.
double filter_l2_mass(const FilterSpec& spec, const QuadratureSpec& quad = QuadratureSpec{});

}  // namespace lrf
