#include "lrf/filters.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "lrf/errors.hpp"
#include "lrf/fft.hpp"
#include "lrf/kernels.hpp"
#include "lrf/quadrature.hpp"

namespace lrf {
namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

void FilterSpec::validate() const {
  if (n < 1 || n > 3) throw ValidationError("FilterSpec: dimension must be 1..3");
  if (!(sigma > 0.0)) throw ValidationError("FilterSpec: taper sigma must be positive");
  if (h_scale == 0.0) throw ValidationError("FilterSpec: h(1) must be nonzero");
  if (!(beta > -0.5 * n) || !(beta < 0.5 * n))
    throw ValidationError("FilterSpec: beta must lie in (-n/2, n/2), got " + std::to_string(beta));
}

double FilterSpec::g(double u) const { return std::exp(-u * u / (2.0 * sigma * sigma)); }

double multiplier(const FilterSpec& spec, double lambda_norm) {
  if (lambda_norm < 0.0) throw ValidationError("multiplier: negative frequency norm");
  if (lambda_norm == 0.0) {
    if (spec.beta > 0.0) return 0.0;
    if (spec.beta == 0.0) return spec.h_scale;
    throw ValidationError("multiplier: singular at zero frequency for beta < 0");
  }
  return spec.h_scale * std::pow(lambda_norm, spec.beta) * spec.g(lambda_norm);
}

LatticeField apply_filter(const LatticeField& input, const FilterSpec& spec) {
  spec.validate();
  input.validate();
  if (spec.n != input.n) throw ValidationError("apply_filter: dimension mismatch");

  const std::size_t total = input.size();
  std::vector<std::complex<double>> spectrum(total);
  for (std::size_t i = 0; i < total; ++i) spectrum[i] = input.values[i];
  fft_forward(spectrum, input.shape.data(), input.n);

  // Continuous frequency of DFT bin k along an axis of M cells:
  // 2 pi k~ / (M spacing) with k~ wrapped to [-M/2, M/2).
  std::vector<double> mult(total);
  const std::size_t n1 = input.n > 1 ? input.shape[1] : 1;
  const std::size_t n2 = input.n > 2 ? input.shape[2] : 1;
  auto freq = [&](std::size_t k, std::size_t m) {
    const double kw = (k <= m / 2) ? static_cast<double>(k)
                                   : static_cast<double>(k) - static_cast<double>(m);
    return 2.0 * kPi * kw / (static_cast<double>(m) * input.spacing);
  };
  std::size_t flat = 0;
  for (std::size_t k0 = 0; k0 < input.shape[0]; ++k0) {
    const double f0 = freq(k0, input.shape[0]);
    for (std::size_t k1 = 0; k1 < n1; ++k1) {
      const double f1 = input.n > 1 ? freq(k1, input.shape[1]) : 0.0;
      for (std::size_t k2 = 0; k2 < n2; ++k2, ++flat) {
        const double f2 = input.n > 2 ? freq(k2, input.shape[2]) : 0.0;
        const double rho = std::sqrt(f0 * f0 + f1 * f1 + f2 * f2);
        mult[flat] = (rho == 0.0 && spec.beta < 0.0) ? 0.0 : multiplier(spec, rho);
      }
    }
  }

  kernels::active().spectral_scale(reinterpret_cast<double*>(spectrum.data()), mult.data(), total);
  fft_inverse(spectrum, input.shape.data(), input.n);

  LatticeField out = input;
  const double inv_total = 1.0 / static_cast<double>(total);
  for (std::size_t i = 0; i < total; ++i) out.values[i] = spectrum[i].real() * inv_total;
  return out;
}

double kernel_G(const FilterSpec& spec, double x_norm, const QuadratureSpec& quad) {
  spec.validate();
  const double upper = spec.sigma * quad.upper_cutoff_sigmas;
  const double x = x_norm;
  std::function<double(double)> integrand;
  switch (spec.n) {
    case 1:
      integrand = [&spec, x](double u) {
        return std::cos(x * u) * spec.h_scale * std::pow(u, spec.beta) * spec.g(u);
      };
      return adaptive_integral(integrand, 0.0, upper, quad) / kPi;
    case 2:
      integrand = [&spec, x](double u) {
        return std::cyl_bessel_j(0.0, x * u) * spec.h_scale * std::pow(u, spec.beta + 1.0) *
               spec.g(u);
      };
      return adaptive_integral(integrand, 0.0, upper, quad) / (2.0 * kPi);
    case 3:
      integrand = [&spec, x](double u) {
        const double z = x * u;
        const double sinc = (std::abs(z) < 1e-8) ? 1.0 - z * z / 6.0 : std::sin(z) / z;
        return sinc * spec.h_scale * std::pow(u, spec.beta + 2.0) * spec.g(u);
      };
      return adaptive_integral(integrand, 0.0, upper, quad) / (2.0 * kPi * kPi);
  }
  throw ValidationError("kernel_G: unsupported dimension");
}

double filter_l2_mass(const FilterSpec& spec, const QuadratureSpec& quad) {
  spec.validate();
  const double surface = (spec.n == 1) ? 2.0 : (spec.n == 2 ? 2.0 * kPi : 4.0 * kPi);
  const double upper = spec.sigma * quad.upper_cutoff_sigmas;
  auto integrand = [&spec](double u) {
    const double hg = spec.h_scale * std::pow(u, spec.beta) * spec.g(u);
    return hg * hg * std::pow(u, spec.n - 1.0);
  };
  const double radial = adaptive_integral(integrand, 0.0, upper, quad);
  return surface * radial / std::pow(2.0 * kPi, spec.n);
}

}  // namespace lrf
