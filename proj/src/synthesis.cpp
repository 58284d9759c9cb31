#include "lrf/synthesis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <string>

#include "lrf/errors.hpp"
#include "lrf/fft.hpp"
#include "lrf/rng.hpp"

namespace lrf {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::size_t env_memory_budget_mb(std::size_t fallback) {
  if (const char* s = std::getenv("LRF_MEMORY_BUDGET_MB")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return fallback;
}

}  // namespace

void CovarianceModel::validate() const {
  if (n < 1 || n > 3) throw ValidationError("CovarianceModel: dimension must be 1..3");
  if (!(alpha > 0.0) || !(alpha < static_cast<double>(n)))
    throw ValidationError("CovarianceModel: alpha must lie in (0, n), got alpha = " +
                          std::to_string(alpha) + " with n = " + std::to_string(n));
}

double covariance(const CovarianceModel& model, double r) {
  if (r < 0.0) throw ValidationError("covariance: r must be nonnegative");
  return std::pow(1.0 + r * r, -0.5 * model.alpha);
}

double SpectralModel::c1() const {
  return std::tgamma(0.5 * (n - alpha)) /
         (std::pow(2.0, alpha) * std::pow(kPi, 0.5 * n) * std::tgamma(0.5 * alpha));
}

double spectral_density_asymptote(const SpectralModel& model, double rho) {
  if (!(rho > 0.0)) throw ValidationError("spectral_density_asymptote: singular at rho = 0");
  return model.c1() * std::pow(rho, model.alpha - model.n);
}

CirculantEmbedding::CirculantEmbedding(const CovarianceModel& model,
                                       const std::array<std::size_t, 3>& shape, double spacing,
                                       const SynthesisOptions& opts)
    : model_(model), shape_(shape), spacing_(spacing) {
  model.validate();
  if (!(spacing > 0.0)) throw ValidationError("synthesize: spacing must be positive");
  for (int a = 0; a < model.n; ++a)
    if (shape[a] == 0) throw ValidationError("synthesize: empty grid axis");
  for (int a = model.n; a < 3; ++a) shape_[a] = 1;

  const std::size_t budget_mb = env_memory_budget_mb(opts.memory_budget_mb);

  double worst_min = 0.0;
  int worst_pad = 0;
  for (const int pad : opts.padding_factors) {
    std::array<std::size_t, 3> torus{1, 1, 1};
    std::size_t total = 1;
    for (int a = 0; a < model.n; ++a) {
      torus[a] = shape_[a] * static_cast<std::size_t>(pad);
      total *= torus[a];
    }
    if (total * sizeof(std::complex<double>) > budget_mb * (1ull << 20))
      throw ValidationError("synthesize: torus of " + std::to_string(total) +
                            " cells exceeds memory budget of " + std::to_string(budget_mb) + " MB");

    // Covariance ring: wrapped Euclidean distances on the torus.
    std::vector<std::complex<double>> ring(total);
    const std::size_t n1 = torus[1], n2 = torus[2];
    std::size_t flat = 0;
    for (std::size_t i0 = 0; i0 < torus[0]; ++i0) {
      const double d0 = static_cast<double>(std::min(i0, torus[0] - i0)) * spacing;
      for (std::size_t i1 = 0; i1 < n1; ++i1) {
        const double d1 =
            model.n > 1 ? static_cast<double>(std::min(i1, torus[1] - i1)) * spacing : 0.0;
        for (std::size_t i2 = 0; i2 < n2; ++i2, ++flat) {
          const double d2 =
              model.n > 2 ? static_cast<double>(std::min(i2, torus[2] - i2)) * spacing : 0.0;
          ring[flat] = covariance(model, std::sqrt(d0 * d0 + d1 * d1 + d2 * d2));
        }
      }
    }

    fft_forward(ring, torus.data(), model.n);

    double max_eig = 0.0, min_eig = 0.0;
    for (const auto& e : ring) {
      max_eig = std::max(max_eig, e.real());
      min_eig = std::min(min_eig, e.real());
    }
    if (min_eig >= -opts.negativity_tolerance * max_eig) {
      torus_ = torus;
      padding_ = pad;
      min_eig_ = min_eig;
      sqrt_eig_.resize(total);
      const double inv_total = 1.0 / static_cast<double>(total);
      for (std::size_t k = 0; k < total; ++k)
        sqrt_eig_[k] = std::sqrt(std::max(ring[k].real(), 0.0) * inv_total);
      return;
    }
    if (min_eig < worst_min || worst_pad == 0) {
      worst_min = min_eig;
      worst_pad = pad;
    }
  }
  throw ValidationError("synthesize: circulant embedding failed; most negative eigenvalue " +
                        std::to_string(worst_min) + " at padding factor " +
                        std::to_string(worst_pad));
}

LatticeField CirculantEmbedding::draw(std::uint64_t seed) const {
  std::size_t total = 1;
  for (int a = 0; a < model_.n; ++a) total *= torus_[a];

  // Complex white noise with E|eps|^2 = 2; the real part of the
  // spectrally colored inverse transform then has the target covariance.
  NormalSampler normal(make_rng(seed, 0));
  std::vector<std::complex<double>> modes(total);
  for (std::size_t k = 0; k < total; ++k) {
    const double re = normal();
    const double im = normal();
    modes[k] = std::complex<double>(re * sqrt_eig_[k], im * sqrt_eig_[k]);
  }
  fft_inverse(modes, torus_.data(), model_.n);

  LatticeField field;
  field.n = model_.n;
  field.shape = shape_;
  field.spacing = spacing_;
  for (int a = 0; a < model_.n; ++a)
    field.origin[a] = static_cast<std::ptrdiff_t>(shape_[a] / 2);
  field.values.resize(field.size());

  const std::size_t n1 = field.n > 1 ? shape_[1] : 1;
  const std::size_t n2 = field.n > 2 ? shape_[2] : 1;
  std::size_t flat = 0;
  for (std::size_t i0 = 0; i0 < shape_[0]; ++i0)
    for (std::size_t i1 = 0; i1 < n1; ++i1)
      for (std::size_t i2 = 0; i2 < n2; ++i2, ++flat) {
        const std::size_t src = (i0 * torus_[1] + i1) * torus_[2] + i2;
        field.values[flat] = modes[src].real();
      }
  return field;
}

LatticeField synthesize(const CovarianceModel& model, const std::array<std::size_t, 3>& shape,
                        double spacing, std::uint64_t seed, const SynthesisOptions& opts) {
  return CirculantEmbedding(model, shape, spacing, opts).draw(seed);
}

}  // namespace lrf
