#pragma once

#include <array>
#include <cstdint>

#include "lrf/field.hpp"

namespace lrf {

// Cauchy-type covariance B(r) = (1 + r^2)^{-alpha/2}: unit variance,
// isotropic, positive definite in every dimension, with r^alpha B(r) -> 1.
struct CovarianceModel {
  int n = 1;
  double alpha = 0.5;

  void validate() const;
};

double covariance(const CovarianceModel& model, double r);

// Low-frequency spectral asymptote c1(n, alpha) |lambda|^{alpha - n}.
struct SpectralModel {
  int n = 1;
  double alpha = 0.5;

  // c1(n, alpha) = Gamma((n - alpha)/2) / (2^alpha pi^{n/2} Gamma(alpha/2))
  double c1() const;
};

double spectral_density_asymptote(const SpectralModel& model, double rho);

struct SynthesisOptions {
  // Even embedding padding factors tried in order before failing.
  std::array<int, 3> padding_factors{2, 4, 8};
  // Negative eigenvalues of magnitude below tol * max_eigenvalue are
  // clamped to zero; anything more negative fails the embedding.
  double negativity_tolerance = 1e-10;
  // Grid memory cap; overridable through LRF_MEMORY_BUDGET_MB.
  std::size_t memory_budget_mb = 4096;
};

// Stationary zero-mean Gaussian lattice field with covariance
// B(|i - j| * spacing) by circulant embedding on an enlarged torus.
// Deterministic function of (model, shape, spacing, seed).
LatticeField synthesize(const CovarianceModel& model, const std::array<std::size_t, 3>& shape,
                        double spacing, std::uint64_t seed,
                        const SynthesisOptions& opts = SynthesisOptions{});

// Precomputed embedding spectrum; lets replicate loops pay the eigenvalue
// FFT once. Reentrant: each draw uses call-local state.
class CirculantEmbedding {
 public:
  CirculantEmbedding(const CovarianceModel& model, const std::array<std::size_t, 3>& shape,
                     double spacing, const SynthesisOptions& opts = SynthesisOptions{});

  LatticeField draw(std::uint64_t seed) const;

  int padding_factor() const { return padding_; }
  double most_negative_eigenvalue() const { return min_eig_; }

 private:
  CovarianceModel model_;
  std::array<std::size_t, 3> shape_;
  std::array<std::size_t, 3> torus_;
  double spacing_;
  int padding_ = 0;
  double min_eig_ = 0.0;
  std::vector<double> sqrt_eig_;  // sqrt(eigenvalue / torus size)
};

}  // namespace lrf
