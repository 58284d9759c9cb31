#include <doctest.h>

#include <cmath>
#include <vector>

#include "lrf/errors.hpp"
#include "lrf/rng.hpp"
#include "lrf/stats.hpp"
#include "lrf/synthesis.hpp"

using namespace lrf;

TEST_CASE("covariance model closed form and validation") {
  CovarianceModel m{1, 0.4};
  CHECK(covariance(m, 0.0) == doctest::Approx(1.0));
  CHECK(covariance(m, 10.0) == doctest::Approx(std::pow(101.0, -0.2)));
  // long-range tail: r^alpha B(r) -> 1
  CHECK(std::pow(1000.0, 0.4) * covariance(m, 1000.0) == doctest::Approx(1.0).epsilon(1e-5));

  CHECK_THROWS_AS((CovarianceModel{1, 0.0}).validate(), ValidationError);
  CHECK_THROWS_AS((CovarianceModel{1, 1.0}).validate(), ValidationError);
  CHECK_THROWS_AS((CovarianceModel{2, 2.5}).validate(), ValidationError);
  CHECK_NOTHROW((CovarianceModel{2, 1.5}).validate());
}

TEST_CASE("spectral asymptote constant") {
  // c1(1, 0.5) = Gamma(0.25) / (2^{1/2} pi^{1/2} Gamma(0.25)) = 1/sqrt(2 pi)
  SpectralModel s{1, 0.5};
  CHECK(s.c1() == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
  CHECK(spectral_density_asymptote(s, 2.0) ==
        doctest::Approx(s.c1() * std::pow(2.0, -0.5)).epsilon(1e-12));
  // n = 2, alpha = 1: c1 = Gamma(1/2) / (2 pi Gamma(1/2)) = 1 / (2 pi)
  SpectralModel s2{2, 1.0};
  CHECK(s2.c1() == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-12));
}

TEST_CASE("synthesis is deterministic in its seed") {
  CovarianceModel m{1, 0.4};
  auto a = synthesize(m, {256, 1, 1}, 1.0, 42);
  auto b = synthesize(m, {256, 1, 1}, 1.0, 42);
  auto c = synthesize(m, {256, 1, 1}, 1.0, 43);
  REQUIRE(a.values.size() == 256);
  bool identical = true, different = false;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    identical = identical && (a.values[i] == b.values[i]);
    different = different || (a.values[i] != c.values[i]);
  }
  CHECK(identical);
  CHECK(different);
}

TEST_CASE("embedding class draws match the one-shot entry point") {
  CovarianceModel m{1, 0.5};
  CirculantEmbedding emb(m, {128, 1, 1}, 0.5, SynthesisOptions{});
  auto a = emb.draw(7);
  auto b = synthesize(m, {128, 1, 1}, 0.5, 7);
  REQUIRE(a.values.size() == b.values.size());
  for (std::size_t i = 0; i < a.values.size(); ++i) CHECK(a.values[i] == b.values[i]);
  CHECK(emb.padding_factor() >= 2);
  CHECK(emb.most_negative_eigenvalue() > -1e-8);
}

TEST_CASE("marginals: zero mean, unit variance, gaussian shape") {
  CovarianceModel m{1, 0.4};
  MomentAccumulator acc;
  for (std::uint64_t k = 0; k < 40; ++k) {
    auto f = synthesize(m, {1024, 1, 1}, 1.0, derive_seed(100, k));
    for (double v : f.values) acc.add(v);
  }
  // long-range dependence inflates the mean's effective error well beyond
  // iid rates; bounds below are generous for 40 independent replicates
  CHECK(std::abs(acc.mean) < 0.05);
  CHECK(acc.variance() == doctest::Approx(1.0).epsilon(0.03));
  CHECK(std::abs(acc.skewness()) < 0.05);
  CHECK(std::abs(acc.excess_kurtosis()) < 0.1);
}

TEST_CASE("empirical lag covariance matches the model, n = 1") {
  CovarianceModel m{1, 0.4};
  const std::size_t len = 2048;
  const int reps = 60;
  for (double lag : {1.0, 10.0}) {
    const std::size_t L = static_cast<std::size_t>(lag);
    MomentAccumulator acc;
    for (int k = 0; k < reps; ++k) {
      auto f = synthesize(m, {len, 1, 1}, 1.0, derive_seed(55, k));
      double s = 0.0;
      for (std::size_t i = 0; i + L < len; ++i) s += f.values[i] * f.values[i + L];
      acc.add(s / static_cast<double>(len - L));
    }
    const double want = covariance(m, lag);
    CHECK(std::abs(acc.mean - want) < 4.0 * acc.stderr_of_mean() + 1e-3);
  }
}

TEST_CASE("spacing scales the covariance argument") {
  CovarianceModel m{1, 0.6};
  const std::size_t len = 4096;
  MomentAccumulator acc;
  for (int k = 0; k < 40; ++k) {
    auto f = synthesize(m, {len, 1, 1}, 0.25, derive_seed(77, k));
    double s = 0.0;
    for (std::size_t i = 0; i + 8 < len; ++i) s += f.values[i] * f.values[i + 8];
    acc.add(s / static_cast<double>(len - 8));
  }
  // 8 cells at spacing 0.25 = physical lag 2
  const double want = covariance(m, 2.0);
  CHECK(std::abs(acc.mean - want) < 4.0 * acc.stderr_of_mean() + 1e-3);
}

TEST_CASE("n = 2 field is isotropic: axis and diagonal lags agree") {
  CovarianceModel m{2, 0.8};
  const std::size_t s = 128;
  MomentAccumulator ax, ay, diag;
  for (int k = 0; k < 30; ++k) {
    auto f = synthesize(m, {s, s, 1}, 1.0, derive_seed(31, k));
    double sx = 0, sy = 0, sd = 0;
    std::size_t cx = 0, cy = 0, cd = 0;
    for (std::size_t i = 0; i < s; ++i) {
      for (std::size_t j = 0; j < s; ++j) {
        const double v = f.values[i * s + j];
        if (j + 5 < s) { sx += v * f.values[i * s + j + 5]; ++cx; }
        if (i + 5 < s) { sy += v * f.values[(i + 5) * s + j]; ++cy; }
        if (i + 3 < s && j + 4 < s) { sd += v * f.values[(i + 3) * s + j + 4]; ++cd; }
      }
    }
    ax.add(sx / cx);
    ay.add(sy / cy);
    diag.add(sd / cd);
  }
  const double want5 = covariance(m, 5.0);
  CHECK(std::abs(ax.mean - want5) < 4.0 * ax.stderr_of_mean() + 2e-3);
  CHECK(std::abs(ay.mean - want5) < 4.0 * ay.stderr_of_mean() + 2e-3);
  CHECK(ax.mean == doctest::Approx(ay.mean).epsilon(0.1));
  // diagonal lag (3,4) has the same norm 5
  CHECK(std::abs(diag.mean - want5) < 4.0 * diag.stderr_of_mean() + 2e-3);
}

TEST_CASE("grid geometry: origin is centered and coordinates are physical") {
  auto f = synthesize(CovarianceModel{1, 0.5}, {64, 1, 1}, 0.5, 1);
  CHECK(f.n == 1);
  CHECK(f.spacing == doctest::Approx(0.5));
  CHECK(f.coord(0, f.origin[0]) == doctest::Approx(0.0));
  f.validate();
}

TEST_CASE("memory budget is enforced") {
  SynthesisOptions opts;
  opts.memory_budget_mb = 1;
  CHECK_THROWS_AS(synthesize(CovarianceModel{1, 0.5}, {1u << 22, 1, 1}, 1.0, 1, opts),
                  ValidationError);
}
