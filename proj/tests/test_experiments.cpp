#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "lrf/errors.hpp"
#include "lrf/experiments.hpp"

using namespace lrf;

namespace {

ScalingExperimentConfig small_config() {
  ScalingExperimentConfig cfg;
  cfg.params.n = 1;
  cfg.params.kappa = 1;
  cfg.params.alpha = 0.4;
  cfg.params.beta = 0.0;
  cfg.params.window = Window::interval(1.0, 1.0);
  cfg.radii = {32, 64, 128};
  cfg.t_grid = {0.5, 1.0};
  cfg.replicates = 20;
  cfg.base_seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("hurst estimator from an exact power-law table") {
  // Var(r) = 3 r^{1.6} with n = 1 gives slope 1.6 = 2nH, H = 0.8 exactly.
  std::vector<double> radii = {64, 128, 256, 512, 1024};
  std::vector<double> vars;
  for (double r : radii) vars.push_back(3.0 * std::pow(r, 1.6));
  auto est = estimate_hurst_from_table(radii, vars, 1);
  CHECK(est.value == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(est.slope_r2 == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(est.ci_low <= est.value);
  CHECK(est.ci_high >= est.value);
  CHECK(est.plausible);

  // n = 2: the same slope means H = 0.4
  auto est2 = estimate_hurst_from_table(radii, vars, 2);
  CHECK(est2.value == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("implausible estimates are flagged, not silently reported") {
  std::vector<double> radii = {64, 128, 256, 512};
  std::vector<double> vars;
  // decaying variance: slope -0.2, H = -0.05, outside (0, 1)
  for (double r : radii) vars.push_back(std::pow(r, -0.2));
  auto est = estimate_hurst_from_table(radii, vars, 1);
  CHECK(est.value == doctest::Approx(-0.1).epsilon(1e-8));
  CHECK_FALSE(est.plausible);
}

TEST_CASE("run_scaling is deterministic and produces a full cell table") {
  auto cfg = small_config();
  auto r1 = run_scaling(cfg);
  auto r2 = run_scaling(cfg);
  REQUIRE(r1.cells.size() == cfg.radii.size() * cfg.t_grid.size());
  for (std::size_t i = 0; i < r1.cells.size(); ++i) {
    CHECK(r1.cells[i].mean == r2.cells[i].mean);
    CHECK(r1.cells[i].variance == r2.cells[i].variance);
    CHECK(r1.cells[i].count == cfg.replicates);
  }
  CHECK(r1.config_hash == r2.config_hash);
  CHECK(r1.n == 1);
  CHECK(r1.gamma_lower == doctest::Approx(0.0));

  // a different seed changes the numbers (and the hash, which covers the
  // full config including the seed)
  cfg.base_seed = 6;
  auto r3 = run_scaling(cfg);
  CHECK(r3.cells[0].mean != r1.cells[0].mean);
  CHECK(r3.config_hash != r1.config_hash);
  CHECK(!r1.config_hash.empty());
}

TEST_CASE("multithreaded run matches single-threaded exactly") {
  auto cfg = small_config();
  auto seq = run_scaling(cfg, 1);
  auto par = run_scaling(cfg, 4);
  REQUIRE(seq.cells.size() == par.cells.size());
  for (std::size_t i = 0; i < seq.cells.size(); ++i) {
    CHECK(seq.cells[i].mean == doctest::Approx(par.cells[i].mean).epsilon(1e-12));
    CHECK(seq.cells[i].variance == doctest::Approx(par.cells[i].variance).epsilon(1e-12));
  }
}

TEST_CASE("t-nesting: smaller windows have smaller unnormalized variance") {
  auto cfg = small_config();
  cfg.replicates = 60;
  auto rep = run_scaling(cfg);
  for (double r : cfg.radii) {
    const auto& half = rep.cell(r, 0.5);
    const auto& one = rep.cell(r, 1.0);
    const double raw_half = half.variance / (half.normalization * half.normalization);
    const double raw_one = one.variance / (one.normalization * one.normalization);
    CHECK(raw_half < raw_one);
  }
  CHECK_THROWS_AS(rep.cell(999.0, 1.0), ValidationError);
}

TEST_CASE("general functional with matching rank reproduces pure-hermite runs") {
  auto cfg = small_config();
  cfg.replicates = 10;
  auto pure = run_scaling(cfg);

  // S(x) = x is exactly H_1: identical replicate values modulo quadrature
  ScalingExperimentConfig gen = cfg;
  gen.functional.kind = Functional::Kind::general;
  gen.functional.S = [](double x) { return x; };
  gen.functional.expected_rank = 1;
  auto rep = run_scaling(gen);
  for (std::size_t i = 0; i < rep.cells.size(); ++i) {
    CHECK(rep.cells[i].mean == doctest::Approx(pure.cells[i].mean).epsilon(1e-6));
    CHECK(rep.cells[i].variance == doctest::Approx(pure.cells[i].variance).epsilon(1e-6));
  }
}

TEST_CASE("rank mismatch between functional and kappa is rejected") {
  auto cfg = small_config();
  cfg.functional.kind = Functional::Kind::general;
  cfg.functional.S = [](double x) { return x * x; };  // rank 2
  cfg.functional.expected_rank = 1;                   // but kappa = 1 claimed
  CHECK_THROWS_AS(run_scaling(cfg), ValidationError);
}

TEST_CASE("invalid configs are rejected upfront") {
  auto cfg = small_config();
  cfg.params.alpha = 0.5;
  cfg.params.beta = 0.4;
  cfg.validity_mode = ValidityMode::theorem;
  CHECK_THROWS_AS(run_scaling(cfg), ValidationError);
  cfg.validity_mode = ValidityMode::window;
  CHECK_NOTHROW(cfg.validate());

  auto none = small_config();
  none.radii.clear();
  CHECK_THROWS_AS(none.validate(), ValidationError);
  auto zero = small_config();
  zero.replicates = 0;
  CHECK_THROWS_AS(zero.validate(), ValidationError);
}

TEST_CASE("reduction: higher-order terms wash out of a rank-1 functional") {
  ScalingParams p;
  p.n = 1;
  p.kappa = 1;
  p.alpha = 0.4;
  p.beta = 0.0;
  p.window = Window::interval(1.0, 1.0);

  // S(x) = x + x^3 has rank 1 with leading coefficient 4; the cubic tail
  // contributes H_3, which integrates to relatively less as r grows.
  auto S = [](double x) { return x + x * x * x; };
  const double c128 = reduction_check(S, p, 128.0, 60, 9);
  const double c512 = reduction_check(S, p, 512.0, 60, 9);
  CHECK(c512 > 0.9);
  CHECK(c512 >= c128 - 0.02);

  // S(x) = C * H_kappa / kappa! + constant is its own rank term: exact
  // correlation 1 at any radius.
  ScalingParams p2 = p;
  p2.kappa = 2;
  p2.alpha = 0.3;
  auto S2 = [](double x) { return 2.5 * (x * x - 1.0) + 7.0; };
  CHECK(reduction_check(S2, p2, 64.0, 20, 3) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("self-similarity check compares variance ratios against t^{2H}") {
  auto cfg = small_config();
  cfg.replicates = 80;
  cfg.t_grid = {0.5, 1.0};
  auto rep = run_scaling(cfg);
  auto chk = self_similarity_check(rep, 0.8);
  REQUIRE(!chk.t_values.empty());
  bool found_half = false;
  for (std::size_t i = 0; i < chk.t_values.size(); ++i) {
    if (chk.t_values[i] != 0.5) continue;
    found_half = true;
    CHECK(chk.target[i] == doctest::Approx(std::pow(0.5, 1.6)).epsilon(1e-12));
    CHECK(chk.ratio[i] > 0.0);
    CHECK(chk.ratio_stderr[i] > 0.0);
  }
  CHECK(found_half);
  CHECK(chk.max_abs_deviation < 0.35);  // loose: small radii, few replicates
}

TEST_CASE("distribution comparison of a sample against itself is degenerate") {
  std::vector<double> xs;
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  for (int i = 0; i < 600; ++i) xs.push_back(g(rng));
  auto cmp = distribution_compare(xs, xs);
  CHECK(cmp.ks_distance == doctest::Approx(0.0));
  CHECK(cmp.mean_gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cmp.variance_gap == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(cmp.ks_critical_5pct == doctest::Approx(1.358 * std::sqrt(2.0 / 600.0)).epsilon(1e-9));

  std::vector<double> shifted;
  for (double x : xs) shifted.push_back(x * x);  // different law
  auto bad = distribution_compare(xs, shifted);
  CHECK(bad.ks_distance > bad.ks_critical_5pct);
}

TEST_CASE("report serialization: stable json keys and rfc4180 csv") {
  auto cfg = small_config();
  cfg.replicates = 5;
  auto rep = run_scaling(cfg);
  const std::string json = report_to_json(rep);
  CHECK(json.find("\"hurst_estimate\"") != std::string::npos);
  CHECK(json.find("\"config_hash\"") != std::string::npos);
  CHECK(json.find("\"cells\"") != std::string::npos);
  CHECK(report_to_json(rep) == json);  // byte-stable

  const std::string csv = report_to_csv(rep);
  CHECK(csv.rfind("r,t,replicate_count,mean,variance,stderr\r\n", 0) == 0);
  // one header + one line per cell, CRLF line ends
  std::size_t lines = 0;
  for (std::size_t pos = 0; (pos = csv.find("\r\n", pos)) != std::string::npos; pos += 2) ++lines;
  CHECK(lines == 1 + rep.cells.size());
}
