#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrf/filters.hpp"
#include "lrf/limit_laws.hpp"
#include "lrf/stats.hpp"

namespace lrf {

// What gets integrated: H_kappa of the field, or a general functional S
// (centered by its C_0) whose Hermite rank must equal params.kappa.
struct Functional {
  enum class Kind { pure_hermite, general };
  Kind kind = Kind::pure_hermite;
  std::function<double(double)> S;  // general only
  int expected_rank = 1;
};

struct ScalingExperimentConfig {
  ScalingParams params;
  ValidityMode validity_mode = ValidityMode::window;
  Functional functional;
  std::vector<double> radii = {64, 128, 256, 512, 1024};
  std::vector<double> t_grid = {1.0};
  std::size_t replicates = 100;
  std::uint64_t base_seed = 1;
  double spacing = 1.0;
  double sigma = 1.0;  // filter taper width
  // When true the per-replicate normalized values are kept in the report
  // (needed for distribution comparison and reduction checks).
  bool keep_samples = false;

  void validate() const;
};

struct CellStats {
  double r = 0.0;
  double t = 1.0;
  std::size_t count = 0;
  double mean = 0.0;
  double variance = 0.0;
  double variance_stderr = 0.0;
  double stderr_of_mean = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  // deterministic scale factor applied to every replicate in this cell;
  // the raw-variance growth law is variance / normalization^2
  double normalization = 1.0;
};

struct HurstEstimate {
  double value = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double slope_r2 = 0.0;
  bool plausible = true;  // false when outside (gamma(Delta), 1)
};

struct ExperimentReport {
  std::vector<CellStats> cells;  // one per (r, t)
  HurstEstimate hurst_estimate;
  std::string validity_mode;
  std::uint64_t base_seed = 0;
  std::string config_hash;
  std::string software_version;
  int n = 1;
  double gamma_lower = 0.0;
  // populated when keep_samples was set: samples[(r, t)] -> normalized values
  std::map<std::pair<double, double>, std::vector<double>> samples;

  const CellStats& cell(double r, double t) const;
};

// Full pipeline: synthesize xi on a guarded grid, pointwise transform,
// spectral filter, Riemann-sum window integrals for every (r, t), the
// scaling normalization (see normalization()), replicate aggregation.
// Deterministic in base_seed; replicate k uses seed stream k.
ExperimentReport run_scaling(const ScalingExperimentConfig& cfg, int threads = 1);

// Slope of log unnormalized variance at t = 1 against log r, divided by
// 2n, with the regression 95% interval.
HurstEstimate estimate_hurst(const ExperimentReport& report, int n);

// Same estimator applied to an explicit (r, variance) table.
HurstEstimate estimate_hurst_from_table(const std::vector<double>& radii,
                                        const std::vector<double>& variances, int n);

// Pearson correlation across replicates between the centered functional
// of S and its leading Hermite-rank term, both integrated over Delta(r).
double reduction_check(const std::function<double(double)>& S, const ScalingParams& params,
                       double r, std::size_t replicates, std::uint64_t seed, double sigma = 1.0);

struct SelfSimilarityCheck {
  double max_abs_deviation = 0.0;
  std::vector<double> t_values;
  std::vector<double> ratio;         // Var(t)/Var(1)
  std::vector<double> target;        // t^{2H}
  std::vector<double> ratio_stderr;  // delta-method MC errors
};

// Deviation of Var(t)/Var(1) from t^{2H} at the largest radius.
SelfSimilarityCheck self_similarity_check(const ExperimentReport& report, double H);

struct DistributionComparison {
  double ks_distance = 0.0;
  double ks_critical_5pct = 0.0;
  double mean_gap = 0.0;
  double variance_gap = 0.0;
  double skewness_gap = 0.0;
  double kurtosis_gap = 0.0;
};

// Two-sample KS and standardized moment gaps; inputs are standardized
// to unit variance internally.
DistributionComparison distribution_compare(const std::vector<double>& empirical,
                                            const std::vector<double>& limit);

// Stable-key-order JSON document and RFC-4180 CSV table of the report.
std::string report_to_json(const ExperimentReport& report);
std::string report_to_csv(const ExperimentReport& report);

}  // namespace lrf
