#include "lrf/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lrf/errors.hpp"
#include "lrf/hermite.hpp"
#include "lrf/kernels.hpp"
#include "lrf/rng.hpp"
#include "lrf/synthesis.hpp"
#include "lrf/windows.hpp"

namespace lrf {
namespace {

constexpr const char* kSoftwareVersion = "lrf 1.0.0";

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

struct GridLayout {
  std::array<std::size_t, 3> shape{1, 1, 1};
  std::array<std::ptrdiff_t, 3> origin{0, 0, 0};
};

// Grid covering Delta(r) plus the wrap-around guard margin of the FFT
// convolution: max(8 sigma, window/4) cells per side.
GridLayout guarded_grid(const Window& w, double r, double spacing, double sigma) {
  GridLayout g;
  for (int axis = 0; axis < w.n; ++axis) {
    double lo = -r, hi = r;
    if (w.kind == Window::Kind::interval) {
      lo = -w.b * r;
      hi = w.a * r;
    }
    const std::size_t window_cells =
        static_cast<std::size_t>(std::ceil((hi - lo) / spacing)) + 1;
    const std::size_t margin = static_cast<std::size_t>(
        std::ceil(std::max(8.0 * sigma / spacing, static_cast<double>(window_cells) / 4.0)));
    g.shape[axis] = window_cells + 2 * margin;
    g.origin[axis] = static_cast<std::ptrdiff_t>(margin) +
                     static_cast<std::ptrdiff_t>(std::ceil(-lo / spacing));
  }
  return g;
}

std::string canonical_config_string(const ScalingExperimentConfig& cfg) {
  std::ostringstream ss;
  ss.precision(17);
  ss << "n=" << cfg.params.n << ";kappa=" << cfg.params.kappa << ";alpha=" << cfg.params.alpha
     << ";beta=" << cfg.params.beta << ";window=" << cfg.params.window.describe()
     << ";mode=" << to_string(cfg.validity_mode) << ";spacing=" << cfg.spacing
     << ";sigma=" << cfg.sigma << ";replicates=" << cfg.replicates << ";seed=" << cfg.base_seed
     << ";functional=" << (cfg.functional.kind == Functional::Kind::pure_hermite ? "hermite" : "general")
     << ";radii=";
  for (double r : cfg.radii) ss << r << ",";
  ss << ";t=";
  for (double t : cfg.t_grid) ss << t << ",";
  return ss.str();
}

}  // namespace

void ScalingExperimentConfig::validate() const {
  params.validate(validity_mode);
  if (radii.size() < 3) throw ValidationError("ScalingExperimentConfig: need >= 3 radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw ValidationError("ScalingExperimentConfig: radii must be strictly increasing");
  if (radii.front() <= 0.0) throw ValidationError("ScalingExperimentConfig: radii must be positive");
  if (t_grid.empty()) throw ValidationError("ScalingExperimentConfig: empty t grid");
  for (double t : t_grid)
    if (t <= 0.0 || t > 1.0)
      throw ValidationError("ScalingExperimentConfig: t values must lie in (0, 1]");
  if (replicates < 2) throw ValidationError("ScalingExperimentConfig: need >= 2 replicates");
  if (!(spacing > 0.0)) throw ValidationError("ScalingExperimentConfig: spacing must be positive");
  if (functional.kind == Functional::Kind::general && !functional.S)
    throw ValidationError("ScalingExperimentConfig: general functional without S");
}

const CellStats& ExperimentReport::cell(double r, double t) const {
  for (const auto& c : cells)
    if (c.r == r && c.t == t) return c;
  throw ValidationError("ExperimentReport: no cell for requested (r, t)");
}

ExperimentReport run_scaling(const ScalingExperimentConfig& cfg, int threads) {
  cfg.validate();
  const ScalingParams& p = cfg.params;

  // General functionals: verify the declared rank and pick up C_0, C_kappa.
  double c0 = 0.0;
  if (cfg.functional.kind == Functional::Kind::general) {
    const int degree = std::max(8, cfg.functional.expected_rank + 4);
    const HermiteExpansion exp = expand(cfg.functional.S, degree);
    if (exp.rank != p.kappa)
      throw ValidationError("run_scaling: functional has Hermite rank " +
                            std::to_string(exp.rank) + ", params declare " +
                            std::to_string(p.kappa));
    c0 = exp.coeffs[0];
  }

  FilterSpec filter;
  filter.beta = p.beta;
  filter.h_scale = p.h1;
  filter.sigma = cfg.sigma;
  filter.n = p.n;
  filter.validate();

  CovarianceModel cov{p.n, p.alpha};

  ExperimentReport report;
  report.validity_mode = to_string(cfg.validity_mode);
  report.base_seed = cfg.base_seed;
  report.config_hash = hex64(fnv1a(canonical_config_string(cfg)));
  report.software_version = kSoftwareVersion;
  report.n = p.n;
  report.gamma_lower = gamma_lower_bound(p.window);

  for (std::size_t ri = 0; ri < cfg.radii.size(); ++ri) {
    const double r = cfg.radii[ri];
    const GridLayout layout = guarded_grid(p.window, r, cfg.spacing, cfg.sigma);
    CirculantEmbedding embedding(cov, layout.shape, cfg.spacing, SynthesisOptions{});

    LatticeField probe;  // geometry carrier for the masks
    probe.n = p.n;
    probe.shape = layout.shape;
    probe.spacing = cfg.spacing;
    probe.origin = layout.origin;
    probe.values.assign(probe.size(), 0.0);

    std::vector<IndicatorMask> masks;
    masks.reserve(cfg.t_grid.size());
    for (double t : cfg.t_grid) masks.push_back(indicator_mask(p.window, r, t, probe));

    const double cell_vol = std::pow(cfg.spacing, p.n);
    const double norm = normalization(p, r);

    // values[t_index][replicate], filled independently, aggregated in
    // fixed order for determinism.
    std::vector<std::vector<double>> values(cfg.t_grid.size(),
                                            std::vector<double>(cfg.replicates, 0.0));

    auto run_replicate = [&](std::size_t k) {
      const std::uint64_t seed = derive_seed(cfg.base_seed, (ri << 32) | k);
      LatticeField field = embedding.draw(seed);
      field.origin = layout.origin;

      std::vector<double> transformed(field.values.size());
      if (cfg.functional.kind == Functional::Kind::pure_hermite) {
        kernels::active().hermite_transform(field.values.data(), transformed.data(),
                                            field.values.size(), p.kappa);
      } else {
        for (std::size_t i = 0; i < field.values.size(); ++i)
          transformed[i] = cfg.functional.S(field.values[i]) - c0;
      }
      field.values.swap(transformed);

      const LatticeField filtered = apply_filter(field, filter);
      for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
        const double integral = kernels::active().masked_sum(filtered.values.data(),
                                                             masks[ti].inside.data(),
                                                             filtered.values.size()) *
                                cell_vol;
        values[ti][k] = integral * norm;
      }
    };

    if (threads <= 1) {
      for (std::size_t k = 0; k < cfg.replicates; ++k) run_replicate(k);
    } else {
      std::vector<std::thread> pool;
      std::size_t next = 0;
      const std::size_t per = (cfg.replicates + threads - 1) / threads;
      for (int w = 0; w < threads && next < cfg.replicates; ++w) {
        const std::size_t lo = next;
        const std::size_t hi = std::min(cfg.replicates, lo + per);
        next = hi;
        pool.emplace_back([&, lo, hi] {
          for (std::size_t k = lo; k < hi; ++k) run_replicate(k);
        });
      }
      for (auto& th : pool) th.join();
    }

    for (std::size_t ti = 0; ti < cfg.t_grid.size(); ++ti) {
      const MomentAccumulator acc = accumulate(values[ti]);
      CellStats cell;
      cell.r = r;
      cell.t = cfg.t_grid[ti];
      cell.count = acc.count;
      cell.mean = acc.mean;
      cell.variance = acc.variance();
      cell.variance_stderr = acc.variance_stderr();
      cell.stderr_of_mean = acc.stderr_of_mean();
      cell.skewness = acc.skewness();
      cell.excess_kurtosis = acc.excess_kurtosis();
      cell.normalization = norm;
      report.cells.push_back(cell);
      if (cfg.keep_samples) report.samples[{r, cfg.t_grid[ti]}] = values[ti];
    }
  }

  try {
    report.hurst_estimate = estimate_hurst(report, p.n);
    report.hurst_estimate.plausible = report.hurst_estimate.value > report.gamma_lower &&
                                      report.hurst_estimate.value < 1.0;
  } catch (const ValidationError&) {
    // too few radii/replicates for the regression; leave a flagged default
    report.hurst_estimate = HurstEstimate{};
    report.hurst_estimate.plausible = false;
  }
  return report;
}

HurstEstimate estimate_hurst_from_table(const std::vector<double>& radii,
                                        const std::vector<double>& variances, int n) {
  if (radii.size() < 3)
    throw ValidationError("estimate_hurst: need >= 3 radii for the regression");
  if (radii.size() != variances.size())
    throw ValidationError("estimate_hurst: radius/variance size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(variances[i] > 0.0))
      throw ValidationError("estimate_hurst: nonpositive variance in the table");
    lx.push_back(std::log(radii[i]));
    ly.push_back(std::log(variances[i]));
  }
  const Regression reg = linear_fit(lx, ly);
  HurstEstimate est;
  const double scale = 1.0 / (2.0 * n);
  est.value = reg.slope * scale;
  est.ci_low = reg.slope_ci_low * scale;
  est.ci_high = reg.slope_ci_high * scale;
  est.slope_r2 = reg.r2;
  est.plausible = est.value > 0.0 && est.value < 1.0;
  return est;
}

HurstEstimate estimate_hurst(const ExperimentReport& report, int n) {
  std::vector<double> radii, vars;
  for (const auto& cell : report.cells) {
    if (cell.t != 1.0) continue;
    if (cell.count < 30)
      throw ValidationError("estimate_hurst: need >= 30 replicates per radius");
    radii.push_back(cell.r);
    vars.push_back(cell.variance / (cell.normalization * cell.normalization));
  }
  if (radii.size() < 3)
    throw ValidationError("estimate_hurst: need >= 3 radii with t = 1 cells");
  return estimate_hurst_from_table(radii, vars, n);
}

double reduction_check(const std::function<double(double)>& S, const ScalingParams& params,
                       double r, std::size_t replicates, std::uint64_t seed, double sigma) {
  params.validate(ValidityMode::window);
  const int degree = std::max(10, params.kappa + 4);
  const HermiteExpansion exp = expand(S, degree);
  if (exp.rank != params.kappa)
    throw ValidationError("reduction_check: S has Hermite rank " + std::to_string(exp.rank) +
                          ", params declare " + std::to_string(params.kappa));
  const double c0 = exp.coeffs[0];
  const double ck = exp.coeffs[static_cast<std::size_t>(params.kappa)];
  double kfact = 1.0;
  for (int i = 2; i <= params.kappa; ++i) kfact *= i;

  const GridLayout layout = guarded_grid(params.window, r, 1.0, sigma);
  CovarianceModel cov{params.n, params.alpha};
  CirculantEmbedding embedding(cov, layout.shape, 1.0, SynthesisOptions{});

  LatticeField probe;
  probe.n = params.n;
  probe.shape = layout.shape;
  probe.spacing = 1.0;
  probe.origin = layout.origin;
  probe.values.assign(probe.size(), 0.0);
  const IndicatorMask mask = indicator_mask(params.window, r, 1.0, probe);

  std::vector<double> full(replicates), rank_term(replicates);
  std::vector<double> hk;
  for (std::size_t k = 0; k < replicates; ++k) {
    const LatticeField field = embedding.draw(derive_seed(seed, k));
    hk.resize(field.values.size());
    kernels::active().hermite_transform(field.values.data(), hk.data(), field.values.size(),
                                        params.kappa);
    double sum_full = 0.0, sum_rank = 0.0;
    for (std::size_t i = 0; i < field.values.size(); ++i) {
      if (!mask.inside[i]) continue;
      sum_full += S(field.values[i]) - c0;
      sum_rank += hk[i];
    }
    full[k] = sum_full;
    rank_term[k] = (ck / kfact) * sum_rank;
  }
  return pearson_correlation(full, rank_term);
}

SelfSimilarityCheck self_similarity_check(const ExperimentReport& report, double H) {
  double r_max = 0.0;
  bool has_t1 = false;
  for (const auto& cell : report.cells) {
    r_max = std::max(r_max, cell.r);
    if (cell.t == 1.0) has_t1 = true;
  }
  if (!has_t1) throw ValidationError("self_similarity_check: report lacks t = 1 cells");

  const CellStats& base = report.cell(r_max, 1.0);
  if (!(base.variance > 0.0))
    throw ValidationError("self_similarity_check: zero variance at t = 1");

  SelfSimilarityCheck out;
  for (const auto& cell : report.cells) {
    if (cell.r != r_max) continue;
    const double ratio = cell.variance / base.variance;
    const double target = std::pow(cell.t, 2.0 * H);
    out.t_values.push_back(cell.t);
    out.ratio.push_back(ratio);
    out.target.push_back(target);
    const double rel_t = cell.variance > 0.0 ? cell.variance_stderr / cell.variance : 0.0;
    const double rel_1 = base.variance_stderr / base.variance;
    out.ratio_stderr.push_back(ratio * std::sqrt(rel_t * rel_t + rel_1 * rel_1));
    if (cell.t != 1.0)
      out.max_abs_deviation = std::max(out.max_abs_deviation, std::abs(ratio - target));
  }
  return out;
}

DistributionComparison distribution_compare(const std::vector<double>& empirical,
                                            const std::vector<double>& limit) {
  if (empirical.size() < 500 || limit.size() < 500)
    throw ValidationError("distribution_compare: need >= 500 samples per side");
  const MomentAccumulator ea = accumulate(empirical);
  const MomentAccumulator la = accumulate(limit);
  if (!(ea.variance() > 0.0) || !(la.variance() > 0.0))
    throw ValidationError("distribution_compare: degenerate (zero-variance) input");

  auto standardize = [](const std::vector<double>& xs, const MomentAccumulator& acc) {
    const double sd = std::sqrt(acc.variance());
    std::vector<double> out(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out[i] = (xs[i] - acc.mean) / sd;
    return out;
  };

  DistributionComparison out;
  out.ks_distance = ks_distance(standardize(empirical, ea), standardize(limit, la));
  out.ks_critical_5pct = ks_critical_5pct(empirical.size(), limit.size());
  out.mean_gap = ea.mean / std::sqrt(ea.variance()) - la.mean / std::sqrt(la.variance());
  out.variance_gap = 0.0;
  out.skewness_gap = ea.skewness() - la.skewness();
  out.kurtosis_gap = ea.excess_kurtosis() - la.excess_kurtosis();
  return out;
}

std::string report_to_json(const ExperimentReport& report) {
  nlohmann::ordered_json doc;
  doc["software_version"] = report.software_version;
  doc["config_hash"] = report.config_hash;
  doc["base_seed"] = report.base_seed;
  doc["validity_mode"] = report.validity_mode;
  doc["n"] = report.n;
  doc["gamma_lower"] = report.gamma_lower;
  doc["hurst_estimate"] = {{"value", report.hurst_estimate.value},
                           {"ci_low", report.hurst_estimate.ci_low},
                           {"ci_high", report.hurst_estimate.ci_high},
                           {"slope_r2", report.hurst_estimate.slope_r2},
                           {"plausible", report.hurst_estimate.plausible}};
  doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    doc["cells"].push_back({{"r", c.r},
                            {"t", c.t},
                            {"replicate_count", c.count},
                            {"mean", c.mean},
                            {"variance", c.variance},
                            {"variance_stderr", c.variance_stderr},
                            {"stderr", c.stderr_of_mean},
                            {"skewness", c.skewness},
                            {"excess_kurtosis", c.excess_kurtosis}});
  }
  return doc.dump(2);
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream ss;
  ss.precision(12);
  ss << "r,t,replicate_count,mean,variance,stderr\r\n";
  for (const auto& c : report.cells)
    ss << c.r << "," << c.t << "," << c.count << "," << c.mean << "," << c.variance << ","
       << c.stderr_of_mean << "\r\n";
  return ss.str();
}

}  // namespace lrf
