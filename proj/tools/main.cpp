// Command-line front end: synth | scaling | limit-sample | integrability.
// Configuration is a flat key=value text file with dotted keys; every
// flag override and every consumed key is echoed into a resolved-config
// file written next to the outputs. Exit codes: 0 success, 2 validation,
// 3 precision-not-reached, 4 I/O.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lrf/errors.hpp"
#include "lrf/experiments.hpp"
#include "lrf/field.hpp"
#include "lrf/limit_laws.hpp"
#include "lrf/rng.hpp"
#include "lrf/stats.hpp"
#include "lrf/synthesis.hpp"
#include "lrf/windows.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

class Config {
 public:
  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw lrf::IoError("cannot open config file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      const auto last = line.find_last_not_of(" \t\r");
      line = line.substr(first, last - first + 1);
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw lrf::ValidationError("config line " + std::to_string(lineno) +
                                   ": expected key=value, got '" + line + "'");
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw lrf::ValidationError("config line " + std::to_string(lineno) + ": empty key");
      entries_[key] = value;
    }
  }

  void set(const std::string& key, const std::string& value) { entries_[key] = value; }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::string take(const std::string& key, const std::string& fallback) {
    consumed_.insert(key);
    auto it = entries_.find(key);
    return it == entries_.end() ? fallback : it->second;
  }

  double take_double(const std::string& key, double fallback) {
    const std::string raw = take(key, "");
    if (raw.empty()) return fallback;
    return parse_double(key, raw);
  }

  long long take_int(const std::string& key, long long fallback) {
    const std::string raw = take(key, "");
    if (raw.empty()) return fallback;
    try {
      std::size_t pos = 0;
      const long long v = std::stoll(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      throw lrf::ValidationError("config key '" + key + "': not an integer: '" + raw + "'");
    }
  }

  std::uint64_t take_u64(const std::string& key, std::uint64_t fallback) {
    const std::string raw = take(key, "");
    if (raw.empty()) return fallback;
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      throw lrf::ValidationError("config key '" + key + "': not an unsigned integer: '" + raw + "'");
    }
  }

  bool take_bool(const std::string& key, bool fallback) {
    const std::string raw = take(key, "");
    if (raw.empty()) return fallback;
    if (raw == "true" || raw == "1") return true;
    if (raw == "false" || raw == "0") return false;
    throw lrf::ValidationError("config key '" + key + "': expected true/false, got '" + raw + "'");
  }

  std::vector<double> take_list(const std::string& key, std::vector<double> fallback) {
    const std::string raw = take(key, "");
    if (raw.empty()) return fallback;
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(parse_double(key, item));
    if (out.empty()) throw lrf::ValidationError("config key '" + key + "': empty list");
    return out;
  }

  void reject_unknown() const {
    for (const auto& [key, value] : entries_)
      if (!consumed_.count(key))
        throw lrf::ValidationError("unknown config key: '" + key + "'");
  }

  // Every consumed key with its effective value, for the resolved-config echo.
  std::map<std::string, std::string> resolved() const {
    std::map<std::string, std::string> out;
    for (const auto& key : consumed_) {
      auto it = entries_.find(key);
      if (it != entries_.end()) out[key] = it->second;
    }
    return out;
  }

 private:
  static double parse_double(const std::string& key, const std::string& raw) {
    try {
      std::size_t pos = 0;
      const double v = std::stod(raw, &pos);
      if (pos != raw.size()) throw std::invalid_argument(raw);
      return v;
    } catch (const std::exception&) {
      throw lrf::ValidationError("config key '" + key + "': not a number: '" + raw + "'");
    }
  }

  std::map<std::string, std::string> entries_;
  std::set<std::string> consumed_;
};

struct CommonFlags {
  std::string config_path;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::string validity_mode;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_path, "key=value config file");
  cmd->add_option("--out", flags->out_dir, "output directory");
  cmd->add_option("--seed", flags->seed, "base seed override");
  cmd->add_option("--threads", flags->threads, "worker cap for replicate loops")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--validity-mode", flags->validity_mode, "theorem|window")
      ->check(CLI::IsMember({"theorem", "window"}));
}

Config load_config(const CommonFlags& flags) {
  Config cfg;
  if (!flags.config_path.empty()) cfg.load_file(flags.config_path);
  if (flags.seed) cfg.set("seed", std::to_string(*flags.seed));
  if (!flags.validity_mode.empty()) cfg.set("mode", flags.validity_mode);
  return cfg;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw lrf::IoError("cannot open for writing: " + path.string());
  out << text;
  if (!out) throw lrf::IoError("write failed: " + path.string());
}

void write_resolved_config(const Config& cfg, const fs::path& dir, const std::string& name) {
  std::ostringstream ss;
  for (const auto& [key, value] : cfg.resolved()) ss << key << " = " << value << "\n";
  write_text(dir / (name + ".resolved.cfg"), ss.str());
}

fs::path ensure_out_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw lrf::IoError("cannot create output directory " + dir + ": " + ec.message());
  return p;
}

lrf::Window take_window(Config& cfg, int n) {
  const std::string kind = cfg.take("window.kind", "interval");
  if (kind == "interval") {
    if (n != 1) throw lrf::ValidationError("window.kind=interval requires params.n=1");
    return lrf::Window::interval(cfg.take_double("window.a", 1.0), cfg.take_double("window.b", 1.0));
  }
  if (kind == "ball") return lrf::Window::ball(n);
  if (kind == "box") return lrf::Window::box(n);
  throw lrf::ValidationError("window.kind must be interval|ball|box, got '" + kind + "'");
}

lrf::ScalingParams take_params(Config& cfg) {
  lrf::ScalingParams p;
  p.n = static_cast<int>(cfg.take_int("params.n", 1));
  p.kappa = static_cast<int>(cfg.take_int("params.kappa", 1));
  p.alpha = cfg.take_double("params.alpha", 0.4);
  p.beta = cfg.take_double("params.beta", 0.0);
  p.h1 = cfg.take_double("params.h1", 1.0);
  p.g0 = 1.0;  // Gaussian taper has g(0) = 1
  p.window = take_window(cfg, p.n);
  return p;
}

lrf::ValidityMode take_mode(Config& cfg) {
  const std::string mode = cfg.take("mode", "window");
  if (mode == "theorem") return lrf::ValidityMode::theorem;
  if (mode == "window") return lrf::ValidityMode::window;
  throw lrf::ValidationError("mode must be theorem|window, got '" + mode + "'");
}

int cmd_synth(const CommonFlags& flags) {
  Config cfg = load_config(flags);
  lrf::CovarianceModel model;
  model.n = static_cast<int>(cfg.take_int("params.n", 1));
  model.alpha = cfg.take_double("params.alpha", 0.4);
  const std::vector<double> shape_list =
      cfg.take_list("synth.shape", {1024.0});
  if (shape_list.size() != static_cast<std::size_t>(model.n))
    throw lrf::ValidationError("synth.shape must list one extent per dimension");
  std::array<std::size_t, 3> shape{1, 1, 1};
  for (std::size_t i = 0; i < shape_list.size(); ++i) {
    if (shape_list[i] < 1.0) throw lrf::ValidationError("synth.shape extents must be >= 1");
    shape[i] = static_cast<std::size_t>(shape_list[i]);
  }
  const double spacing = cfg.take_double("synth.spacing", 1.0);
  const std::uint64_t seed = cfg.take_u64("seed", 1);
  cfg.reject_unknown();

  const fs::path dir = ensure_out_dir(flags.out_dir);
  const lrf::LatticeField field = lrf::synthesize(model, shape, spacing, seed);
  lrf::FieldDumpMeta meta;
  meta.n = model.n;
  meta.shape = shape;
  meta.spacing = spacing;
  meta.alpha = model.alpha;
  meta.seed = seed;
  const fs::path path = dir / "field.bin";
  lrf::dump_field(field, meta, path.string());
  write_resolved_config(cfg, dir, "synth");
  std::cout << "wrote " << path.string() << " (+.hdr)\n";
  return 0;
}

int cmd_scaling(const CommonFlags& flags) {
  Config cfg = load_config(flags);
  lrf::ScalingExperimentConfig run;
  run.params = take_params(cfg);
  run.validity_mode = take_mode(cfg);
  run.radii = cfg.take_list("radii", run.radii);
  run.t_grid = cfg.take_list("t_grid", run.t_grid);
  run.replicates = static_cast<std::size_t>(cfg.take_int("replicates", 100));
  run.base_seed = cfg.take_u64("seed", 1);
  run.spacing = cfg.take_double("spacing", 1.0);
  run.sigma = cfg.take_double("sigma", 1.0);
  cfg.reject_unknown();

  const fs::path dir = ensure_out_dir(flags.out_dir);
  const lrf::ExperimentReport report = lrf::run_scaling(run, flags.threads);

  write_text(dir / "report.json", lrf::report_to_json(report));
  write_text(dir / "report.csv", lrf::report_to_csv(report));

  // Plot data: the regression inputs (unnormalized log variance) plus a
  // fitted-line sidecar so downstream plotting needs no refitting.
  std::ostringstream plot;
  plot.precision(12);
  plot << "log_r,log_variance\r\n";
  for (const auto& cell : report.cells) {
    if (cell.t != 1.0) continue;
    plot << std::log(cell.r) << ","
         << std::log(cell.variance / (cell.normalization * cell.normalization)) << "\r\n";
  }
  write_text(dir / "plot_data.csv", plot.str());

  ordered_json fit;
  fit["slope"] = 2.0 * report.n * report.hurst_estimate.value;
  fit["hurst"] = report.hurst_estimate.value;
  fit["hurst_ci_low"] = report.hurst_estimate.ci_low;
  fit["hurst_ci_high"] = report.hurst_estimate.ci_high;
  fit["r2"] = report.hurst_estimate.slope_r2;
  fit["plausible"] = report.hurst_estimate.plausible;
  write_text(dir / "plot_fit.json", fit.dump(2));
  write_resolved_config(cfg, dir, "scaling");

  std::cout << "hurst_estimate " << report.hurst_estimate.value << " [" << report.hurst_estimate.ci_low
            << ", " << report.hurst_estimate.ci_high << "]\n";
  return 0;
}

int cmd_limit_sample(const CommonFlags& flags) {
  Config cfg = load_config(flags);
  lrf::ScalingParams params = take_params(cfg);
  const lrf::ValidityMode mode = take_mode(cfg);
  params.validate(mode);
  const double t = cfg.take_double("limit.t", 1.0);
  const std::size_t count = static_cast<std::size_t>(cfg.take_int("limit.samples", 2000));
  lrf::LimitSampleGrid grid;
  grid.truncation_radius = cfg.take_double("limit.truncation_radius", grid.truncation_radius);
  grid.bins_per_axis = static_cast<int>(cfg.take_int("limit.bins", grid.bins_per_axis));
  const std::uint64_t seed = cfg.take_u64("seed", 1);
  lrf::McOptions mc;
  mc.samples = static_cast<std::size_t>(cfg.take_int("limit.covariance_samples", 400000));
  mc.seed = lrf::derive_seed(seed, 0x1001);
  cfg.reject_unknown();

  const fs::path dir = ensure_out_dir(flags.out_dir);
  const std::vector<double> samples = lrf::sample_limit(params, t, grid, seed, count);
  const lrf::McEstimate cov = lrf::limit_covariance(params, t, t, mc);

  std::ostringstream csv;
  csv.precision(12);
  csv << "value\r\n";
  for (double v : samples) csv << v << "\r\n";
  write_text(dir / "samples.csv", csv.str());

  const lrf::MomentAccumulator acc = lrf::accumulate(samples);
  ordered_json summary;
  summary["count"] = acc.count;
  summary["mean"] = acc.mean;
  summary["variance"] = acc.variance();
  summary["variance_stderr"] = acc.variance_stderr();
  summary["skewness"] = acc.skewness();
  summary["excess_kurtosis"] = acc.excess_kurtosis();
  summary["limit_covariance"] = cov.value;
  summary["limit_covariance_stderr"] = cov.stderr_;
  const double gap = std::abs(acc.variance() - cov.value);
  const double combined = 3.0 * std::sqrt(acc.variance_stderr() * acc.variance_stderr() +
                                          cov.stderr_ * cov.stderr_);
  summary["variance_within_3_stderr"] = gap <= combined + 0.05 * cov.value;
  write_text(dir / "summary.json", summary.dump(2));
  write_resolved_config(cfg, dir, "limit-sample");

  std::cout << "sample variance " << acc.variance() << ", limit covariance " << cov.value << "\n";
  return 0;
}

int cmd_integrability(const CommonFlags& flags) {
  Config cfg = load_config(flags);
  const int n = static_cast<int>(cfg.take_int("params.n", 1));
  const lrf::Window window = take_window(cfg, n);
  const std::vector<double> exponents = cfg.take_list("scan.p", {0.5, 1.0, 1.9});
  cfg.reject_unknown();

  const fs::path dir = ensure_out_dir(flags.out_dir);
  std::ostringstream csv;
  csv.precision(12);
  csv << "p,classification,fitted_tail_power,fit_r2,inner_integral\r\n";
  for (double p : exponents) {
    const lrf::IntegrabilityScan scan = lrf::integrability_scan(window, p);
    csv << p << "," << lrf::to_string(scan.classification) << "," << scan.fitted_tail_power << ","
        << scan.fit_r2 << "," << scan.inner_integral << "\r\n";
    std::cout << "p=" << p << " -> " << lrf::to_string(scan.classification) << "\n";
  }
  write_text(dir / "integrability.csv", csv.str());
  write_resolved_config(cfg, dir, "integrability");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"long-range dependent field functionals: synthesis, scaling, limit laws"};
  app.require_subcommand(1);

  CommonFlags synth_flags, scaling_flags, limit_flags, integ_flags;
  CLI::App* synth = app.add_subcommand("synth", "synthesize one field realization and dump it");
  add_common_flags(synth, &synth_flags);
  CLI::App* scaling = app.add_subcommand("scaling", "run the growing-window scaling experiment");
  add_common_flags(scaling, &scaling_flags);
  CLI::App* limit = app.add_subcommand("limit-sample", "draw from the limit process");
  add_common_flags(limit, &limit_flags);
  CLI::App* integ = app.add_subcommand("integrability", "classify spectral integrability exponents");
  add_common_flags(integ, &integ_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) return cmd_synth(synth_flags);
    if (scaling->parsed()) return cmd_scaling(scaling_flags);
    if (limit->parsed()) return cmd_limit_sample(limit_flags);
    if (integ->parsed()) return cmd_integrability(integ_flags);
    std::cerr << "error: no subcommand\n";
    return 2;
  } catch (const lrf::PrecisionError& e) {
    std::cerr << "precision error: " << e.what() << "\n";
    return 3;
  } catch (const lrf::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const lrf::ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const lrf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
