#pragma once

#include "fequiv/grid.hpp"
#include "fequiv/scenarios.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fequiv {

enum class TestKind {
  mean_iid,
  mean_dependent,
  re_mean,
  re_variance,
  tost_bootstrap,
  tost_asymptotic,
  re_tost_mean,
  re_tost_variance,
};

std::string to_string(TestKind kind);
TestKind parse_test_kind(const std::string& name);
/// Kinds that consume paired random-effects data (the others take two samples).
bool uses_paired_data(TestKind kind);

enum class ScenarioFamily { subinterval, fogarty_null, fogarty_power };
std::string to_string(ScenarioFamily family);

/// Data-generating scenario. `a`, `b1`, `b2` drive the subinterval family;
/// `index` picks a scenario of the two random-effects families.
struct ScenarioSpec {
  ScenarioFamily family = ScenarioFamily::subinterval;
  double a = 0.2;
  double b1 = 0.46;
  double b2 = 0.54;
  int index = 1;
  std::size_t m = 100;
  std::size_t n = 100;
  /// Functional AR(1) coefficient linking consecutive curves of a sample.
  double ar = 0.0;
  REDesign design;
  std::size_t basis_count = 21;
  int basis_degree = 3;
};

/// Mean functions (mu_1, mu_2) and individual-error variances (sigma_1^2, sigma_2^2).
struct ScenarioFunctions {
  GridFunction mu1;
  GridFunction mu2;
  GridFunction sigma2_1;
  GridFunction sigma2_2;
};
ScenarioFunctions scenario_functions(const ScenarioSpec& spec, const GridPtr& grid);

/// Parses "equispaced:<p>" or "midpoint:<p>".
GridPtr parse_grid(const std::string& text);

/// Every knob of a simulation or single-dataset run.
///
/// The flat `key = value` text form uses the names returned by
/// config_keys(); lists are comma separated.
struct ExperimentConfig {
  std::vector<TestKind> methods{TestKind::mean_iid};
  ScenarioSpec scenario;
  /// "", "a", "j" (b1 = 0.5 - 0.08 j, b2 = 0.5 + 0.08 j) or "index".
  std::string sweep;
  std::vector<double> sweep_values;
  std::string grid = "equispaced:101";
  double band_lower = -0.2;
  double band_upper = 0.2;
  double ratio_lower = 0.5;
  double ratio_upper = 2.0;
  std::size_t nsim = 1000;
  std::size_t replicates = 300;
  double alpha = 0.05;
  double c = 0.005;
  /// 0 selects ceil(size^block_exponent).
  std::size_t block_length = 0;
  double block_exponent = 1.0 / 3.0;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  /// Optional real data; when set, one dataset is read and tested once.
  std::string data_first;
  std::string data_second;
  std::string data_paired;
  std::string results_path;
  std::string plot_path;
  std::string report_path;
};

/// Recognized configuration keys, in echo order.
const std::vector<std::string>& config_keys();
/// Sets one key; throws InvalidArgumentError for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);
/// Reads `key = value` lines ('#' starts a comment). Throws ParseError.
std::vector<std::pair<std::string, std::string>> read_settings(std::istream& in, const std::string& name);
std::vector<std::pair<std::string, std::string>> read_settings_file(const std::string& path);
/// Checks ranges and cross-field consistency.
void validate(const ExperimentConfig& cfg);
/// Resolved settings that determine results (worker count and output paths excluded).
std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg);

/// One test outcome of one run. For TOST kinds statistic and quantile are NaN.
struct RunRecord {
  bool reject_null = false;
  double statistic = 0.0;
  double quantile = 0.0;
};

struct MethodOutcome {
  TestKind method;
  std::vector<RunRecord> runs;
  /// rejections / nsim.
  double rejection_rate = 0.0;
  /// sqrt(p (1 - p) / nsim).
  double standard_error = 0.0;
  /// Wall-clock mean per test; not part of the reproducible report body.
  double mean_runtime_ms = 0.0;
};

struct ScenarioOutcome {
  std::string label;
  double parameter = 0.0;
  std::vector<MethodOutcome> methods;
};

struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> config;
  std::uint64_t seed = 0;
  std::size_t nsim = 0;
  std::vector<ScenarioOutcome> scenarios;
};

/// Scenario variants the sweep expands to, labelled, with their parameter value.
std::vector<std::pair<ScenarioSpec, double>> expand_sweep(const ExperimentConfig& cfg);

/// Runs every (scenario, run, method). Run i of every scenario uses data seed
/// derive_seed(derive_seed(seed, i), 0), so methods and sweep points share
/// datasets; method k's bootstrap uses derive_seed(derive_seed(seed, i), 1 + kind).
ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Dataset for run `run` of a scenario, as generated inside run_experiment.
std::pair<FunctionalSample, FunctionalSample> iid_dataset(const ExperimentConfig& cfg, const ScenarioSpec& spec,
                                                          std::size_t run);
PairedRESample paired_dataset(const ExperimentConfig& cfg, const ScenarioSpec& spec, std::size_t run);

/// Deterministic text report: config echo, per-scenario rates and per-run records.
void write_report(std::ostream& out, const ExperimentReport& report);
/// CSV: scenario,parameter,method,rejection_rate,se,runtime_ms.
void write_results_csv(std::ostream& out, const ExperimentReport& report);
/// CSV for plotting: parameter,<method>... with rejection rates as y values.
void write_plot_csv(std::ostream& out, const ExperimentReport& report);

}  // namespace fequiv
