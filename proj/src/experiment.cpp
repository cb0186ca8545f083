#include "fequiv/experiment.hpp"

#include "fequiv/csv.hpp"
#include "fequiv/error.hpp"
#include "fequiv/mean_test.hpp"
#include "fequiv/parallel.hpp"
#include "fequiv/random.hpp"
#include "fequiv/random_effects.hpp"
#include "fequiv/tost.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace fequiv {

namespace {

constexpr std::pair<TestKind, const char*> kKindNames[] = {
    {TestKind::mean_iid, "mean-iid"},
    {TestKind::mean_dependent, "mean-dependent"},
    {TestKind::re_mean, "re-mean"},
    {TestKind::re_variance, "re-variance"},
    {TestKind::tost_bootstrap, "tost-bootstrap"},
    {TestKind::tost_asymptotic, "tost-asymptotic"},
    {TestKind::re_tost_mean, "re-tost-mean"},
    {TestKind::re_tost_variance, "re-tost-variance"},
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');)
    if (auto t = trim(item); !t.empty()) out.push_back(t);
  return out;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& value) {
  const auto v = trim(value);
  Int out{};
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc() || p != v.data() + v.size())
    throw InvalidArgumentError(key + ": expected an integer, got '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const InvalidArgumentError&) {
    throw InvalidArgumentError(key + ": expected a number, got '" + value + "'");
  }
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + format_double(v[i]);
  return out;
}

std::string format_record_value(double x) { return std::isnan(x) ? "-" : format_double(x); }

struct ScenarioContext {
  GridPtr grid;
  ScenarioFunctions functions;
  BasisProcess process;
};

ScenarioContext make_context(const ExperimentConfig& cfg, const ScenarioSpec& spec) {
  GridPtr grid = parse_grid(cfg.grid);
  auto functions = scenario_functions(spec, grid);
  BasisProcess process(grid, BSplineBasis(spec.basis_count, spec.basis_degree));
  return {grid, std::move(functions), std::move(process)};
}

std::uint64_t data_seed(const ExperimentConfig& cfg, std::size_t run) { return derive_seed(derive_seed(cfg.seed, run), 0); }

std::pair<FunctionalSample, FunctionalSample> make_iid(const ScenarioContext& ctx, const ScenarioSpec& spec,
                                                       std::uint64_t seed) {
  return {bspline_curve_sample(ctx.functions.mu1, spec.m, ctx.process, derive_seed(seed, 0), spec.ar),
          bspline_curve_sample(ctx.functions.mu2, spec.n, ctx.process, derive_seed(seed, 1), spec.ar)};
}

PairedRESample make_paired(const ScenarioContext& ctx, const ScenarioSpec& spec, std::uint64_t seed) {
  const auto& f = ctx.functions;
  return re_sample_gen(spec.design, f.mu1, f.mu2, f.sigma2_1, f.sigma2_2, ctx.process, derive_seed(seed, 2));
}

struct Dataset {
  std::optional<std::pair<FunctionalSample, FunctionalSample>> iid;
  std::optional<PairedRESample> paired;
};

RunRecord run_method(TestKind kind, const Dataset& data, const ExperimentConfig& cfg, std::uint64_t seed,
                     std::size_t workers) {
  const auto& grid = data.iid ? data.iid->first.grid() : data.paired->grid();
  const auto mean_band = EquivalenceBand::constant(grid, cfg.band_lower, cfg.band_upper);
  const auto ratio_band = EquivalenceBand::constant(grid, cfg.ratio_lower, cfg.ratio_upper);
  const RETestConfig re_cfg{cfg.alpha, cfg.replicates, cfg.c, workers};
  TostConfig tost_cfg{cfg.alpha, cfg.replicates, TostVariant::bootstrap_percentile, workers};
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  auto from_test = [](const TestResult& r) { return RunRecord{r.reject_null, r.statistic, r.quantile}; };
  auto from_tost = [&](const TostResult& r) { return RunRecord{r.reject_null, nan, nan}; };

  switch (kind) {
    case TestKind::mean_iid:
    case TestKind::mean_dependent: {
      MeanTestConfig mc;
      mc.alpha = cfg.alpha;
      mc.replicates = cfg.replicates;
      mc.c = cfg.c;
      mc.workers = workers;
      if (kind == TestKind::mean_dependent) {
        mc.mode = BootstrapMode::multiplier_block;
        if (cfg.block_length > 0) mc.block_lengths = BlockLengths{cfg.block_length, cfg.block_length};
        mc.block_exponent_first = mc.block_exponent_second = cfg.block_exponent;
      }
      return from_test(mean_test(data.iid->first, data.iid->second, mean_band, mc, seed));
    }
    case TestKind::re_mean:
      return from_test(re_mean_test(*data.paired, mean_band, re_cfg, seed));
    case TestKind::re_variance:
      return from_test(re_variance_test(*data.paired, ratio_band, re_cfg, seed));
    case TestKind::tost_bootstrap:
      return from_tost(tost_test(data.iid->first, data.iid->second, mean_band, tost_cfg, seed));
    case TestKind::tost_asymptotic:
      tost_cfg.variant = TostVariant::asymptotic_normal;
      return from_tost(tost_test(data.iid->first, data.iid->second, mean_band, tost_cfg, seed));
    case TestKind::re_tost_mean:
      return from_tost(re_tost_mean(*data.paired, mean_band, tost_cfg, seed));
    case TestKind::re_tost_variance:
      return from_tost(re_tost_variance(*data.paired, ratio_band, tost_cfg, seed));
  }
  throw InvalidArgumentError("unknown test kind");
}

bool has_real_data(const ExperimentConfig& cfg) {
  return !cfg.data_paired.empty() || !cfg.data_first.empty() || !cfg.data_second.empty();
}

}  // namespace

std::string to_string(TestKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "unknown";
}

TestKind parse_test_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  throw InvalidArgumentError("unknown test kind '" + name + "'");
}

bool uses_paired_data(TestKind kind) {
  return kind == TestKind::re_mean || kind == TestKind::re_variance || kind == TestKind::re_tost_mean ||
         kind == TestKind::re_tost_variance;
}

std::string to_string(ScenarioFamily family) {
  switch (family) {
    case ScenarioFamily::subinterval: return "subinterval";
    case ScenarioFamily::fogarty_null: return "fogarty-null";
    case ScenarioFamily::fogarty_power: return "fogarty-power";
  }
  return "unknown";
}

ScenarioFunctions scenario_functions(const ScenarioSpec& spec, const GridPtr& grid) {
  switch (spec.family) {
    case ScenarioFamily::subinterval: {
      auto sigma2 = surrogate_sigma2_1(grid);
      return {GridFunction::constant(grid, 0.0), mu2_subinterval(spec.a, spec.b1, spec.b2, grid), sigma2, sigma2};
    }
    case ScenarioFamily::fogarty_null:
    case ScenarioFamily::fogarty_power: {
      const bool null = spec.family == ScenarioFamily::fogarty_null;
      auto mu1 = surrogate_mu1(grid);
      auto shift = null ? fogarty_null_shift(spec.index, grid) : fogarty_power_shift(spec.index, grid);
      auto ratio = null ? fogarty_ratio_null(spec.index, grid) : fogarty_ratio_power(spec.index, grid);
      auto sigma2_1 = surrogate_sigma2_1(grid);
      GridFunction sigma2_2(grid, sigma2_1.values().cwiseQuotient(ratio.values()));
      return {mu1, mu1 + shift, std::move(sigma2_1), std::move(sigma2_2)};
    }
  }
  throw InvalidArgumentError("unknown scenario family");
}

GridPtr parse_grid(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgumentError("grid must be equispaced:<p> or midpoint:<p>");
  const auto kind = trim(text.substr(0, colon));
  const auto p = parse_int<std::size_t>("grid", text.substr(colon + 1));
  if (kind == "equispaced") return Grid::equispaced(p);
  if (kind == "midpoint") return Grid::midpoints(p);
  throw InvalidArgumentError("unknown grid kind '" + kind + "'");
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys{
      "methods",   "family",       "a",           "b1",          "b2",          "index",       "m",
      "n",         "ar",           "groups",      "per_group",   "group_variance", "cross_correlation",
      "basis_count", "basis_degree", "sweep",     "sweep_values", "grid",       "band_lower",  "band_upper",
      "ratio_lower", "ratio_upper", "nsim",       "replicates",  "alpha",       "c",           "block_length",
      "block_exponent", "seed",     "workers",    "data_first",  "data_second", "data_paired", "results",
      "plot",      "report"};
  return keys;
}

void apply_setting(ExperimentConfig& cfg, const std::string& key_in, const std::string& value_in) {
  const auto key = trim(key_in);
  const auto value = trim(value_in);
  auto& s = cfg.scenario;
  if (key == "methods") {
    cfg.methods.clear();
    for (const auto& m : split_list(value)) cfg.methods.push_back(parse_test_kind(m));
  } else if (key == "family") {
    if (value == "subinterval") s.family = ScenarioFamily::subinterval;
    else if (value == "fogarty-null") s.family = ScenarioFamily::fogarty_null;
    else if (value == "fogarty-power") s.family = ScenarioFamily::fogarty_power;
    else throw InvalidArgumentError("family: unknown scenario family '" + value + "'");
  } else if (key == "a") s.a = parse_real(key, value);
  else if (key == "b1") s.b1 = parse_real(key, value);
  else if (key == "b2") s.b2 = parse_real(key, value);
  else if (key == "index") s.index = parse_int<int>(key, value);
  else if (key == "m") s.m = parse_int<std::size_t>(key, value);
  else if (key == "n") s.n = parse_int<std::size_t>(key, value);
  else if (key == "ar") s.ar = parse_real(key, value);
  else if (key == "groups") s.design.groups = parse_int<std::size_t>(key, value);
  else if (key == "per_group") s.design.per_group = parse_int<std::size_t>(key, value);
  else if (key == "group_variance") s.design.group_variance = parse_real(key, value);
  else if (key == "cross_correlation") s.design.cross_correlation = parse_real(key, value);
  else if (key == "basis_count") s.basis_count = parse_int<std::size_t>(key, value);
  else if (key == "basis_degree") s.basis_degree = parse_int<int>(key, value);
  else if (key == "sweep") {
    if (value != "" && value != "a" && value != "j" && value != "index")
      throw InvalidArgumentError("sweep: expected a, j or index");
    cfg.sweep = value;
  } else if (key == "sweep_values") {
    cfg.sweep_values.clear();
    for (const auto& v : split_list(value)) cfg.sweep_values.push_back(parse_real(key, v));
  } else if (key == "grid") {
    parse_grid(value);
    cfg.grid = value;
  } else if (key == "band_lower") cfg.band_lower = parse_real(key, value);
  else if (key == "band_upper") cfg.band_upper = parse_real(key, value);
  else if (key == "ratio_lower") cfg.ratio_lower = parse_real(key, value);
  else if (key == "ratio_upper") cfg.ratio_upper = parse_real(key, value);
  else if (key == "nsim") cfg.nsim = parse_int<std::size_t>(key, value);
  else if (key == "replicates") cfg.replicates = parse_int<std::size_t>(key, value);
  else if (key == "alpha") cfg.alpha = parse_real(key, value);
  else if (key == "c") cfg.c = parse_real(key, value);
  else if (key == "block_length") cfg.block_length = parse_int<std::size_t>(key, value);
  else if (key == "block_exponent") cfg.block_exponent = parse_real(key, value);
  else if (key == "seed") cfg.seed = parse_int<std::uint64_t>(key, value);
  else if (key == "workers") cfg.workers = parse_int<std::size_t>(key, value);
  else if (key == "data_first") cfg.data_first = value;
  else if (key == "data_second") cfg.data_second = value;
  else if (key == "data_paired") cfg.data_paired = value;
  else if (key == "results") cfg.results_path = value;
  else if (key == "plot") cfg.plot_path = value;
  else if (key == "report") cfg.report_path = value;
  else throw InvalidArgumentError("unknown configuration key '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> read_settings(std::istream& in, const std::string& name) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t number = 0;
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(name, number, "expected key = value");
    auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError(name, number, "empty key");
    out.emplace_back(std::move(key), trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_settings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return read_settings(in, path);
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.methods.empty()) throw InvalidArgumentError("methods: at least one test kind is required");
  if (cfg.nsim < 1) throw InvalidArgumentError("nsim must be at least 1");
  if (cfg.replicates < 1) throw InvalidArgumentError("replicates must be at least 1");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) throw InvalidArgumentError("alpha must lie in (0, 0.5)");
  if (!(cfg.c >= 0.0)) throw InvalidArgumentError("c must be nonnegative");
  if (!(cfg.band_lower < cfg.band_upper)) throw InvalidArgumentError("band_lower must be below band_upper");
  if (!(0.0 < cfg.ratio_lower && cfg.ratio_lower < cfg.ratio_upper))
    throw InvalidArgumentError("ratio band must satisfy 0 < ratio_lower < ratio_upper");
  if (!(cfg.block_exponent > 0.0 && cfg.block_exponent < 1.0))
    throw InvalidArgumentError("block_exponent must lie in (0,1)");
  if (!cfg.sweep.empty() && cfg.sweep_values.empty()) throw InvalidArgumentError("sweep needs sweep_values");
  if (cfg.sweep.empty() && !cfg.sweep_values.empty()) throw InvalidArgumentError("sweep_values given without sweep");
  parse_grid(cfg.grid);

  const bool paired = std::any_of(cfg.methods.begin(), cfg.methods.end(), uses_paired_data);
  const bool iid = std::any_of(cfg.methods.begin(), cfg.methods.end(), [](TestKind k) { return !uses_paired_data(k); });
  if (has_real_data(cfg)) {
    if (!cfg.sweep.empty()) throw InvalidArgumentError("a sweep cannot be combined with input data files");
    if (paired && cfg.data_paired.empty()) throw InvalidArgumentError("random-effects methods need data_paired");
    if (iid && (cfg.data_first.empty() || cfg.data_second.empty()))
      throw InvalidArgumentError("two-sample methods need data_first and data_second");
    return;
  }
  const auto& s = cfg.scenario;
  if (iid && (s.m < 2 || s.n < 2)) throw InvalidArgumentError("m and n must be at least 2");
  if (paired && (s.design.groups < 2 || s.design.per_group < 2))
    throw InvalidArgumentError("groups and per_group must be at least 2");
  if (cfg.block_length > 0 && (cfg.block_length > s.m || cfg.block_length > s.n))
    throw InvalidArgumentError("block_length exceeds a sample size");
  // Every sweep point must describe a valid scenario.
  const auto grid = parse_grid(cfg.grid);
  for (const auto& [spec, value] : expand_sweep(cfg)) scenario_functions(spec, grid);
}

std::vector<std::pair<std::string, std::string>> echo_config(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  const auto& s = cfg.scenario;
  std::string methods;
  for (std::size_t i = 0; i < cfg.methods.size(); ++i) methods += (i ? "," : "") + to_string(cfg.methods[i]);
  out.emplace_back("methods", methods);
  out.emplace_back("family", to_string(s.family));
  out.emplace_back("a", format_double(s.a));
  out.emplace_back("b1", format_double(s.b1));
  out.emplace_back("b2", format_double(s.b2));
  out.emplace_back("index", std::to_string(s.index));
  out.emplace_back("m", std::to_string(s.m));
  out.emplace_back("n", std::to_string(s.n));
  out.emplace_back("ar", format_double(s.ar));
  out.emplace_back("groups", std::to_string(s.design.groups));
  out.emplace_back("per_group", std::to_string(s.design.per_group));
  out.emplace_back("group_variance", format_double(s.design.group_variance));
  out.emplace_back("cross_correlation", format_double(s.design.cross_correlation));
  out.emplace_back("basis_count", std::to_string(s.basis_count));
  out.emplace_back("basis_degree", std::to_string(s.basis_degree));
  out.emplace_back("sweep", cfg.sweep);
  out.emplace_back("sweep_values", join(cfg.sweep_values));
  out.emplace_back("grid", cfg.grid);
  out.emplace_back("band_lower", format_double(cfg.band_lower));
  out.emplace_back("band_upper", format_double(cfg.band_upper));
  out.emplace_back("ratio_lower", format_double(cfg.ratio_lower));
  out.emplace_back("ratio_upper", format_double(cfg.ratio_upper));
  out.emplace_back("nsim", std::to_string(cfg.nsim));
  out.emplace_back("replicates", std::to_string(cfg.replicates));
  out.emplace_back("alpha", format_double(cfg.alpha));
  out.emplace_back("c", format_double(cfg.c));
  out.emplace_back("block_length", std::to_string(cfg.block_length));
  out.emplace_back("block_exponent", format_double(cfg.block_exponent));
  out.emplace_back("seed", std::to_string(cfg.seed));
  out.emplace_back("data_first", cfg.data_first);
  out.emplace_back("data_second", cfg.data_second);
  out.emplace_back("data_paired", cfg.data_paired);
  return out;
}

std::vector<std::pair<ScenarioSpec, double>> expand_sweep(const ExperimentConfig& cfg) {
  std::vector<std::pair<ScenarioSpec, double>> out;
  const auto& base = cfg.scenario;
  if (cfg.sweep.empty()) {
    out.emplace_back(base, base.family == ScenarioFamily::subinterval ? base.a : static_cast<double>(base.index));
    return out;
  }
  for (double v : cfg.sweep_values) {
    ScenarioSpec s = base;
    if (cfg.sweep == "a") {
      s.a = v;
    } else if (cfg.sweep == "j") {
      s.b1 = 0.5 - 0.08 * v;
      s.b2 = 0.5 + 0.08 * v;
    } else {
      s.index = static_cast<int>(std::lround(v));
      if (static_cast<double>(s.index) != v) throw InvalidArgumentError("index sweep values must be integers");
    }
    out.emplace_back(s, v);
  }
  return out;
}

std::pair<FunctionalSample, FunctionalSample> iid_dataset(const ExperimentConfig& cfg, const ScenarioSpec& spec,
                                                          std::size_t run) {
  return make_iid(make_context(cfg, spec), spec, data_seed(cfg, run));
}

PairedRESample paired_dataset(const ExperimentConfig& cfg, const ScenarioSpec& spec, std::size_t run) {
  return make_paired(make_context(cfg, spec), spec, data_seed(cfg, run));
}

ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  ExperimentReport report;
  report.config = echo_config(cfg);
  report.seed = cfg.seed;

  const bool need_paired = std::any_of(cfg.methods.begin(), cfg.methods.end(), uses_paired_data);
  const bool need_iid =
      std::any_of(cfg.methods.begin(), cfg.methods.end(), [](TestKind k) { return !uses_paired_data(k); });
  const bool real = has_real_data(cfg);
  const std::size_t nsim = real ? 1 : cfg.nsim;
  report.nsim = nsim;

  Dataset real_data;
  if (real) {
    if (need_iid) real_data.iid.emplace(read_sample_csv(cfg.data_first), read_sample_csv(cfg.data_second));
    if (need_paired) real_data.paired.emplace(read_paired_csv(cfg.data_paired));
  }

  const std::size_t run_workers = std::clamp<std::size_t>(cfg.workers, 1, nsim);
  const std::size_t replicate_workers = std::max<std::size_t>(1, cfg.workers / run_workers);

  const auto points = real ? std::vector<std::pair<ScenarioSpec, double>>{{cfg.scenario, 0.0}} : expand_sweep(cfg);
  for (const auto& [spec, parameter] : points) {
    ScenarioOutcome outcome;
    outcome.parameter = parameter;
    outcome.label = real ? "data" : (cfg.sweep.empty() ? "base" : cfg.sweep + "=" + format_double(parameter));
    std::optional<ScenarioContext> ctx;
    if (!real) ctx.emplace(make_context(cfg, spec));

    const std::size_t k_methods = cfg.methods.size();
    std::vector<std::vector<RunRecord>> records(k_methods, std::vector<RunRecord>(nsim));
    std::vector<std::vector<double>> millis(k_methods, std::vector<double>(nsim));

    parallel_for(nsim, run_workers, [&](std::size_t run) {
      try {
        const std::uint64_t run_seed = derive_seed(cfg.seed, run);
        Dataset generated;
        if (!real) {
          if (need_iid) generated.iid.emplace(make_iid(*ctx, spec, derive_seed(run_seed, 0)));
          if (need_paired) generated.paired.emplace(make_paired(*ctx, spec, derive_seed(run_seed, 0)));
        }
        const Dataset& data = real ? real_data : generated;
        for (std::size_t k = 0; k < k_methods; ++k) {
          const auto kind = cfg.methods[k];
          const auto start = std::chrono::steady_clock::now();
          records[k][run] =
              run_method(kind, data, cfg, derive_seed(run_seed, 1 + static_cast<std::uint64_t>(kind)), replicate_workers);
          millis[k][run] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        }
      } catch (const Error& e) {
        throw Error("scenario " + outcome.label + ", run " + std::to_string(run) + ": " + e.what());
      }
    });

    for (std::size_t k = 0; k < k_methods; ++k) {
      MethodOutcome mo;
      mo.method = cfg.methods[k];
      mo.runs = std::move(records[k]);
      const auto rejections = std::count_if(mo.runs.begin(), mo.runs.end(), [](const RunRecord& r) { return r.reject_null; });
      mo.rejection_rate = static_cast<double>(rejections) / static_cast<double>(nsim);
      mo.standard_error = std::sqrt(mo.rejection_rate * (1.0 - mo.rejection_rate) / static_cast<double>(nsim));
      double total = 0.0;
      for (double t : millis[k]) total += t;
      mo.mean_runtime_ms = total / static_cast<double>(nsim);
      outcome.methods.push_back(std::move(mo));
    }
    report.scenarios.push_back(std::move(outcome));
  }
  return report;
}

void write_report(std::ostream& out, const ExperimentReport& report) {
  out << "# equivalence test experiment report\n";
  for (const auto& [k, v] : report.config) out << k << " = " << v << '\n';
  for (const auto& sc : report.scenarios) {
    out << "\n[scenario " << sc.label << "]\n";
    out << "parameter = " << format_double(sc.parameter) << '\n';
    for (const auto& mo : sc.methods) {
      const auto rejections =
          std::count_if(mo.runs.begin(), mo.runs.end(), [](const RunRecord& r) { return r.reject_null; });
      out << "method " << to_string(mo.method) << ": rejections = " << rejections << '/' << mo.runs.size()
          << ", rate = " << format_double(mo.rejection_rate) << ", se = " << format_double(mo.standard_error) << '\n';
    }
    out << "run,method,reject_null,statistic,quantile\n";
    for (const auto& mo : sc.methods)
      for (std::size_t r = 0; r < mo.runs.size(); ++r)
        out << r << ',' << to_string(mo.method) << ',' << (mo.runs[r].reject_null ? 1 : 0) << ','
            << format_record_value(mo.runs[r].statistic) << ',' << format_record_value(mo.runs[r].quantile) << '\n';
  }
}

void write_results_csv(std::ostream& out, const ExperimentReport& report) {
  out << "scenario,parameter,method,rejection_rate,se,runtime_ms\n";
  for (const auto& sc : report.scenarios)
    for (const auto& mo : sc.methods)
      out << sc.label << ',' << format_double(sc.parameter) << ',' << to_string(mo.method) << ','
          << format_double(mo.rejection_rate) << ',' << format_double(mo.standard_error) << ','
          << format_double(mo.mean_runtime_ms) << '\n';
}

void write_plot_csv(std::ostream& out, const ExperimentReport& report) {
  out << "parameter";
  if (!report.scenarios.empty())
    for (const auto& mo : report.scenarios.front().methods) out << ',' << to_string(mo.method);
  out << '\n';
  for (const auto& sc : report.scenarios) {
    out << format_double(sc.parameter);
    for (const auto& mo : sc.methods) out << ',' << format_double(mo.rejection_rate);
    out << '\n';
  }
}

}  // namespace fequiv
