// Command-line front end: single-dataset tests, Monte Carlo studies and
// synthetic data generation.
//
//   fequiv test --kind mean-iid --first a.csv --second b.csv [--lower -0.2 --upper 0.2]
//   fequiv simulate --config study.cfg [--nsim 200 --workers 8 ...]
//   fequiv gen --config study.cfg --out-dir data/
//
// Exit codes: 0 equivalence decided, 1 not decided, 2 error. `simulate` and
// `gen` return 0 on success.

#include "fequiv/csv.hpp"
#include "fequiv/error.hpp"
#include "fequiv/experiment.hpp"
#include "fequiv/mean_test.hpp"
#include "fequiv/random_effects.hpp"
#include "fequiv/tost.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

namespace {

using fequiv::ExperimentConfig;
using fequiv::TestKind;

constexpr int kDecided = 0;
constexpr int kNotDecided = 1;
constexpr int kError = 2;

std::size_t default_workers() {
  if (const char* env = std::getenv("FEQUIV_WORKERS")) {
    try {
      const auto v = std::stoul(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::string option_name(const std::string& key) {
  std::string out = "--";
  for (char ch : key) out += ch == '_' ? '-' : ch;
  return out;
}

struct ConfigOptions {
  std::string config_file;
  std::vector<std::string> sets;
  std::map<std::string, std::string> flags;

  void attach(CLI::App& app) {
    app.add_option("--config", config_file, "flat key = value configuration file")->check(CLI::ExistingFile);
    app.add_option("--set", sets, "override as key=value (repeatable)");
    for (const auto& key : fequiv::config_keys()) app.add_option(option_name(key), flags[key], "config key " + key);
  }

  ExperimentConfig resolve() const {
    ExperimentConfig cfg;
    cfg.workers = default_workers();
    if (!config_file.empty())
      for (const auto& [k, v] : fequiv::read_settings_file(config_file)) fequiv::apply_setting(cfg, k, v);
    for (const auto& [k, v] : flags)
      if (!v.empty()) fequiv::apply_setting(cfg, k, v);
    for (const auto& s : sets) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw fequiv::InvalidArgumentError("--set expects key=value, got '" + s + "'");
      fequiv::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
    }
    fequiv::validate(cfg);
    return cfg;
  }
};

void write_file(const std::string& path, const auto& writer) {
  std::ofstream out(path);
  if (!out) throw fequiv::InvalidArgumentError("cannot write " + path);
  writer(out);
}

nlohmann::json mask_json(const fequiv::ExtremalSetMask& mask) {
  auto out = nlohmann::json::array();
  for (auto i : mask.indices()) out.push_back((*mask.grid())[i]);
  return out;
}

struct TestOptions {
  std::string kind = "mean-iid";
  std::string first, second, paired;
  std::optional<double> lower, upper;
  double alpha = 0.05;
  std::size_t replicates = 300;
  double c = 0.005;
  std::size_t block_length = 0;
  double block_exponent = 1.0 / 3.0;
  std::uint64_t seed = 1;
  std::size_t workers = default_workers();
  std::string output;
};

int run_test(const TestOptions& o) {
  const TestKind kind = fequiv::parse_test_kind(o.kind);
  const bool variance = kind == TestKind::re_variance || kind == TestKind::re_tost_variance;
  const double lower = o.lower.value_or(variance ? 0.5 : -0.2);
  const double upper = o.upper.value_or(variance ? 2.0 : 0.2);

  std::optional<fequiv::FunctionalSample> s1, s2;
  std::optional<fequiv::PairedRESample> pr;
  if (fequiv::uses_paired_data(kind)) {
    if (o.paired.empty()) throw fequiv::InvalidArgumentError("--paired is required for " + o.kind);
    pr.emplace(fequiv::read_paired_csv(o.paired));
  } else {
    if (o.first.empty() || o.second.empty())
      throw fequiv::InvalidArgumentError("--first and --second are required for " + o.kind);
    s1.emplace(fequiv::read_sample_csv(o.first));
    s2.emplace(fequiv::read_sample_csv(o.second));
    fequiv::require_same_grid(s1->grid(), s2->grid(), "input samples");
  }
  const auto grid = pr ? pr->grid() : s1->grid();
  const auto band = fequiv::EquivalenceBand::constant(grid, lower, upper);

  nlohmann::json j;
  j["kind"] = o.kind;
  j["seed"] = o.seed;
  j["alpha"] = o.alpha;
  j["band"] = {lower, upper};
  bool decided = false;

  auto emit_test = [&](const fequiv::TestResult& r) {
    j["statistic"] = r.statistic;
    j["quantile"] = r.quantile;
    j["reject_null"] = r.reject_null;
    j["lower_set"] = mask_json(r.lower_set);
    j["upper_set"] = mask_json(r.upper_set);
    j["replicates"] = r.replicates;
    decided = r.reject_null;
  };
  auto emit_tost = [&](const fequiv::TostResult& r) {
    j["reject_null"] = r.reject_null;
    j["grid"] = std::vector<double>(r.grid->points().data(), r.grid->points().data() + r.grid->size());
    j["lower_bound"] = std::vector<double>(r.lower_bound.data(), r.lower_bound.data() + r.lower_bound.size());
    j["upper_bound"] = std::vector<double>(r.upper_bound.data(), r.upper_bound.data() + r.upper_bound.size());
    j["point_reject"] = std::vector<bool>(r.point_reject);
    decided = r.reject_null;
  };

  fequiv::TostConfig tost{o.alpha, o.replicates, fequiv::TostVariant::bootstrap_percentile, o.workers};
  switch (kind) {
    case TestKind::mean_iid:
    case TestKind::mean_dependent: {
      fequiv::MeanTestConfig mc;
      mc.alpha = o.alpha;
      mc.replicates = o.replicates;
      mc.c = o.c;
      mc.workers = o.workers;
      if (kind == TestKind::mean_dependent) {
        mc.mode = fequiv::BootstrapMode::multiplier_block;
        if (o.block_length > 0) mc.block_lengths = fequiv::BlockLengths{o.block_length, o.block_length};
        mc.block_exponent_first = mc.block_exponent_second = o.block_exponent;
      }
      emit_test(fequiv::mean_test(*s1, *s2, band, mc, o.seed));
      break;
    }
    case TestKind::re_mean:
      emit_test(fequiv::re_mean_test(*pr, band, {o.alpha, o.replicates, o.c, o.workers}, o.seed));
      break;
    case TestKind::re_variance:
      emit_test(fequiv::re_variance_test(*pr, band, {o.alpha, o.replicates, o.c, o.workers}, o.seed));
      break;
    case TestKind::tost_bootstrap:
      emit_tost(fequiv::tost_test(*s1, *s2, band, tost, o.seed));
      break;
    case TestKind::tost_asymptotic:
      tost.variant = fequiv::TostVariant::asymptotic_normal;
      emit_tost(fequiv::tost_test(*s1, *s2, band, tost, o.seed));
      break;
    case TestKind::re_tost_mean:
      emit_tost(fequiv::re_tost_mean(*pr, band, tost, o.seed));
      break;
    case TestKind::re_tost_variance:
      emit_tost(fequiv::re_tost_variance(*pr, band, tost, o.seed));
      break;
  }

  if (!o.output.empty()) write_file(o.output, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
  std::cout << "kind: " << o.kind << '\n';
  if (j.contains("statistic"))
    std::cout << "statistic: " << fequiv::format_double(j["statistic"].get<double>()) << '\n'
              << "quantile: " << fequiv::format_double(j["quantile"].get<double>()) << '\n';
  std::cout << "decision: " << (decided ? "equivalence" : "no equivalence") << '\n';
  return decided ? kDecided : kNotDecided;
}

int run_simulate(const ExperimentConfig& cfg) {
  const auto report = fequiv::run_experiment(cfg);
  fequiv::write_results_csv(std::cout, report);
  if (!cfg.results_path.empty())
    write_file(cfg.results_path, [&](std::ostream& out) { fequiv::write_results_csv(out, report); });
  if (!cfg.plot_path.empty()) write_file(cfg.plot_path, [&](std::ostream& out) { fequiv::write_plot_csv(out, report); });
  if (!cfg.report_path.empty())
    write_file(cfg.report_path, [&](std::ostream& out) { fequiv::write_report(out, report); });
  return 0;
}

int run_gen(const ExperimentConfig& cfg, const std::string& out_dir, std::size_t run) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const auto points = fequiv::expand_sweep(cfg);
  for (std::size_t p = 0; p < points.size(); ++p) {
    const auto& spec = points[p].first;
    const std::string prefix = points.size() > 1 ? "point" + std::to_string(p) + "_" : "";
    const bool paired = std::any_of(cfg.methods.begin(), cfg.methods.end(), fequiv::uses_paired_data);
    const bool iid = std::any_of(cfg.methods.begin(), cfg.methods.end(),
                                 [](TestKind k) { return !fequiv::uses_paired_data(k); });
    if (iid) {
      const auto [first, second] = fequiv::iid_dataset(cfg, spec, run);
      fequiv::write_sample_csv((fs::path(out_dir) / (prefix + "first.csv")).string(), first);
      fequiv::write_sample_csv((fs::path(out_dir) / (prefix + "second.csv")).string(), second);
    }
    if (paired)
      fequiv::write_paired_csv((fs::path(out_dir) / (prefix + "paired.csv")).string(),
                               fequiv::paired_dataset(cfg, spec, run));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Max-deviation equivalence tests for functional data"};
  app.require_subcommand(1);

  TestOptions test_opts;
  auto* test = app.add_subcommand("test", "test one dataset read from CSV");
  test->add_option("--kind", test_opts.kind, "mean-iid | mean-dependent | re-mean | re-variance | tost-bootstrap | "
                                             "tost-asymptotic | re-tost-mean | re-tost-variance");
  test->add_option("--first", test_opts.first, "sample 1 CSV");
  test->add_option("--second", test_opts.second, "sample 2 CSV");
  test->add_option("--paired", test_opts.paired, "paired random-effects CSV");
  test->add_option("--lower", test_opts.lower, "constant lower band (ratio bound for variance tests)");
  test->add_option("--upper", test_opts.upper, "constant upper band (ratio bound for variance tests)");
  test->add_option("--alpha", test_opts.alpha);
  test->add_option("--replicates", test_opts.replicates);
  test->add_option("--c", test_opts.c, "extremal-set tuning constant");
  test->add_option("--block-length", test_opts.block_length, "multiplier block length (0 = automatic)");
  test->add_option("--block-exponent", test_opts.block_exponent);
  test->add_option("--seed", test_opts.seed);
  test->add_option("--workers", test_opts.workers);
  test->add_option("--output", test_opts.output, "write the full result as JSON");

  ConfigOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo size/power study");
  sim_opts.attach(*simulate);

  ConfigOptions gen_opts;
  std::string out_dir = ".";
  std::size_t gen_run = 0;
  auto* gen = app.add_subcommand("gen", "write synthetic datasets as CSV");
  gen_opts.attach(*gen);
  gen->add_option("--out-dir", out_dir, "output directory");
  gen->add_option("--run", gen_run, "run index whose dataset is written");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kError;
  }

  try {
    if (*test) return run_test(test_opts);
    if (*simulate) return run_simulate(sim_opts.resolve());
    if (*gen) return run_gen(gen_opts.resolve(), out_dir, gen_run);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
