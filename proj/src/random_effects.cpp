#include "fequiv/random_effects.hpp"

#include "fequiv/deviation.hpp"
#include "fequiv/error.hpp"
#include "fequiv/parallel.hpp"
#include "fequiv/random.hpp"

#include <cmath>
#include <random>
#include <string>

namespace fequiv {

namespace {

// Residuals X_{l,i,j} - mean_j X_{l,i,j}, stacked group by group into N rows.
RowMatrix residuals(const PairedRESample& data, int device) {
  RowMatrix out(static_cast<Eigen::Index>(data.pair_count()), static_cast<Eigen::Index>(data.grid()->size()));
  Eigen::Index row = 0;
  for (const auto& g : data.groups()) {
    const RowMatrix& x = device == 1 ? g.first : g.second;
    const Eigen::RowVectorXd mean = x.colwise().mean();
    out.middleRows(row, x.rows()) = x.rowwise() - mean;
    row += x.rows();
  }
  return out;
}

void check_inputs(const PairedRESample& data, const EquivalenceBand& band, const RETestConfig& cfg,
                  const char* context) {
  require_same_grid(data.grid(), band.grid(), context);
  validate(cfg);
}

TestResult finish(double statistic, std::vector<double> reps, ExtremalSets sets, double alpha, std::uint64_t seed) {
  TestResult out;
  out.statistic = statistic;
  const auto d = decide(statistic, reps, alpha);
  out.quantile = d.quantile;
  out.reject_null = d.reject_null;
  out.replicates = std::move(reps);
  out.lower_set = std::move(sets.lower);
  out.upper_set = std::move(sets.upper);
  out.seed = seed;
  return out;
}

}  // namespace

PairedRESample::PairedRESample(GridPtr grid, std::vector<PairedGroup> groups)
    : grid_(std::move(grid)), groups_(std::move(groups)) {
  if (!grid_) throw InvalidArgumentError("paired sample without grid");
  if (groups_.size() < 2) throw UndersizedSampleError("random-effects data needs at least two groups");
  const auto p = static_cast<Eigen::Index>(grid_->size());
  for (std::size_t i = 0; i < groups_.size(); ++i) {
    const auto& g = groups_[i];
    const std::string where = "group " + std::to_string(i + 1);
    if (g.first.cols() != p || g.second.cols() != p) throw DomainMismatchError(where + ": curve length differs from grid");
    if (g.first.rows() != g.second.rows()) throw InvalidArgumentError(where + ": devices have different pair counts");
    if (g.first.rows() < 2) throw UndersizedSampleError(where + ": needs at least two pairs");
    if (!g.first.allFinite() || !g.second.allFinite()) throw InvalidArgumentError(where + ": non-finite value");
    pairs_ += static_cast<std::size_t>(g.first.rows());
  }
}

PairedRESample PairedRESample::swapped() const {
  std::vector<PairedGroup> g;
  g.reserve(groups_.size());
  for (const auto& x : groups_) g.push_back({x.second, x.first});
  return PairedRESample(grid_, std::move(g));
}

void validate(const RETestConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) throw InvalidArgumentError("alpha must lie in (0,1)");
  if (cfg.replicates < 1) throw InvalidArgumentError("at least one bootstrap replicate is required");
  if (!(cfg.c >= 0.0) || !std::isfinite(cfg.c)) throw InvalidArgumentError("c must be finite and nonnegative");
}

GroupMeans group_means(const PairedRESample& data) {
  const auto a = static_cast<Eigen::Index>(data.group_count());
  const auto p = static_cast<Eigen::Index>(data.grid()->size());
  GroupMeans gm{RowMatrix(a, p), RowMatrix(a, p), Vector(), Vector()};
  for (Eigen::Index i = 0; i < a; ++i) {
    const auto& g = data.groups()[static_cast<std::size_t>(i)];
    gm.first.row(i) = g.first.colwise().mean();
    gm.second.row(i) = g.second.colwise().mean();
  }
  gm.grand_first = gm.first.colwise().mean().transpose();
  gm.grand_second = gm.second.colwise().mean().transpose();
  return gm;
}

GridFunction pooled_variance(const PairedRESample& data, int device) {
  if (device != 1 && device != 2) throw InvalidArgumentError("device must be 1 or 2");
  const auto dof = data.pair_count() - data.group_count();
  if (dof < 1) throw UndersizedSampleError("pooled variance needs N - A >= 1");
  const RowMatrix eta = residuals(data, device);
  return GridFunction(data.grid(), (eta.array().square().colwise().sum() / static_cast<double>(dof)).transpose());
}

GridFunction log_variance_ratio(const PairedRESample& data) {
  const GridFunction v1 = pooled_variance(data, 1);
  const GridFunction v2 = pooled_variance(data, 2);
  if (!(v1.values().array() > 0.0).all() || !(v2.values().array() > 0.0).all())
    throw DegenerateVarianceError("pooled variance vanishes at a grid point");
  return GridFunction(data.grid(), (v1.values().array().log() - v2.values().array().log()).matrix());
}

EquivalenceBand log_band(const EquivalenceBand& band) {
  if (!(band.lower().values().array() > 0.0).all())
    throw InvalidArgumentError("variance-ratio band must be strictly positive");
  return EquivalenceBand(GridFunction(band.grid(), band.lower().values().array().log().matrix()),
                         GridFunction(band.grid(), band.upper().values().array().log().matrix()));
}

TestResult re_mean_test(const PairedRESample& data, const EquivalenceBand& band, const RETestConfig& cfg,
                        std::uint64_t seed) {
  check_inputs(data, band, cfg, "re_mean_test");
  const auto a = data.group_count();
  const double root_a = std::sqrt(static_cast<double>(a));

  const GroupMeans gm = group_means(data);
  const GridFunction theta(data.grid(), gm.grand_first - gm.grand_second);
  const double dev = sup_deviation(theta, band);
  auto sets = estimate_extremal_sets(theta, band, dev, extremal_threshold(cfg.c, static_cast<double>(a)));

  // Row i: estimated group-effect difference eps_{1,i} - eps_{2,i}.
  const RowMatrix effects = (gm.first.rowwise() - gm.grand_first.transpose()) -
                            (gm.second.rowwise() - gm.grand_second.transpose());

  std::vector<double> reps(cfg.replicates);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t r) {
    Rng rng = make_stream(seed, r);
    const Vector w = resample_counts(a, rng);
    const Vector path = (effects.transpose() * w) / root_a;
    reps[r] = masked_max(path, sets.lower, sets.upper);
  });
  return finish(root_a * dev, std::move(reps), std::move(sets), cfg.alpha, seed);
}

TestResult re_variance_test(const PairedRESample& data, const EquivalenceBand& band, const RETestConfig& cfg,
                            std::uint64_t seed) {
  check_inputs(data, band, cfg, "re_variance_test");
  const EquivalenceBand logb = log_band(band);
  const auto total = data.pair_count();
  const double dof = static_cast<double>(total - data.group_count());
  const double root_n = std::sqrt(static_cast<double>(total));

  const GridFunction v1 = pooled_variance(data, 1);
  const GridFunction v2 = pooled_variance(data, 2);
  const GridFunction log_ratio = log_variance_ratio(data);
  const double dev = sup_deviation(log_ratio, logb);
  auto sets = estimate_extremal_sets(log_ratio, logb, dev, extremal_threshold(cfg.c, static_cast<double>(total)));

  const RowMatrix sq1 = residuals(data, 1).array().square().matrix();
  const RowMatrix sq2 = residuals(data, 2).array().square().matrix();
  const Vector n_v1 = static_cast<double>(total) * v1.values();
  const Vector n_v2 = static_cast<double>(total) * v2.values();

  std::vector<double> reps(cfg.replicates);
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t r) {
    Rng rng = make_stream(seed, r);
    const Vector w = resample_counts(total, rng);
    const Vector c1 = (sq1.transpose() * w - n_v1) / dof;
    const Vector c2 = (sq2.transpose() * w - n_v2) / dof;
    const Vector path = (c1.array() / v1.values().array() - c2.array() / v2.values().array()).matrix();
    reps[r] = root_n * masked_max(path, sets.lower, sets.upper);
  });
  return finish(root_n * dev, std::move(reps), std::move(sets), cfg.alpha, seed);
}

}  // namespace fequiv
