#include "fequiv/tost.hpp"

#include "fequiv/error.hpp"
#include "fequiv/parallel.hpp"
#include "fequiv/random.hpp"
#include "fequiv/statistics.hpp"

#include <cmath>
#include <random>

namespace fequiv {

namespace {

void validate(const TostConfig& cfg) {
  if (!(cfg.alpha > 0.0 && cfg.alpha < 0.5)) throw InvalidArgumentError("TOST alpha must lie in (0, 0.5)");
  if (cfg.variant == TostVariant::bootstrap_percentile && cfg.replicates < 1)
    throw InvalidArgumentError("at least one bootstrap replicate is required");
}

TostResult asymptotic(const Vector& estimate, const Vector& variance, double root_size, const EquivalenceBand& band,
                      double alpha, std::uint64_t seed) {
  if (!(variance.array() > 0.0).all()) throw DegenerateVarianceError("asymptotic TOST needs positive variance");
  const Vector se = variance.array().sqrt() / root_size;
  const Vector lower = estimate - normal_quantile(1.0 - alpha) * se;
  const Vector upper = estimate - normal_quantile(alpha) * se;
  return tost_decide(lower, upper, band, alpha, TostVariant::asymptotic_normal, seed);
}

}  // namespace

TostResult tost_decide(const Vector& lower_bound, const Vector& upper_bound, const EquivalenceBand& band,
                       double alpha, TostVariant variant, std::uint64_t seed) {
  const auto p = band.grid()->size();
  if (static_cast<std::size_t>(lower_bound.size()) != p || static_cast<std::size_t>(upper_bound.size()) != p)
    throw DomainMismatchError("TOST bounds differ in length from the band grid");
  TostResult out;
  out.grid = band.grid();
  out.lower_bound = lower_bound;
  out.upper_bound = upper_bound;
  out.point_reject.resize(p);
  out.alpha = alpha;
  out.variant = variant;
  out.seed = seed;
  bool all = true;
  for (std::size_t t = 0; t < p; ++t) {
    const auto i = static_cast<Eigen::Index>(t);
    const bool ok = band.lower().values()[i] < lower_bound[i] && lower_bound[i] <= upper_bound[i] &&
                    upper_bound[i] < band.upper().values()[i];
    out.point_reject[t] = ok;
    all = all && ok;
  }
  out.reject_null = all;
  return out;
}

TostResult tost_from_bootstrap(const Vector& estimate, const RowMatrix& boot, const EquivalenceBand& band,
                               double alpha, std::uint64_t seed) {
  const auto p = estimate.size();
  Vector lower(p), upper(p);
  std::vector<double> column(static_cast<std::size_t>(boot.rows()));
  for (Eigen::Index t = 0; t < p; ++t) {
    for (Eigen::Index r = 0; r < boot.rows(); ++r) column[static_cast<std::size_t>(r)] = boot(r, t);
    lower[t] = 2.0 * estimate[t] - empirical_quantile(column, 1.0 - alpha);
    upper[t] = 2.0 * estimate[t] - empirical_quantile(column, alpha);
  }
  return tost_decide(lower, upper, band, alpha, TostVariant::bootstrap_percentile, seed);
}

TostResult tost_test(const FunctionalSample& first, const FunctionalSample& second, const EquivalenceBand& band,
                     const TostConfig& cfg, std::uint64_t seed) {
  require_same_grid(first.grid(), second.grid(), "tost_test");
  require_same_grid(first.grid(), band.grid(), "tost_test");
  validate(cfg);
  const std::size_t m = first.size();
  const std::size_t n = second.size();
  if (m < 2 || n < 2) throw UndersizedSampleError("tost_test needs at least two curves per sample");

  const Vector estimate = mean_function(first).values() - mean_function(second).values();
  if (cfg.variant == TostVariant::asymptotic_normal) {
    const double total = static_cast<double>(m + n);
    const Vector variance = total * (pointwise_variance(first).values() / static_cast<double>(m) +
                                     pointwise_variance(second).values() / static_cast<double>(n));
    return asymptotic(estimate, variance, std::sqrt(total), band, cfg.alpha, seed);
  }

  RowMatrix boot(static_cast<Eigen::Index>(cfg.replicates), estimate.size());
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t r) {
    Rng rng = make_stream(seed, r);
    const Vector w1 = resample_counts(m, rng) / static_cast<double>(m);
    const Vector w2 = resample_counts(n, rng) / static_cast<double>(n);
    boot.row(static_cast<Eigen::Index>(r)) = (first.curves().transpose() * w1 - second.curves().transpose() * w2).transpose();
  });
  return tost_from_bootstrap(estimate, boot, band, cfg.alpha, seed);
}

TostResult re_tost_mean(const PairedRESample& data, const EquivalenceBand& band, const TostConfig& cfg,
                        std::uint64_t seed) {
  require_same_grid(data.grid(), band.grid(), "re_tost_mean");
  validate(cfg);
  const GroupMeans gm = group_means(data);
  const RowMatrix diffs = gm.first - gm.second;
  const auto a = data.group_count();
  const Vector estimate = gm.grand_first - gm.grand_second;
  if (cfg.variant == TostVariant::asymptotic_normal) {
    const Vector variance =
        (diffs.rowwise() - estimate.transpose()).array().square().colwise().sum().transpose() / static_cast<double>(a - 1);
    return asymptotic(estimate, variance, std::sqrt(static_cast<double>(a)), band, cfg.alpha, seed);
  }
  RowMatrix boot(static_cast<Eigen::Index>(cfg.replicates), estimate.size());
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t r) {
    Rng rng = make_stream(seed, r);
    const Vector w = resample_counts(a, rng) / static_cast<double>(a);
    boot.row(static_cast<Eigen::Index>(r)) = (diffs.transpose() * w).transpose();
  });
  return tost_from_bootstrap(estimate, boot, band, cfg.alpha, seed);
}

TostResult re_tost_variance(const PairedRESample& data, const EquivalenceBand& band, const TostConfig& cfg,
                            std::uint64_t seed) {
  require_same_grid(data.grid(), band.grid(), "re_tost_variance");
  validate(cfg);
  if (cfg.variant != TostVariant::bootstrap_percentile)
    throw InvalidArgumentError("variance-ratio TOST is only defined for the bootstrap variant");
  const EquivalenceBand logb = log_band(band);
  const Vector estimate = log_variance_ratio(data).values();

  const auto total = data.pair_count();
  const double dof = static_cast<double>(total - data.group_count());
  RowMatrix sq1(static_cast<Eigen::Index>(total), estimate.size());
  RowMatrix sq2(static_cast<Eigen::Index>(total), estimate.size());
  Eigen::Index row = 0;
  for (const auto& g : data.groups()) {
    sq1.middleRows(row, g.first.rows()) = (g.first.rowwise() - g.first.colwise().mean()).array().square().matrix();
    sq2.middleRows(row, g.second.rows()) = (g.second.rowwise() - g.second.colwise().mean()).array().square().matrix();
    row += g.first.rows();
  }

  RowMatrix boot(static_cast<Eigen::Index>(cfg.replicates), estimate.size());
  parallel_for(cfg.replicates, cfg.workers, [&](std::size_t r) {
    Rng rng = make_stream(seed, r);
    const Vector w = resample_counts(total, rng);
    const Vector v1 = sq1.transpose() * w / dof;
    const Vector v2 = sq2.transpose() * w / dof;
    if (!(v1.array() > 0.0).all() || !(v2.array() > 0.0).all())
      throw DegenerateVarianceError("bootstrap pooled variance vanishes at a grid point");
    boot.row(static_cast<Eigen::Index>(r)) = (v1.array().log() - v2.array().log()).matrix().transpose();
  });
  return tost_from_bootstrap(estimate, boot, logb, cfg.alpha, seed);
}

}  // namespace fequiv
