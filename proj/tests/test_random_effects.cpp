#include "fequiv/deviation.hpp"
#include "fequiv/error.hpp"
#include "fequiv/random_effects.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

using namespace fequiv;
using fequiv::testing::gaussian_matrix;
using fequiv::testing::random_paired;

namespace {

PairedRESample scaled(const PairedRESample& d, double s) {
  std::vector<PairedGroup> g;
  for (const auto& x : d.groups()) g.push_back({s * x.first, s * x.second});
  return PairedRESample(d.grid(), std::move(g));
}

// Data whose device-2 curves equal device-1 curves plus a fixed offset.
PairedRESample offset_copy(const GridPtr& grid, std::size_t a, std::size_t per, double offset, std::mt19937_64& rng) {
  std::vector<PairedGroup> groups;
  for (std::size_t i = 0; i < a; ++i) {
    RowMatrix x = gaussian_matrix(static_cast<Eigen::Index>(per), static_cast<Eigen::Index>(grid->size()), rng);
    groups.push_back({x, (x.array() + offset).matrix()});
  }
  return PairedRESample(grid, std::move(groups));
}

}  // namespace

TEST(PairedRESample, Validation) {
  auto g = Grid::equispaced(4);
  std::mt19937_64 rng(1);
  RowMatrix ok = gaussian_matrix(3, 4, rng);
  EXPECT_THROW(PairedRESample(g, {{ok, ok}}), UndersizedSampleError);
  EXPECT_THROW(PairedRESample(g, {{ok, ok}, {ok, gaussian_matrix(2, 4, rng)}}), InvalidArgumentError);
  EXPECT_THROW(PairedRESample(g, {{ok, ok}, {gaussian_matrix(1, 4, rng), gaussian_matrix(1, 4, rng)}}),
               UndersizedSampleError);
  EXPECT_THROW(PairedRESample(g, {{ok, ok}, {gaussian_matrix(3, 5, rng), gaussian_matrix(3, 5, rng)}}),
               DomainMismatchError);
  PairedRESample d(g, {{ok, ok}, {ok, ok}, {gaussian_matrix(5, 4, rng), gaussian_matrix(5, 4, rng)}});
  EXPECT_EQ(d.pair_count(), 11u);
  EXPECT_EQ(d.group_count(), 3u);
}

TEST(GroupMeans, ConstantGroups) {
  auto g = Grid::equispaced(3);
  PairedRESample d(g, {{RowMatrix::Constant(4, 3, 1.0), RowMatrix::Constant(4, 3, 2.0)},
                       {RowMatrix::Constant(2, 3, 3.0), RowMatrix::Constant(2, 3, -2.0)}});
  auto gm = group_means(d);
  EXPECT_DOUBLE_EQ(gm.first(0, 1), 1.0);
  EXPECT_DOUBLE_EQ(gm.first(1, 2), 3.0);
  EXPECT_DOUBLE_EQ(gm.grand_first[0], 2.0);
  EXPECT_DOUBLE_EQ(gm.grand_second[2], 0.0);
}

TEST(GroupMeans, EqualCurvesGiveZeroEffects) {
  auto g = Grid::equispaced(5);
  RowMatrix f = RowMatrix::Zero(3, 5);
  for (int j = 0; j < 5; ++j) f.col(j).setConstant(0.1 * j);
  PairedRESample d(g, {{f, f}, {f, f}, {f, f}});
  auto gm = group_means(d);
  EXPECT_TRUE((gm.first.rowwise() - gm.grand_first.transpose()).isZero(1e-15));
}

TEST(GroupMeans, BruteForce) {
  auto g = Grid::equispaced(6);
  std::mt19937_64 rng(2);
  std::vector<PairedGroup> groups;
  for (int per : {2, 5, 3, 4}) groups.push_back({gaussian_matrix(per, 6, rng), gaussian_matrix(per, 6, rng)});
  PairedRESample d(g, groups);
  auto gm = group_means(d);
  for (int t = 0; t < 6; ++t) {
    double grand = 0.0;
    for (std::size_t i = 0; i < groups.size(); ++i) {
      double s = 0.0;
      for (Eigen::Index j = 0; j < groups[i].second.rows(); ++j) s += groups[i].second(j, t);
      s /= static_cast<double>(groups[i].second.rows());
      EXPECT_NEAR(gm.second(static_cast<Eigen::Index>(i), t), s, 1e-14);
      grand += s;
    }
    EXPECT_NEAR(gm.grand_second[t], grand / 4.0, 1e-14);
  }
}

TEST(PooledVariance, PairsOfTwo) {
  auto g = Grid::equispaced(3);
  std::mt19937_64 rng(3);
  std::vector<PairedGroup> groups;
  for (int i = 0; i < 5; ++i) groups.push_back({gaussian_matrix(2, 3, rng), gaussian_matrix(2, 3, rng)});
  PairedRESample d(g, groups);
  const Vector v = pooled_variance(d, 1).values();
  for (int t = 0; t < 3; ++t) {
    double s = 0.0;
    for (const auto& x : groups) s += std::pow(x.first(0, t) - x.first(1, t), 2) / 2.0;
    EXPECT_NEAR(v[t], s / 5.0, 1e-14);
  }
}

TEST(PooledVariance, ConstantCurvesAreDegenerate) {
  auto g = Grid::equispaced(3);
  PairedRESample d(g, {{RowMatrix::Constant(3, 3, 1.0), RowMatrix::Constant(3, 3, 2.0)},
                       {RowMatrix::Constant(3, 3, 4.0), RowMatrix::Constant(3, 3, 2.5)}});
  EXPECT_TRUE(pooled_variance(d, 1).values().isZero(0.0));
  EXPECT_THROW(log_variance_ratio(d), DegenerateVarianceError);
  EXPECT_THROW(re_variance_test(d, EquivalenceBand::constant(g, 0.5, 2.0), RETestConfig{}, 1),
               DegenerateVarianceError);
  EXPECT_THROW(pooled_variance(d, 3), InvalidArgumentError);
}

TEST(PooledVariance, BruteForceDoubleLoop) {
  auto g = Grid::equispaced(4);
  std::mt19937_64 rng(4);
  std::vector<PairedGroup> groups;
  for (int per : {3, 2, 6}) groups.push_back({gaussian_matrix(per, 4, rng), gaussian_matrix(per, 4, rng)});
  PairedRESample d(g, groups);
  const Vector v = pooled_variance(d, 2).values();
  for (int t = 0; t < 4; ++t) {
    double ss = 0.0;
    for (const auto& x : groups) {
      double mean = 0.0;
      for (Eigen::Index j = 0; j < x.second.rows(); ++j) mean += x.second(j, t);
      mean /= static_cast<double>(x.second.rows());
      for (Eigen::Index j = 0; j < x.second.rows(); ++j) ss += std::pow(x.second(j, t) - mean, 2);
    }
    EXPECT_NEAR(v[t], ss / (11.0 - 3.0), 1e-14);
  }
}

TEST(LogBand, NeedsPositiveBand) {
  auto g = Grid::equispaced(3);
  EXPECT_THROW(log_band(EquivalenceBand::constant(g, 0.0, 2.0)), InvalidArgumentError);
  auto lb = log_band(EquivalenceBand::constant(g, 0.5, 2.0));
  EXPECT_DOUBLE_EQ(lb.lower()[0], std::log(0.5));
  EXPECT_DOUBLE_EQ(lb.upper()[2], std::log(2.0));
}

// ---------------------------------------------------------------------------
// re_mean_test

TEST(REMeanTest, IdenticalDevicesDecideEquivalence) {
  auto g = Grid::equispaced(11);
  std::mt19937_64 rng(5);
  auto d = offset_copy(g, 6, 4, 0.0, rng);
  RETestConfig cfg;
  cfg.replicates = 50;
  auto r = re_mean_test(d, EquivalenceBand::constant(g, -0.2, 0.2), cfg, 1);
  EXPECT_NEAR(r.statistic, -0.2 * std::sqrt(6.0), 1e-12);
  for (double x : r.replicates) EXPECT_EQ(x, 0.0);
  EXPECT_TRUE(r.reject_null);
}

TEST(REMeanTest, TwoGroupEnumeration) {
  auto g = Grid::equispaced(5);
  std::mt19937_64 rng(6);
  auto d = random_paired(g, 2, 3, rng, 0.05);
  auto band = EquivalenceBand::constant(g, -0.3, 0.4);

  // Oracle: effect differences, the cut, then the four joint resamples.
  const auto& gs = d.groups();
  RowMatrix effect(2, 5);
  Vector theta(5);
  for (int t = 0; t < 5; ++t) {
    double m1[2], m2[2];
    for (int i = 0; i < 2; ++i) {
      m1[i] = gs[static_cast<std::size_t>(i)].first.col(t).mean();
      m2[i] = gs[static_cast<std::size_t>(i)].second.col(t).mean();
    }
    theta[t] = (m1[0] + m1[1]) / 2.0 - (m2[0] + m2[1]) / 2.0;
    for (int i = 0; i < 2; ++i) effect(i, t) = (m1[i] - (m1[0] + m1[1]) / 2.0) - (m2[i] - (m2[0] + m2[1]) / 2.0);
  }
  const GridFunction th(g, theta);
  const double dev = sup_deviation(th, band);
  const auto sets = estimate_extremal_sets(th, band, dev, 0.005 * std::log(2.0) / std::sqrt(2.0));
  std::map<double, double> atoms;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      Vector path = (effect.row(a) + effect.row(b)).transpose() / std::sqrt(2.0);
      atoms[masked_max(path, sets.lower, sets.upper)] += 0.25;
    }

  RETestConfig cfg;
  cfg.replicates = 4000;
  auto r = re_mean_test(d, band, cfg, 12);
  EXPECT_NEAR(r.statistic, std::sqrt(2.0) * dev, 1e-12);
  std::map<double, double> freq;
  for (double x : r.replicates) {
    auto it = atoms.lower_bound(x - 1e-12);
    ASSERT_TRUE(it != atoms.end() && std::abs(it->first - x) < 1e-12) << "replicate " << x << " is not an atom";
    freq[it->first] += 1.0 / 4000.0;
  }
  for (const auto& [v, p] : atoms) EXPECT_NEAR(freq[v], p, 4.0 * std::sqrt(p * (1 - p) / 4000.0)) << v;
}

TEST(REMeanTest, DeviceSwapWithReflectedBand) {
  auto g = Grid::equispaced(9);
  std::mt19937_64 rng(7);
  RETestConfig cfg;
  cfg.replicates = 150;
  for (int rep = 0; rep < 5; ++rep) {
    auto d = random_paired(g, 8, 3, rng, 0.1);
    auto band = EquivalenceBand::constant(g, -0.9, 0.7);
    auto reflected = EquivalenceBand(-band.upper(), -band.lower());
    auto r = re_mean_test(d, band, cfg, 31);
    auto s = re_mean_test(d.swapped(), reflected, cfg, 31);
    EXPECT_NEAR(r.statistic, s.statistic, 1e-12);
    EXPECT_EQ(r.reject_null, s.reject_null);
    EXPECT_EQ(r.lower_set, s.upper_set);
    EXPECT_EQ(r.upper_set, s.lower_set);
    for (std::size_t k = 0; k < r.replicates.size(); ++k) EXPECT_NEAR(r.replicates[k], s.replicates[k], 1e-12);
  }
}

TEST(REMeanTest, SeedDeterminismAcrossWorkers) {
  auto g = Grid::equispaced(9);
  std::mt19937_64 rng(8);
  auto d = random_paired(g, 10, 4, rng);
  auto band = EquivalenceBand::constant(g, -1.0, 1.0);
  RETestConfig cfg;
  cfg.replicates = 120;
  auto r1 = re_mean_test(d, band, cfg, 3);
  cfg.workers = 8;
  auto r8 = re_mean_test(d, band, cfg, 3);
  EXPECT_EQ(r1.replicates, r8.replicates);
  auto lb = EquivalenceBand::constant(g, 0.25, 4.0);
  auto v8 = re_variance_test(d, lb, cfg, 3);
  cfg.workers = 1;
  EXPECT_EQ(re_variance_test(d, lb, cfg, 3).replicates, v8.replicates);
}

// ---------------------------------------------------------------------------
// re_variance_test

TEST(REVarianceTest, PerfectlyPairedResiduals) {
  auto g = Grid::equispaced(7);
  std::mt19937_64 rng(9);
  auto d = offset_copy(g, 5, 4, 0.3, rng);
  RETestConfig cfg;
  cfg.replicates = 60;
  auto r = re_variance_test(d, EquivalenceBand::constant(g, 0.5, 2.0), cfg, 2);
  EXPECT_TRUE(log_variance_ratio(d).values().isZero(1e-15));
  EXPECT_NEAR(r.statistic, std::sqrt(20.0) * -std::log(2.0), 1e-12);
  for (double x : r.replicates) EXPECT_NEAR(x, 0.0, 1e-12);
  EXPECT_TRUE(r.reject_null);
}

TEST(REVarianceTest, DeviceSwapWithInvertedBand) {
  auto g = Grid::equispaced(9);
  std::mt19937_64 rng(10);
  RETestConfig cfg;
  cfg.replicates = 150;
  for (int rep = 0; rep < 5; ++rep) {
    auto d = random_paired(g, 10, 4, rng);
    auto band = EquivalenceBand::constant(g, 0.4, 3.0);
    auto inverted = EquivalenceBand::constant(g, 1.0 / 3.0, 1.0 / 0.4);
    auto r = re_variance_test(d, band, cfg, 41);
    auto s = re_variance_test(d.swapped(), inverted, cfg, 41);
    EXPECT_NEAR(r.statistic, s.statistic, 1e-12);
    EXPECT_EQ(r.reject_null, s.reject_null);
    for (std::size_t k = 0; k < r.replicates.size(); ++k) EXPECT_NEAR(r.replicates[k], s.replicates[k], 1e-12);
  }
}

TEST(REVarianceTest, CommonScalingInvariance) {
  auto g = Grid::equispaced(9);
  std::mt19937_64 rng(11);
  auto d = random_paired(g, 8, 5, rng);
  auto band = EquivalenceBand::constant(g, 0.5, 2.0);
  RETestConfig cfg;
  cfg.replicates = 100;
  auto base = re_variance_test(d, band, cfg, 4);
  // A power of two scales every intermediate exactly.
  auto two = re_variance_test(scaled(d, 2.0), band, cfg, 4);
  EXPECT_EQ(two.statistic, base.statistic);
  EXPECT_EQ(two.replicates, base.replicates);
  EXPECT_EQ(two.reject_null, base.reject_null);
  auto odd = re_variance_test(scaled(d, 1.37), band, cfg, 4);
  EXPECT_NEAR(odd.statistic, base.statistic, 1e-10);
  EXPECT_EQ(odd.reject_null, base.reject_null);
  for (std::size_t k = 0; k < base.replicates.size(); ++k) EXPECT_NEAR(odd.replicates[k], base.replicates[k], 1e-10);
}
