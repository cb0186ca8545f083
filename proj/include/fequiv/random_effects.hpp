#pragma once

#include "fequiv/grid.hpp"
#include "fequiv/test_result.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fequiv {

/// Curves of one group (individual): row j of `first` is paired with row j of
/// `second`, the simultaneous measurements of device 1 and device 2.
struct PairedGroup {
  RowMatrix first;
  RowMatrix second;
};

/// Paired random-effects data: A >= 2 groups of n_i >= 2 curve pairs each.
class PairedRESample {
 public:
  PairedRESample(GridPtr grid, std::vector<PairedGroup> groups);

  const GridPtr& grid() const noexcept { return grid_; }
  const std::vector<PairedGroup>& groups() const noexcept { return groups_; }
  std::size_t group_count() const noexcept { return groups_.size(); }
  /// N, the total number of pairs.
  std::size_t pair_count() const noexcept { return pairs_; }

  /// The same data with the roles of device 1 and device 2 exchanged.
  PairedRESample swapped() const;

 private:
  GridPtr grid_;
  std::vector<PairedGroup> groups_;
  std::size_t pairs_ = 0;
};

struct RETestConfig {
  double alpha = 0.05;
  std::size_t replicates = 300;
  double c = 0.005;
  std::size_t workers = 1;
};

void validate(const RETestConfig& cfg);

/// Within-group means (row i = group i) and the unweighted grand means
/// A^{-1} sum_i of them, per device.
struct GroupMeans {
  RowMatrix first;
  RowMatrix second;
  Vector grand_first;
  Vector grand_second;
};

GroupMeans group_means(const PairedRESample& data);

/// Pooled within-group variance of device 1 or 2, divisor N - A.
GridFunction pooled_variance(const PairedRESample& data, int device);

/// Equivalence of the mean functions under the random-effects model.
/// Statistic sqrt(A) * sup_deviation; replicates resample the estimated
/// group-effect pairs jointly. Replicate r draws from make_stream(seed, r).
TestResult re_mean_test(const PairedRESample& data, const EquivalenceBand& band, const RETestConfig& cfg,
                        std::uint64_t seed);

/// Equivalence of the variance functions, on the log-ratio scale. `band`
/// bounds the ratio sigma_1^2 / sigma_2^2 and must be strictly positive.
/// Replicates resample the N residual pairs jointly.
TestResult re_variance_test(const PairedRESample& data, const EquivalenceBand& band, const RETestConfig& cfg,
                            std::uint64_t seed);

/// Log of the pooled variance ratio, log sigma_1^2 - log sigma_2^2. Throws
/// DegenerateVarianceError if either pooled variance vanishes somewhere.
GridFunction log_variance_ratio(const PairedRESample& data);

/// Pointwise logarithm of a strictly positive band.
EquivalenceBand log_band(const EquivalenceBand& band);

}  // namespace fequiv
