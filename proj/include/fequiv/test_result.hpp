#pragma once

#include "fequiv/deviation.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace fequiv {

/// Outcome of a max-deviation bootstrap equivalence test.
///
/// `statistic` is on the scale the replicates live on (the sample-size factor
/// is already applied). The null of no equivalence is rejected, i.e.
/// equivalence is decided, iff statistic < quantile; a tie accepts the null.
struct TestResult {
  double statistic = 0.0;
  double quantile = 0.0;
  std::vector<double> replicates;
  bool reject_null = false;
  ExtremalSetMask lower_set;
  ExtremalSetMask upper_set;
  std::uint64_t seed = 0;
};

/// Empirical alpha-quantile of the replicates and the strict-inequality decision.
struct Decision {
  double quantile;
  bool reject_null;
};
Decision decide(double statistic, std::span<const double> replicates, double alpha);

}  // namespace fequiv
