#pragma once

#include "fequiv/grid.hpp"
#include "fequiv/random_effects.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fequiv {

enum class TostVariant { bootstrap_percentile, asymptotic_normal };

struct TostConfig {
  double alpha = 0.05;
  std::size_t replicates = 300;
  TostVariant variant = TostVariant::bootstrap_percentile;
  std::size_t workers = 1;
};

/// Pointwise two one-sided tests combined by intersection-union: equivalence
/// is decided only if every grid point decides it.
struct TostResult {
  GridPtr grid;
  /// Lower confidence bound per grid point (2*est - q_{1-alpha}, or est - u_{1-alpha}*se).
  Vector lower_bound;
  /// Upper confidence bound per grid point (2*est - q_alpha, or est - u_alpha*se).
  Vector upper_bound;
  std::vector<bool> point_reject;
  bool reject_null = false;
  double alpha = 0.05;
  TostVariant variant = TostVariant::bootstrap_percentile;
  std::uint64_t seed = 0;
};

/// Pointwise decision kappa_l < lower <= upper < kappa_u, intersected over the grid.
TostResult tost_decide(const Vector& lower_bound, const Vector& upper_bound, const EquivalenceBand& band,
                       double alpha, TostVariant variant, std::uint64_t seed);

/// Reflected percentile bounds 2*estimate - q from bootstrap estimates (one row per replicate).
TostResult tost_from_bootstrap(const Vector& estimate, const RowMatrix& boot, const EquivalenceBand& band,
                               double alpha, std::uint64_t seed);

/// TOST for the difference of two mean functions (independent samples).
TostResult tost_test(const FunctionalSample& first, const FunctionalSample& second, const EquivalenceBand& band,
                     const TostConfig& cfg, std::uint64_t seed);

/// TOST for the mean difference under the random-effects model, built on the
/// A group-mean differences (resampled as whole groups for the bootstrap
/// variant; divisor A - 1 standard error for the asymptotic variant).
TostResult re_tost_mean(const PairedRESample& data, const EquivalenceBand& band, const TostConfig& cfg,
                        std::uint64_t seed);

/// TOST for the log variance ratio under the random-effects model. Residual
/// pairs are resampled jointly; `band` bounds the ratio itself. Only the
/// bootstrap variant is defined.
TostResult re_tost_variance(const PairedRESample& data, const EquivalenceBand& band, const TostConfig& cfg,
                            std::uint64_t seed);

}  // namespace fequiv
