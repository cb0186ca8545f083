#pragma once

#include "fequiv/bspline.hpp"
#include "fequiv/grid.hpp"
#include "fequiv/random.hpp"
#include "fequiv/random_effects.hpp"

#include <cstddef>
#include <cstdint>
#include <utility>

namespace fequiv {

// ---------------------------------------------------------------------------
// Deterministic scenario functions.

/// Ramp-plateau-ramp mean: a/(b1-0.02)*(t-0.02) on [0,b1), a on [b1,b2],
/// -a/(0.98-b2)*(t-b2)+a on (b2,1]. Requires 0.02 < b1 <= b2 < 0.98.
GridFunction mu2_subinterval(double a, double b1, double b2, const GridPtr& grid);

/// Decay rate of null scenario i: 0 for i = 1, else 10^{2(i-2)/7}.
double fogarty_null_rate(int i);
/// mu_2 - mu_1 = 0.2 exp(-a_i |t - 1/2|), i in {1,3,5,7,9}.
GridFunction fogarty_null_shift(int i, const GridPtr& grid);
/// sigma_1^2 / sigma_2^2 = exp(log 2 * exp(-a_i |t - 1/2|)), i in {1,3,5,7,9}.
GridFunction fogarty_ratio_null(int i, const GridPtr& grid);

/// b_i = 0.05 - 0.1 (i-1)/14, c_i = 0.15 - 0.3 (i-1)/14, d_i = -1 + 2 (i-1)/14.
double fogarty_power_b(int i);
double fogarty_power_c(int i);
double fogarty_power_d(int i);
/// mu_2 - mu_1 = -b_i cos(2 pi t) - c_i, i in 1..8.
GridFunction fogarty_power_shift(int i, const GridPtr& grid);
/// sigma_1^2 / sigma_2^2 = (0.1 cos(2 pi t) + 1.8)^{d_i}, i in 1..8.
GridFunction fogarty_ratio_power(int i, const GridPtr& grid);

/// Stand-in for the device-1 mean of the random-effects studies:
/// 0.3 sin(2 pi t) exp(-t) + 0.5 t. Not the original function.
GridFunction surrogate_mu1(const GridPtr& grid);
/// Stand-in for the device-1 individual-error variance: 0.05 (1 + 0.5 cos(2 pi t)).
GridFunction surrogate_sigma2_1(const GridPtr& grid);

// ---------------------------------------------------------------------------
// Gaussian processes and samples.

/// eta = sum_i N_i nu_i with independent N_i ~ N(0, sd_i^2), evaluated on a grid.
class BasisProcess {
 public:
  /// Coefficient standard deviations 1/i, i = 1..D.
  BasisProcess(GridPtr grid, const BSplineBasis& basis);
  BasisProcess(GridPtr grid, const BSplineBasis& basis, Vector coefficient_sd);

  const GridPtr& grid() const noexcept { return grid_; }
  const Vector& coefficient_sd() const noexcept { return sd_; }
  /// Pointwise variance sum_i nu_i(t)^2 sd_i^2.
  Vector variance() const;
  Vector draw(Rng& rng) const;
  /// draw(rng) divided by the pointwise standard deviation.
  Vector draw_standardized(Rng& rng) const;

 private:
  GridPtr grid_;
  RowMatrix design_;
  Vector sd_;
  Vector pointwise_sd_;
};

/// `count` curves mu + eta_j. Curve j's innovation comes from
/// make_stream(seed, j); with ar != 0 the curves form a functional AR(1),
/// eta_j = ar eta_{j-1} + sqrt(1 - ar^2) innovation_j, started stationary.
FunctionalSample bspline_curve_sample(const GridFunction& mu, std::size_t count, const BasisProcess& process,
                                      std::uint64_t seed, double ar = 0.0);

/// Design of paired random-effects data.
struct REDesign {
  std::size_t groups = 20;
  std::size_t per_group = 10;
  /// Group-effect variance as a multiple of the individual-error variance.
  double group_variance = 0.5;
  /// Pointwise correlation between the device-1 and device-2 effects of a pair.
  double cross_correlation = 0.5;
};

/// X_{l,i,j} = mu_l + eps_{l,i} + eta_{l,i,j}, with
/// eta_{l,i,j} = sigma_l (sqrt(rho) U_0 + sqrt(1-rho) U_l) for standardized
/// basis processes U and eps likewise scaled by sqrt(group_variance).
/// Group i draws from substreams of derive_seed(seed, i).
PairedRESample re_sample_gen(const REDesign& design, const GridFunction& mu1, const GridFunction& mu2,
                             const GridFunction& sigma2_1, const GridFunction& sigma2_2, const BasisProcess& process,
                             std::uint64_t seed);

}  // namespace fequiv
