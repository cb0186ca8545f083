#pragma once

#include "fequiv/grid.hpp"

#include <cstddef>
#include <span>

namespace fequiv {

/// Pointwise sample mean over the curves.
GridFunction mean_function(const FunctionalSample& sample);

/// Pointwise sample variance, divisor n - 1. Needs at least two curves.
GridFunction pointwise_variance(const FunctionalSample& sample);

/// 1-based rank ceil(alpha * count) used by empirical_quantile. Products that
/// land within 1e-9 of an integer are snapped to it so that, e.g., 0.95 * 300
/// selects rank 285 regardless of rounding in alpha.
std::size_t quantile_rank(double alpha, std::size_t count);

/// Lower order statistic of rank ceil(alpha * R).
double empirical_quantile(std::span<const double> values, double alpha);

/// Standard normal quantile u_p.
double normal_quantile(double p);

}  // namespace fequiv
