#include "fequiv/statistics.hpp"

#include "fequiv/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace fequiv {

GridFunction mean_function(const FunctionalSample& sample) {
  return GridFunction(sample.grid(), sample.curves().colwise().mean().transpose());
}

GridFunction pointwise_variance(const FunctionalSample& sample) {
  const auto n = sample.curves().rows();
  if (n < 2) throw UndersizedSampleError("pointwise variance needs at least two curves");
  const Eigen::RowVectorXd mean = sample.curves().colwise().mean();
  const Eigen::RowVectorXd ss = (sample.curves().rowwise() - mean).array().square().colwise().sum();
  return GridFunction(sample.grid(), (ss / static_cast<double>(n - 1)).transpose());
}

std::size_t quantile_rank(double alpha, std::size_t count) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgumentError("quantile level must lie in (0,1)");
  if (count == 0) throw InvalidArgumentError("quantile of an empty sample");
  const double x = alpha * static_cast<double>(count);
  const double nearest = std::round(x);
  const double rank = std::abs(x - nearest) < 1e-9 ? nearest : std::ceil(x);
  return std::clamp<std::size_t>(static_cast<std::size_t>(rank), 1, count);
}

double empirical_quantile(std::span<const double> values, double alpha) {
  const auto k = quantile_rank(alpha, values.size());
  std::vector<double> v(values.begin(), values.end());
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k - 1), v.end());
  return v[k - 1];
}

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgumentError("normal quantile level must lie in (0,1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), p);
}

}  // namespace fequiv
