#include "fequiv/bspline.hpp"

#include "fequiv/error.hpp"

#include <algorithm>

namespace fequiv {

BSplineBasis::BSplineBasis(std::size_t count, int degree) : count_(count), degree_(degree) {
  if (degree < 0) throw InvalidArgumentError("B-spline degree must be nonnegative");
  const auto k = static_cast<std::size_t>(degree);
  if (count < k + 1) throw InvalidArgumentError("B-spline basis needs at least degree + 1 functions");
  const std::size_t pieces = count - k;
  knots_.assign(k + 1, 0.0);
  for (std::size_t j = 1; j < pieces; ++j) knots_.push_back(static_cast<double>(j) / static_cast<double>(pieces));
  knots_.insert(knots_.end(), k + 1, 1.0);
}

std::size_t BSplineBasis::span(double t) const {
  const auto k = static_cast<std::size_t>(degree_);
  if (t >= knots_[count_]) return count_ - 1;
  // Last index s in [k, count-1] with knots[s] <= t.
  const auto it = std::upper_bound(knots_.begin() + static_cast<std::ptrdiff_t>(k),
                                   knots_.begin() + static_cast<std::ptrdiff_t>(count_), t);
  return static_cast<std::size_t>(it - knots_.begin()) - 1;
}

Vector BSplineBasis::evaluate(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgumentError("B-spline evaluation point outside [0,1]");
  const auto k = static_cast<std::size_t>(degree_);
  const std::size_t s = span(t);

  // Triangular Cox-de Boor scheme over the k + 1 functions that are nonzero on the span.
  std::vector<double> n(k + 1, 0.0), left(k + 1), right(k + 1);
  n[0] = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    left[j] = t - knots_[s + 1 - j];
    right[j] = knots_[s + j] - t;
    double saved = 0.0;
    for (std::size_t r = 0; r < j; ++r) {
      const double denom = right[r + 1] + left[j - r];
      const double temp = denom > 0.0 ? n[r] / denom : 0.0;
      n[r] = saved + right[r + 1] * temp;
      saved = left[j - r] * temp;
    }
    n[j] = saved;
  }

  Vector out = Vector::Zero(static_cast<Eigen::Index>(count_));
  for (std::size_t r = 0; r <= k; ++r) out[static_cast<Eigen::Index>(s - k + r)] = n[r];
  return out;
}

RowMatrix BSplineBasis::design(const Grid& grid) const {
  RowMatrix out(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(count_));
  for (std::size_t i = 0; i < grid.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = evaluate(grid[i]).transpose();
  return out;
}

}  // namespace fequiv
