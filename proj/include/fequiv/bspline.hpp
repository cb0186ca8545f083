#pragma once

#include "fequiv/grid.hpp"

#include <cstddef>
#include <vector>

namespace fequiv {

/// B-spline basis on [0,1] with a clamped, equispaced knot vector.
///
/// With D functions of degree k there are D + k + 1 knots: k + 1 zeros,
/// D - k - 1 interior knots j / (D - k), and k + 1 ones.
class BSplineBasis {
 public:
  explicit BSplineBasis(std::size_t count = 21, int degree = 3);

  std::size_t count() const noexcept { return count_; }
  int degree() const noexcept { return degree_; }
  const std::vector<double>& knots() const noexcept { return knots_; }

  /// All basis functions at t (Cox-de Boor). At t = 1 the last function is 1.
  Vector evaluate(double t) const;
  /// Row i = basis values at grid point i.
  RowMatrix design(const Grid& grid) const;

 private:
  std::size_t span(double t) const;

  std::size_t count_;
  int degree_;
  std::vector<double> knots_;
};

}  // namespace fequiv
