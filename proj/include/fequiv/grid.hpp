#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <memory>
#include <vector>

namespace fequiv {

using Vector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Strictly increasing evaluation points in [0,1]; the discretized domain.
class Grid {
 public:
  explicit Grid(std::vector<double> points);

  /// p equispaced points 0, 1/(p-1), ..., 1.
  static std::shared_ptr<const Grid> equispaced(std::size_t p);
  /// p cell midpoints (j - 0.5)/p, j = 1..p.
  static std::shared_ptr<const Grid> midpoints(std::size_t p);

  std::size_t size() const noexcept { return static_cast<std::size_t>(points_.size()); }
  double operator[](std::size_t i) const { return points_[static_cast<Eigen::Index>(i)]; }
  const Vector& points() const noexcept { return points_; }

  friend bool operator==(const Grid& a, const Grid& b) { return a.points_ == b.points_; }

 private:
  Vector points_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// True when both pointers denote pointwise-identical grids.
bool same_grid(const GridPtr& a, const GridPtr& b);
/// Throws DomainMismatchError unless same_grid(a, b).
void require_same_grid(const GridPtr& a, const GridPtr& b, const char* context);

/// A real function sampled on a Grid. Values are finite; checked once here.
class GridFunction {
 public:
  GridFunction(GridPtr grid, Vector values);

  static GridFunction constant(GridPtr grid, double value);
  template <class F>
  static GridFunction from(GridPtr grid, F&& f) {
    Vector v(static_cast<Eigen::Index>(grid->size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = f(grid->points()[i]);
    return GridFunction(std::move(grid), std::move(v));
  }

  const GridPtr& grid() const noexcept { return grid_; }
  const Vector& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const { return values_[static_cast<Eigen::Index>(i)]; }

  GridFunction operator-() const;
  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(double s, const GridFunction& f);
  friend GridFunction operator+(const GridFunction& f, double c);

 private:
  GridPtr grid_;
  Vector values_;
};

/// Curves of one group, stored row-wise (one row per curve) on a shared grid.
class FunctionalSample {
 public:
  FunctionalSample(GridPtr grid, RowMatrix curves);
  explicit FunctionalSample(const std::vector<GridFunction>& curves);

  const GridPtr& grid() const noexcept { return grid_; }
  const RowMatrix& curves() const noexcept { return curves_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(curves_.rows()); }
  GridFunction curve(std::size_t i) const;

 private:
  GridPtr grid_;
  RowMatrix curves_;
};

/// Lower and upper boundary of the equivalence region; lower < upper pointwise.
class EquivalenceBand {
 public:
  EquivalenceBand(GridFunction lower, GridFunction upper);

  static EquivalenceBand constant(GridPtr grid, double lower, double upper);

  const GridFunction& lower() const noexcept { return lower_; }
  const GridFunction& upper() const noexcept { return upper_; }
  const GridPtr& grid() const noexcept { return lower_.grid(); }

 private:
  GridFunction lower_;
  GridFunction upper_;
};

}  // namespace fequiv
