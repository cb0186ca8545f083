#pragma once

#include "fequiv/grid.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace fequiv {

/// Membership flags over a grid marking an (estimated) extremal set.
class ExtremalSetMask {
 public:
  ExtremalSetMask() = default;
  ExtremalSetMask(GridPtr grid, std::vector<bool> member);

  static ExtremalSetMask none(GridPtr grid);
  static ExtremalSetMask all(GridPtr grid);

  const GridPtr& grid() const noexcept { return grid_; }
  const std::vector<bool>& member() const noexcept { return member_; }
  /// Grid indices of the members, ascending.
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  bool empty() const noexcept { return indices_.empty(); }
  std::size_t count() const noexcept { return indices_.size(); }
  bool contains(std::size_t i) const { return member_.at(i); }

  friend bool operator==(const ExtremalSetMask& a, const ExtremalSetMask& b) { return a.member_ == b.member_; }

 private:
  GridPtr grid_;
  std::vector<bool> member_;
  std::vector<std::size_t> indices_;
};

struct ExtremalSets {
  ExtremalSetMask lower;
  ExtremalSetMask upper;
};

/// -theta + lower boundary.
Vector lower_deviation(const GridFunction& theta, const EquivalenceBand& band);
/// theta - upper boundary.
Vector upper_deviation(const GridFunction& theta, const EquivalenceBand& band);

/// max{ max_t(-theta + lower), max_t(theta - upper) } over the grid. Negative
/// exactly when theta lies strictly inside the band everywhere.
double sup_deviation(const GridFunction& theta, const EquivalenceBand& band);

/// Points whose lower (upper) deviation is within `threshold` of `stat`.
ExtremalSets estimate_extremal_sets(const GridFunction& theta, const EquivalenceBand& band, double stat,
                                    double threshold);

/// max{ max over lower of -path, max over upper of path }; an empty mask is
/// skipped. Throws InvalidExtremalSetError if both masks are empty.
double masked_max(const Eigen::Ref<const Vector>& path, const ExtremalSetMask& lower, const ExtremalSetMask& upper);
double masked_max(const GridFunction& path, const ExtremalSetMask& lower, const ExtremalSetMask& upper);

/// c * log(n) / sqrt(n), the extremal-set cut used with effective sample size n.
double extremal_threshold(double c, double n);

}  // namespace fequiv
