#include "fequiv/deviation.hpp"

#include "fequiv/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fequiv {

ExtremalSetMask::ExtremalSetMask(GridPtr grid, std::vector<bool> member)
    : grid_(std::move(grid)), member_(std::move(member)) {
  if (!grid_ || member_.size() != grid_->size()) throw DomainMismatchError("mask length differs from grid size");
  for (std::size_t i = 0; i < member_.size(); ++i)
    if (member_[i]) indices_.push_back(i);
}

ExtremalSetMask ExtremalSetMask::none(GridPtr grid) {
  const auto p = grid->size();
  return ExtremalSetMask(std::move(grid), std::vector<bool>(p, false));
}

ExtremalSetMask ExtremalSetMask::all(GridPtr grid) {
  const auto p = grid->size();
  return ExtremalSetMask(std::move(grid), std::vector<bool>(p, true));
}

Vector lower_deviation(const GridFunction& theta, const EquivalenceBand& band) {
  require_same_grid(theta.grid(), band.grid(), "lower_deviation");
  return band.lower().values() - theta.values();
}

Vector upper_deviation(const GridFunction& theta, const EquivalenceBand& band) {
  require_same_grid(theta.grid(), band.grid(), "upper_deviation");
  return theta.values() - band.upper().values();
}

double sup_deviation(const GridFunction& theta, const EquivalenceBand& band) {
  return std::max(lower_deviation(theta, band).maxCoeff(), upper_deviation(theta, band).maxCoeff());
}

ExtremalSets estimate_extremal_sets(const GridFunction& theta, const EquivalenceBand& band, double stat,
                                    double threshold) {
  if (!(threshold >= 0.0)) throw InvalidArgumentError("extremal-set threshold must be nonnegative");
  const Vector lo = lower_deviation(theta, band);
  const Vector up = upper_deviation(theta, band);
  const double cut = stat - threshold;
  const auto p = theta.size();
  std::vector<bool> in_lo(p), in_up(p);
  for (std::size_t i = 0; i < p; ++i) {
    in_lo[i] = lo[static_cast<Eigen::Index>(i)] >= cut;
    in_up[i] = up[static_cast<Eigen::Index>(i)] >= cut;
  }
  return {ExtremalSetMask(theta.grid(), std::move(in_lo)), ExtremalSetMask(theta.grid(), std::move(in_up))};
}

double masked_max(const Eigen::Ref<const Vector>& path, const ExtremalSetMask& lower, const ExtremalSetMask& upper) {
  if (lower.empty() && upper.empty()) throw InvalidExtremalSetError("both extremal sets are empty");
  double best = -std::numeric_limits<double>::infinity();
  for (auto i : lower.indices()) best = std::max(best, -path[static_cast<Eigen::Index>(i)]);
  for (auto i : upper.indices()) best = std::max(best, path[static_cast<Eigen::Index>(i)]);
  return best;
}

double masked_max(const GridFunction& path, const ExtremalSetMask& lower, const ExtremalSetMask& upper) {
  require_same_grid(path.grid(), lower.grid(), "masked_max");
  require_same_grid(path.grid(), upper.grid(), "masked_max");
  return masked_max(path.values(), lower, upper);
}

double extremal_threshold(double c, double n) {
  if (!(c >= 0.0)) throw InvalidArgumentError("tuning constant c must be nonnegative");
  return c * std::log(n) / std::sqrt(n);
}

}  // namespace fequiv
