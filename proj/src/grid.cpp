#include "fequiv/grid.hpp"

#include "fequiv/error.hpp"

#include <cmath>
#include <string>

namespace fequiv {

namespace {

void require_finite(const Eigen::Ref<const RowMatrix>& m, const char* what) {
  if (!m.allFinite()) throw InvalidArgumentError(std::string(what) + ": non-finite value");
}

}  // namespace

Grid::Grid(std::vector<double> points) {
  if (points.size() < 2) throw InvalidArgumentError("grid needs at least two points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double t = points[i];
    if (!std::isfinite(t) || t < 0.0 || t > 1.0)
      throw InvalidArgumentError("grid point outside [0,1]: " + std::to_string(t));
    if (i > 0 && !(points[i - 1] < t)) throw InvalidArgumentError("grid points must be strictly increasing");
  }
  points_ = Eigen::Map<const Vector>(points.data(), static_cast<Eigen::Index>(points.size()));
}

GridPtr Grid::equispaced(std::size_t p) {
  std::vector<double> t(p);
  for (std::size_t i = 0; i < p; ++i) t[i] = p > 1 ? static_cast<double>(i) / static_cast<double>(p - 1) : 0.0;
  return std::make_shared<const Grid>(std::move(t));
}

GridPtr Grid::midpoints(std::size_t p) {
  std::vector<double> t(p);
  for (std::size_t i = 0; i < p; ++i) t[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(p);
  return std::make_shared<const Grid>(std::move(t));
}

bool same_grid(const GridPtr& a, const GridPtr& b) {
  if (!a || !b) return false;
  return a == b || *a == *b;
}

void require_same_grid(const GridPtr& a, const GridPtr& b, const char* context) {
  if (!same_grid(a, b)) throw DomainMismatchError(std::string(context) + ": grids differ");
}

GridFunction::GridFunction(GridPtr grid, Vector values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw InvalidArgumentError("grid function without grid");
  if (static_cast<std::size_t>(values_.size()) != grid_->size())
    throw DomainMismatchError("grid function length differs from grid size");
  require_finite(values_.transpose(), "grid function");
}

GridFunction GridFunction::constant(GridPtr grid, double value) {
  const auto p = static_cast<Eigen::Index>(grid->size());
  return GridFunction(std::move(grid), Vector::Constant(p, value));
}

GridFunction GridFunction::operator-() const { return GridFunction(grid_, -values_); }

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid_, b.grid_, "operator+");
  return GridFunction(a.grid_, a.values_ + b.values_);
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a.grid_, b.grid_, "operator-");
  return GridFunction(a.grid_, a.values_ - b.values_);
}

GridFunction operator*(double s, const GridFunction& f) { return GridFunction(f.grid_, s * f.values_); }

GridFunction operator+(const GridFunction& f, double c) {
  return GridFunction(f.grid_, (f.values_.array() + c).matrix());
}

FunctionalSample::FunctionalSample(GridPtr grid, RowMatrix curves) : grid_(std::move(grid)), curves_(std::move(curves)) {
  if (!grid_) throw InvalidArgumentError("sample without grid");
  if (curves_.rows() < 1) throw UndersizedSampleError("functional sample needs at least one curve");
  if (static_cast<std::size_t>(curves_.cols()) != grid_->size())
    throw DomainMismatchError("curve length differs from grid size");
  require_finite(curves_, "functional sample");
}

FunctionalSample::FunctionalSample(const std::vector<GridFunction>& curves) {
  if (curves.empty()) throw UndersizedSampleError("functional sample needs at least one curve");
  grid_ = curves.front().grid();
  curves_.resize(static_cast<Eigen::Index>(curves.size()), static_cast<Eigen::Index>(grid_->size()));
  for (std::size_t i = 0; i < curves.size(); ++i) {
    require_same_grid(grid_, curves[i].grid(), "functional sample");
    curves_.row(static_cast<Eigen::Index>(i)) = curves[i].values().transpose();
  }
}

GridFunction FunctionalSample::curve(std::size_t i) const {
  return GridFunction(grid_, curves_.row(static_cast<Eigen::Index>(i)).transpose());
}

EquivalenceBand::EquivalenceBand(GridFunction lower, GridFunction upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  require_same_grid(lower_.grid(), upper_.grid(), "equivalence band");
  if (!(lower_.values().array() < upper_.values().array()).all())
    throw InvalidArgumentError("equivalence band requires lower < upper at every grid point");
}

EquivalenceBand EquivalenceBand::constant(GridPtr grid, double lower, double upper) {
  return EquivalenceBand(GridFunction::constant(grid, lower), GridFunction::constant(grid, upper));
}

}  // namespace fequiv
