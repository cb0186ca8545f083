#pragma once

#include "fequiv/grid.hpp"
#include "fequiv/random_effects.hpp"

#include <cstddef>
#include <initializer_list>
#include <random>
#include <vector>

namespace fequiv::testing {

inline GridPtr grid_of(std::initializer_list<double> t) { return std::make_shared<const Grid>(std::vector<double>(t)); }

inline RowMatrix matrix_of(std::initializer_list<std::initializer_list<double>> rows) {
  RowMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline RowMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng, double sd = 1.0) {
  std::normal_distribution<double> d(0.0, sd);
  RowMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = d(rng);
  return m;
}

// Random paired data with `a` groups of `per` pairs on `grid`.
inline PairedRESample random_paired(const GridPtr& grid, std::size_t a, std::size_t per, std::mt19937_64& rng,
                                    double offset2 = 0.0) {
  std::vector<PairedGroup> groups;
  const auto p = static_cast<Eigen::Index>(grid->size());
  for (std::size_t i = 0; i < a; ++i) {
    RowMatrix x1 = gaussian_matrix(static_cast<Eigen::Index>(per), p, rng);
    RowMatrix x2 = gaussian_matrix(static_cast<Eigen::Index>(per), p, rng);
    x2.array() += offset2;
    groups.push_back({x1, x2});
  }
  return PairedRESample(grid, std::move(groups));
}

}  // namespace fequiv::testing
