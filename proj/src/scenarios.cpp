#include "fequiv/scenarios.hpp"

#include "fequiv/error.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace fequiv {

namespace {

void require_index(int i, int lo, int hi, const char* what) {
  if (i < lo || i > hi) throw InvalidArgumentError(std::string(what) + ": scenario index out of range");
}

double cos2pi(double t) { return std::cos(2.0 * std::numbers::pi * t); }

}  // namespace

GridFunction mu2_subinterval(double a, double b1, double b2, const GridPtr& grid) {
  if (!(0.02 < b1 && b1 <= b2 && b2 < 0.98)) throw InvalidArgumentError("subinterval mean needs 0.02 < b1 <= b2 < 0.98");
  if (!std::isfinite(a)) throw InvalidArgumentError("subinterval height must be finite");
  return GridFunction::from(grid, [=](double t) {
    if (t < b1) return a / (b1 - 0.02) * (t - 0.02);
    if (t <= b2) return a;
    return -a / (0.98 - b2) * (t - b2) + a;
  });
}

double fogarty_null_rate(int i) {
  if (i < 1) throw InvalidArgumentError("null scenario index must be positive");
  return i == 1 ? 0.0 : std::pow(10.0, 2.0 * (i - 2) / 7.0);
}

GridFunction fogarty_null_shift(int i, const GridPtr& grid) {
  if (i % 2 == 0) throw InvalidArgumentError("null scenarios are 1, 3, 5, 7, 9");
  require_index(i, 1, 9, "fogarty_null_shift");
  const double rate = fogarty_null_rate(i);
  return GridFunction::from(grid, [=](double t) { return 0.2 * std::exp(-rate * std::abs(t - 0.5)); });
}

GridFunction fogarty_ratio_null(int i, const GridPtr& grid) {
  if (i % 2 == 0) throw InvalidArgumentError("null scenarios are 1, 3, 5, 7, 9");
  require_index(i, 1, 9, "fogarty_ratio_null");
  const double rate = fogarty_null_rate(i);
  return GridFunction::from(grid,
                            [=](double t) { return std::exp(std::log(2.0) * std::exp(-rate * std::abs(t - 0.5))); });
}

double fogarty_power_b(int i) {
  require_index(i, 1, 8, "fogarty_power_b");
  return 0.05 - 0.1 * (i - 1) / 14.0;
}

double fogarty_power_c(int i) {
  require_index(i, 1, 8, "fogarty_power_c");
  return 0.15 - 0.3 * (i - 1) / 14.0;
}

double fogarty_power_d(int i) {
  require_index(i, 1, 8, "fogarty_power_d");
  return -1.0 + 2.0 * (i - 1) / 14.0;
}

GridFunction fogarty_power_shift(int i, const GridPtr& grid) {
  const double b = fogarty_power_b(i);
  const double c = fogarty_power_c(i);
  return GridFunction::from(grid, [=](double t) { return -b * cos2pi(t) - c; });
}

GridFunction fogarty_ratio_power(int i, const GridPtr& grid) {
  const double d = fogarty_power_d(i);
  return GridFunction::from(grid, [=](double t) { return std::pow(0.1 * cos2pi(t) + 1.8, d); });
}

GridFunction surrogate_mu1(const GridPtr& grid) {
  return GridFunction::from(grid, [](double t) {
    return 0.3 * std::sin(2.0 * std::numbers::pi * t) * std::exp(-t) + 0.5 * t;
  });
}

GridFunction surrogate_sigma2_1(const GridPtr& grid) {
  return GridFunction::from(grid, [](double t) { return 0.05 * (1.0 + 0.5 * cos2pi(t)); });
}

BasisProcess::BasisProcess(GridPtr grid, const BSplineBasis& basis)
    : BasisProcess(grid, basis, Vector::LinSpaced(static_cast<Eigen::Index>(basis.count()), 1.0,
                                                  static_cast<double>(basis.count()))
                                    .cwiseInverse()) {}

BasisProcess::BasisProcess(GridPtr grid, const BSplineBasis& basis, Vector coefficient_sd)
    : grid_(std::move(grid)), design_(basis.design(*grid_)), sd_(std::move(coefficient_sd)) {
  if (sd_.size() != static_cast<Eigen::Index>(basis.count()))
    throw InvalidArgumentError("one coefficient standard deviation per basis function is required");
  if (!(sd_.array() >= 0.0).all()) throw InvalidArgumentError("coefficient standard deviations must be nonnegative");
  pointwise_sd_ = variance().array().sqrt();
}

Vector BasisProcess::variance() const { return design_.array().square().matrix() * sd_.array().square().matrix(); }

Vector BasisProcess::draw(Rng& rng) const {
  std::normal_distribution<double> normal;
  Vector coef(sd_.size());
  for (Eigen::Index i = 0; i < coef.size(); ++i) coef[i] = sd_[i] * normal(rng);
  return design_ * coef;
}

Vector BasisProcess::draw_standardized(Rng& rng) const {
  if (!(pointwise_sd_.array() > 0.0).all()) throw DegenerateVarianceError("basis process has zero variance somewhere");
  return draw(rng).cwiseQuotient(pointwise_sd_);
}

FunctionalSample bspline_curve_sample(const GridFunction& mu, std::size_t count, const BasisProcess& process,
                                      std::uint64_t seed, double ar) {
  require_same_grid(mu.grid(), process.grid(), "bspline_curve_sample");
  if (count < 1) throw UndersizedSampleError("at least one curve is required");
  if (!(ar > -1.0 && ar < 1.0)) throw InvalidArgumentError("autoregressive coefficient must lie in (-1,1)");
  const double innovation_scale = std::sqrt(1.0 - ar * ar);
  RowMatrix curves(static_cast<Eigen::Index>(count), mu.values().size());
  Vector eta;
  for (std::size_t j = 0; j < count; ++j) {
    Rng rng = make_stream(seed, j);
    const Vector innovation = process.draw(rng);
    eta = j == 0 ? innovation : Vector(ar * eta + innovation_scale * innovation);
    curves.row(static_cast<Eigen::Index>(j)) = (mu.values() + eta).transpose();
  }
  return FunctionalSample(mu.grid(), std::move(curves));
}

PairedRESample re_sample_gen(const REDesign& design, const GridFunction& mu1, const GridFunction& mu2,
                             const GridFunction& sigma2_1, const GridFunction& sigma2_2, const BasisProcess& process,
                             std::uint64_t seed) {
  for (const auto* f : {&mu2, &sigma2_1, &sigma2_2}) require_same_grid(mu1.grid(), f->grid(), "re_sample_gen");
  require_same_grid(mu1.grid(), process.grid(), "re_sample_gen");
  if (!(sigma2_1.values().array() >= 0.0).all() || !(sigma2_2.values().array() >= 0.0).all())
    throw InvalidArgumentError("variance functions must be nonnegative");
  if (!(design.group_variance >= 0.0)) throw InvalidArgumentError("group variance multiple must be nonnegative");
  if (!(design.cross_correlation >= 0.0 && design.cross_correlation <= 1.0))
    throw InvalidArgumentError("cross-device correlation must lie in [0,1]");

  const Vector sd1 = sigma2_1.values().array().sqrt();
  const Vector sd2 = sigma2_2.values().array().sqrt();
  const double shared = std::sqrt(design.cross_correlation);
  const double own = std::sqrt(1.0 - design.cross_correlation);
  const double group_scale = std::sqrt(design.group_variance);
  const auto p = mu1.values().size();

  // One pair of correlated, unit-variance paths from `rng`: shared part first.
  auto pair = [&](Rng& rng) {
    const Vector common = process.draw_standardized(rng);
    const Vector u1 = shared * common + own * process.draw_standardized(rng);
    const Vector u2 = shared * common + own * process.draw_standardized(rng);
    return std::pair<Vector, Vector>{u1.cwiseProduct(sd1), u2.cwiseProduct(sd2)};
  };

  std::vector<PairedGroup> groups;
  groups.reserve(design.groups);
  for (std::size_t i = 0; i < design.groups; ++i) {
    const std::uint64_t group_seed = derive_seed(seed, i);
    Rng effect_rng = make_stream(group_seed, 0);
    const auto [eps1, eps2] = pair(effect_rng);
    PairedGroup g{RowMatrix(static_cast<Eigen::Index>(design.per_group), p),
                  RowMatrix(static_cast<Eigen::Index>(design.per_group), p)};
    for (std::size_t j = 0; j < design.per_group; ++j) {
      Rng rng = make_stream(group_seed, j + 1);
      const auto [eta1, eta2] = pair(rng);
      g.first.row(static_cast<Eigen::Index>(j)) = (mu1.values() + group_scale * eps1 + eta1).transpose();
      g.second.row(static_cast<Eigen::Index>(j)) = (mu2.values() + group_scale * eps2 + eta2).transpose();
    }
    groups.push_back(std::move(g));
  }
  return PairedRESample(mu1.grid(), std::move(groups));
}

}  // namespace fequiv
