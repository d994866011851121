// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#include "curvecast/fit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace curvecast {

namespace {

// Residuals and Jacobian of the power law against fixed observations.
struct PowerLawProblem {
  std::span<const double> xs;
  std::span<const double> ys;

  static PowerLawParams<double> unpack(const Eigen::VectorXd& p) {
    return {p[0], p[1], p[2]};
  }

  Eigen::VectorXd residuals(const Eigen::VectorXd& p) const {
    const auto params = unpack(p);
    Eigen::VectorXd r(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
      r[static_cast<Eigen::Index>(i)] = evaluate(params, xs[i]) - ys[i];
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& p) const {
    const auto params = unpack(p);
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(xs.size()), 3);
    for (std::size_t i = 0; i < xs.size(); ++i)
      jac.row(static_cast<Eigen::Index>(i)) = jacobian_row(params, xs[i]);
    return jac;
  }
};

void check_points(std::span<const double> xs, std::span<const double> ys,
                  int level) {
  if (level < 3)
    throw std::invalid_argument("fit: need at least three points to fit a curve");
  if (xs.size() != ys.size())
    throw std::invalid_argument("fit: coordinate arrays differ in length");
  if (static_cast<int>(xs.size()) < level)
    throw std::invalid_argument("fit: fewer observations than the requested level");
  for (int i = 0; i < level; ++i) {
    if (!(xs[i] > 0.0))
      throw std::domain_error("fit: word positions must be positive");
    if (i > 0 && xs[i] <= xs[i - 1])
      throw std::domain_error("fit: word positions must be strictly increasing");
  }
}

}  // namespace

PowerLawParams<double> initial_guess(std::span<const double> xs,
                                     std::span<const double> ys,
                                     double parameter_floor) {
  check_points(xs, ys, 3);
  const double ceiling = *std::max_element(ys.begin(), ys.begin() + static_cast<std::ptrdiff_t>(ys.size())) + 1.0;
  const double decay = 0.5;
  // Pass through the first observation: ceiling - a * x1^(-1/2) = y1.
  double amplitude = (ceiling - ys[0]) * std::sqrt(xs[0]);
  amplitude = std::max(amplitude, parameter_floor);
  return {amplitude, std::max(decay, parameter_floor), ceiling};
}

PowerLawParams<double> initial_guess(std::span<const Observation> observations,
                                     double parameter_floor) {
  const auto averaged = average_folds(observations);
  std::vector<double> xs, ys;
  xs.reserve(averaged.size());
  ys.reserve(averaged.size());
  for (const auto& obs : averaged) {
    xs.push_back(static_cast<double>(obs.words));
    ys.push_back(obs.accuracy);
  }
  return initial_guess(xs, ys, parameter_floor);
}

PowerLawTrend fit_points(std::span<const double> xs, std::span<const double> ys,
                         int level, const FitConfig& config) {
  validate(config);
  check_points(xs, ys, level);
  const auto head_x = xs.subspan(0, static_cast<std::size_t>(level));
  const auto head_y = ys.subspan(0, static_cast<std::size_t>(level));

  const auto guess = initial_guess(head_x, head_y, config.parameter_floor);
  Eigen::VectorXd start(3);
  start << guess.amplitude, guess.decay, guess.asymptote;
  Eigen::VectorXd lower(3);
  lower << config.parameter_floor, config.parameter_floor,
      -std::numeric_limits<double>::infinity();

  const PowerLawProblem problem{head_x, head_y};
  auto solved = minimize_least_squares(problem, std::move(start), lower, config);

  PowerLawTrend trend;
  trend.params = PowerLawProblem::unpack(solved.parameters);
  trend.level = level;
  trend.rss = solved.rss;
  trend.converged = solved.converged;
  return trend;
}

PowerLawTrend fit_trend(std::span<const Observation> observations, int level,
                        const FitConfig& config) {
  const auto averaged = average_folds(observations);
  std::vector<double> xs, ys;
  xs.reserve(averaged.size());
  ys.reserve(averaged.size());
  for (const auto& obs : averaged) {
    xs.push_back(static_cast<double>(obs.words));
    ys.push_back(obs.accuracy);
  }
  return fit_points(xs, ys, level, config);
}

}  // namespace curvecast
