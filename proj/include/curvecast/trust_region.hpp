// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace curvecast {

/// Knobs of the nonlinear least-squares iteration.
struct FitConfig {
  int max_iterations = 200;
  double residual_tolerance = 1e-10;  // relative rss improvement that counts as stalled
  double step_tolerance = 1e-12;      // scaled step size that counts as stalled
  double initial_trust_radius = 1.0;  // in scaled parameter units
  double parameter_floor = 1e-9;      // lower bound for amplitude and decay
};

inline void validate(const FitConfig& config) {
  if (config.max_iterations <= 0 || config.residual_tolerance <= 0 ||
      config.step_tolerance <= 0 || config.initial_trust_radius <= 0 ||
      config.parameter_floor <= 0)
    throw std::invalid_argument("fit config: all fields must be strictly positive");
}

template <typename Scalar>
struct TrustRegionResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> parameters;
  Scalar rss = std::numeric_limits<Scalar>::quiet_NaN();
  bool converged = false;
  int iterations = 0;
  std::vector<Scalar> rss_history;  // rss at start plus after every accepted step
};

/// Minimizes ||residuals(p)||^2 with a dogleg trust-region iteration.
///
/// `Problem` provides
///   VectorX residuals(const VectorX& p) const;
///   MatrixX jacobian(const VectorX& p) const;
///
/// The trust region lives in a diagonally scaled parameter space; the scale
/// of each coordinate is the running maximum of the corresponding Jacobian
/// column norm, which makes the radius meaningful for parameters of very
/// different magnitudes. `lower` holds per-parameter lower bounds (use
/// -infinity to disable); candidate points are projected onto the bounds
/// before evaluation, so accepted iterates always satisfy them.
///
/// A step is accepted only if it strictly reduces the objective, so the
/// rss_history is non-increasing. `converged` reports whether a stopping
/// tolerance was met before max_iterations ran out.
template <typename Scalar, typename Problem>
TrustRegionResult<Scalar> minimize_least_squares(
    const Problem& problem,
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> start,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& lower,
    const FitConfig& config = {}) {
  using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  validate(config);
  const Eigen::Index n = start.size();
  if (lower.size() != n)
    throw std::invalid_argument("trust region: bound vector size mismatch");

  const auto project = [&](VectorX p) -> VectorX { return p.cwiseMax(lower); };

  VectorX theta = project(std::move(start));
  VectorX r = problem.residuals(theta);
  MatrixX jac = problem.jacobian(theta);
  Scalar half_rss = Scalar(0.5) * r.squaredNorm();

  VectorX scale = VectorX::Constant(n, Scalar(1e-12));
  const auto refresh_scale = [&] {
    for (Eigen::Index j = 0; j < n; ++j)
      scale[j] = std::max(scale[j], jac.col(j).norm());
  };
  refresh_scale();

  TrustRegionResult<Scalar> result;
  result.rss_history.push_back(Scalar(2) * half_rss);

  Scalar radius = Scalar(config.initial_trust_radius);
  const Scalar eta = Scalar(1e-4);  // minimum gain ratio for acceptance
  bool converged = half_rss == Scalar(0);

  int it = 0;
  while (!converged && it < config.max_iterations) {
    ++it;
    const VectorX grad = jac.transpose() * r;

    // Gauss-Newton step; QR keeps the flat directions of ill-conditioned
    // prefixes from poisoning the solve.
    const VectorX gn = jac.colPivHouseholderQr().solve(-r);
    const VectorX gn_scaled = scale.asDiagonal() * gn;

    // Dogleg step in scaled space.
    VectorX step_scaled;
    bool on_boundary = false;
    if (gn_scaled.norm() <= radius && gn_scaled.allFinite()) {
      step_scaled = gn_scaled;
    } else {
      on_boundary = true;
      const VectorX grad_scaled = grad.cwiseQuotient(scale);
      const Scalar gnorm = grad_scaled.norm();
      const Scalar curvature =
          (jac * grad_scaled.cwiseQuotient(scale)).squaredNorm();
      if (!(gnorm > Scalar(0)) || !(curvature > Scalar(0))) {
        converged = true;  // zero gradient up to rounding: stationary point
        break;
      }
      const VectorX cauchy = -(gnorm * gnorm / curvature) * grad_scaled;
      const Scalar cnorm = cauchy.norm();
      if (cnorm >= radius || !gn_scaled.allFinite()) {
        step_scaled = -(radius / gnorm) * grad_scaled;
      } else {
        // Walk from the Cauchy point toward the GN point until the boundary.
        const VectorX d = gn_scaled - cauchy;
        const Scalar dd = d.squaredNorm();
        const Scalar cd = cauchy.dot(d);
        const Scalar cc = cnorm * cnorm;
        const Scalar disc = std::sqrt(std::max(
            cd * cd + dd * (radius * radius - cc), Scalar(0)));
        const Scalar t = dd > Scalar(0) ? (radius * radius - cc) / (cd + disc)
                                        : Scalar(0);
        step_scaled = cauchy + std::min(std::max(t, Scalar(0)), Scalar(1)) * d;
      }
    }

    const VectorX candidate = project(theta + step_scaled.cwiseQuotient(scale));
    const VectorX step = candidate - theta;  // effective step after projection
    const Scalar step_scaled_norm = (scale.asDiagonal() * step).norm();
    const Scalar theta_scaled_norm = (scale.asDiagonal() * theta).norm();
    const Scalar stall =
        Scalar(config.step_tolerance) * (theta_scaled_norm + Scalar(config.step_tolerance));

    const Scalar predicted =
        -(grad.dot(step) + Scalar(0.5) * (jac * step).squaredNorm());
    Scalar actual = -std::numeric_limits<Scalar>::infinity();
    Scalar candidate_half_rss = half_rss;
    VectorX candidate_r;
    if (predicted > Scalar(0) && step_scaled_norm > Scalar(0)) {
      candidate_r = problem.residuals(candidate);
      candidate_half_rss = Scalar(0.5) * candidate_r.squaredNorm();
      actual = half_rss - candidate_half_rss;
    }

    if (predicted > Scalar(0) && actual > eta * predicted &&
        candidate_half_rss < half_rss) {
      const Scalar previous = half_rss;
      theta = candidate;
      r = std::move(candidate_r);
      half_rss = candidate_half_rss;
      jac = problem.jacobian(theta);
      refresh_scale();
      result.rss_history.push_back(Scalar(2) * half_rss);

      const Scalar rho = actual / predicted;
      if (rho > Scalar(0.75) && on_boundary)
        radius = std::min(Scalar(2) * radius, Scalar(1e16));
      else if (rho < Scalar(0.25))
        radius = std::max(radius / Scalar(4), std::numeric_limits<Scalar>::min());

      if (half_rss == Scalar(0) ||
          previous - half_rss <= Scalar(config.residual_tolerance) * previous ||
          step_scaled_norm <= stall) {
        converged = true;
      }
    } else {
      radius = std::min(radius, step_scaled_norm > Scalar(0)
                                    ? step_scaled_norm
                                    : radius) / Scalar(4);
      if (radius <= stall || !(radius > Scalar(0))) {
        converged = true;  // the region collapsed: no usable descent left
      }
    }
  }

  result.parameters = std::move(theta);
  result.rss = Scalar(2) * half_rss;
  result.converged = converged;
  result.iterations = it;
  return result;
}

}  // namespace curvecast
