// curvecast: early estimation of accuracy learning curves
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <stdexcept>

namespace curvecast {

/// Parameters of the power-law accuracy pattern
///
///   accuracy(x) = asymptote - amplitude * x^(-decay)
///
/// With amplitude > 0 and decay > 0 the pattern is strictly increasing and
/// concave on (0, inf), and approaches `asymptote` from below. Accuracy is
/// expressed in percent (0..100 scale); x counts words of training data.
///
/// Any pattern family exposing evaluate / asymptote / jacobian_row with these
/// signatures can be fitted by the trust-region machinery; the power law is
/// the only shipped member.
template <typename Scalar = double>
struct PowerLawParams {
  Scalar amplitude{};  // a > 0
  Scalar decay{};      // b > 0
  Scalar asymptote{};  // c, accuracy percent as x -> inf

  [[nodiscard]] bool valid() const {
    return amplitude > Scalar(0) && decay > Scalar(0);
  }
};

/// Pattern value at training size x (words). Requires x > 0.
template <typename Scalar>
Scalar evaluate(const PowerLawParams<Scalar>& p, Scalar x) {
  if (!(x > Scalar(0)))
    throw std::domain_error("power law: training size x must be positive");
  return p.asymptote - p.amplitude * std::pow(x, -p.decay);
}

/// Limit of the pattern as x -> inf; equals the asymptote parameter exactly.
template <typename Scalar>
Scalar asymptote(const PowerLawParams<Scalar>& p) {
  return p.asymptote;
}

/// Partial derivatives of evaluate() with respect to
/// (amplitude, decay, asymptote), as one Jacobian row.
template <typename Scalar>
Eigen::Matrix<Scalar, 1, 3> jacobian_row(const PowerLawParams<Scalar>& p,
                                         Scalar x) {
  if (!(x > Scalar(0)))
    throw std::domain_error("power law: training size x must be positive");
  const Scalar xb = std::pow(x, -p.decay);
  Eigen::Matrix<Scalar, 1, 3> row;
  row << -xb, p.amplitude * xb * std::log(x), Scalar(1);
  return row;
}

}  // namespace curvecast
