// Copyright 2026 The ples Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ples/testfn.hpp"

/// Limiting (n -> infinity) variance and covariance functionals for GUE
/// partial linear statistics.
///
/// Both double integrals over [-2, 2]^2 carry the edge weight
/// (4 - lambda mu) / (sqrt(4 - lambda^2) sqrt(4 - mu^2)). Under
/// lambda = 2 cos(theta), mu = 2 cos(phi) the weight times the measure
/// becomes 4 (1 - cos(theta) cos(phi)) dtheta dphi, so the integrand is
/// smooth except along the kink lines theta = arccos(u / 2). Panels are split
/// there and graded geometrically toward each kink.
namespace ples::limits {

/// Margin delta of the time interval [delta, 1 - delta] for the process.
inline constexpr double kDefaultTimeDelta = 0.1;

struct LimitVariance {
  double value = 0.0;
  double error_estimate = 0.0;
  /// Quadrature panels per axis.
  std::size_t panels = 0;
  std::string function;
  std::vector<double> thresholds;
};

/// V_GUE[f_u] = (1/4pi^2) int int q(lambda, mu)^2 (4 - lambda mu)
///              / (sqrt(4 - lambda^2) sqrt(4 - mu^2)) dlambda dmu,
/// q the difference quotient of f_u. u must lie in [-2, 2].
LimitVariance limit_variance(const TestFunction& f, double u);

/// Covariance of the limiting partial-sum process at times s, t: the same
/// bilinear form with q_s q_t, q_r the quotient of f_{gamma_r}.
/// s and t must lie in [delta, 1 - delta].
LimitVariance process_covariance(const TestFunction& f, double s, double t,
                                 double delta = kDefaultTimeDelta);

/// Bilinear form evaluated directly at two truncation thresholds.
LimitVariance bilinear_form(const TestFunction& f, double u1, double u2);

/// sqrt(f(u)^2 log n / (2 pi^2)). Rejects f(u) == 0 and n < 2.
double counting_variance_normalizer(double f_at_u, std::size_t n);

}  // namespace ples::limits
