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

#include "ples/limits.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ples/quadrature.hpp"
#include "ples/semicircle.hpp"

namespace ples::limits {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGradingLevels = 30;
constexpr int kFineOrder = 16;
constexpr int kCoarseOrder = 10;

std::vector<double> kink_angles(std::initializer_list<double> thresholds) {
  std::vector<double> out;
  for (double u : thresholds)
    if (u > -2.0 && u < 2.0) out.push_back(std::acos(0.5 * u));
  return out;
}

double form_on_grid(const TruncatedFunction& a, const TruncatedFunction& b,
                    const quad::Grid& grid) {
  const std::size_t m = grid.size();
  std::vector<double> lam(m);
  std::vector<double> cosines(m);
  for (std::size_t i = 0; i < m; ++i) {
    cosines[i] = std::cos(grid.x[i]);
    lam[i] = 2.0 * cosines[i];
  }
  const bool same = a.threshold() == b.threshold();
  double total = 0.0;
  // Integrand symmetric in (theta, phi): diagonal once, off-diagonal twice.
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = i; j < m; ++j) {
      const double qa = difference_quotient(a, lam[i], lam[j]);
      const double qb = same ? qa : difference_quotient(b, lam[i], lam[j]);
      const double weight = 4.0 * (1.0 - cosines[i] * cosines[j]);
      row += (j == i ? 1.0 : 2.0) * grid.w[j] * qa * qb * weight;
    }
    total += grid.w[i] * row;
  }
  return total / (4.0 * kPi * kPi);
}

LimitVariance evaluate(const TestFunction& f, double u1, double u2) {
  for (double u : {u1, u2})
    if (!(u >= -2.0 && u <= 2.0))
      throw std::invalid_argument("limit variance: threshold must lie in [-2, 2]");
  const TruncatedFunction a(f, u1);
  const TruncatedFunction b(f, u2);
  const auto kinks = kink_angles({u1, u2});
  const quad::Grid fine =
      quad::split_graded(0.0, kPi, kinks, false, false, kGradingLevels, kFineOrder);
  const quad::Grid coarse =
      quad::split_graded(0.0, kPi, kinks, false, false, kGradingLevels, kCoarseOrder);
  LimitVariance out;
  out.value = form_on_grid(a, b, fine);
  out.error_estimate = std::abs(out.value - form_on_grid(a, b, coarse));
  out.panels = fine.size() / kFineOrder;
  out.function = f.name();
  out.thresholds = {u1};
  if (u2 != u1) out.thresholds.push_back(u2);
  return out;
}

}  // namespace

LimitVariance limit_variance(const TestFunction& f, double u) {
  LimitVariance v = evaluate(f, u, u);
  v.value = std::max(v.value, 0.0);
  return v;
}

LimitVariance bilinear_form(const TestFunction& f, double u1, double u2) {
  // Canonical argument order makes the form exactly symmetric.
  return evaluate(f, std::min(u1, u2), std::max(u1, u2));
}

LimitVariance process_covariance(const TestFunction& f, double s, double t, double delta) {
  for (double r : {s, t})
    if (!(r >= delta && r <= 1.0 - delta))
      throw std::invalid_argument("process covariance: times must lie in [delta, 1 - delta]");
  return bilinear_form(f, semicircle::quantile(s), semicircle::quantile(t));
}

double counting_variance_normalizer(double f_at_u, std::size_t n) {
  if (f_at_u == 0.0)
    throw std::invalid_argument("normalizer: f(u) = 0 (use the V_GUE[f_u] regime instead)");
  if (n < 2) throw std::invalid_argument("normalizer: n must be >= 2");
  return std::sqrt(f_at_u * f_at_u * std::log(static_cast<double>(n)) / (2.0 * kPi * kPi));
}

}  // namespace ples::limits
