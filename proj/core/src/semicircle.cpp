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

#include "ples/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ples/quadrature.hpp"
#include "ples/testfn.hpp"

namespace ples::semicircle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kEdgeLevels = 40;

}  // namespace

double density(double x) {
  if (std::abs(x) >= 2.0) return 0.0;
  return std::sqrt(4.0 - x * x) / (2.0 * kPi);
}

double cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  const double v = 0.5 + x * std::sqrt(4.0 - x * x) / (4.0 * kPi) + std::asin(0.5 * x) / kPi;
  return std::clamp(v, 0.0, 1.0);
}

double quantile(double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::invalid_argument("quantile: t must lie in [0, 1]");
  if (t == 0.0) return -2.0;
  if (t == 1.0) return 2.0;
  if (t == 0.5) return 0.0;

  double lo = -2.0;
  double hi = 2.0;
  double x = 2.0 * (2.0 * t - 1.0);
  for (int iter = 0; iter < 200; ++iter) {
    const double r = cdf(x) - t;
    if (std::abs(r) < 0.25 * kQuantileTolerance) return x;
    if (r > 0.0)
      hi = x;
    else
      lo = x;
    const double slope = density(x);
    double next = slope > 0.0 ? x - r / slope : lo - 1.0;
    // Leaving the bracket means Newton is unreliable here (flat density near
    // the edges): bisect instead.
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x) break;
    x = next;
    if (hi - lo < 4.0 * std::numeric_limits<double>::epsilon()) break;
  }
  return x;
}

double integrate_against_density(const std::function<double(double)>& g, double u) {
  const double upper = std::clamp(u, -2.0, 2.0);
  if (upper <= -2.0) return 0.0;
  const quad::Grid grid = quad::split_graded(-2.0, upper, {}, true, true, kEdgeLevels);
  return quad::integrate(grid, [&](double x) { return g(x) * density(x); });
}

double centering(const TestFunction& f, double u, std::size_t n) {
  return static_cast<double>(n) * integrate_against_density([&](double x) { return f(x); }, u);
}

std::complex<double> stieltjes(std::complex<double> z) {
  const std::complex<double> root = std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
  return 0.5 * (-z + root);
}

}  // namespace ples::semicircle
