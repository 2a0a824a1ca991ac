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

#include "ples/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace ples::quad {
namespace {

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (int order : {2, 5, 16, 32}) {
    const Rule& r = gauss_legendre(order);
    for (int degree = 0; degree < 2 * order; ++degree) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], degree);
      const double exact = degree % 2 ? 0.0 : 2.0 / (degree + 1);
      EXPECT_NEAR(s, exact, 1e-13) << "order " << order << " degree " << degree;
    }
  }
}

TEST(GaussLegendre, CachedRuleIsStable) {
  const Rule& a = gauss_legendre(16);
  const Rule& b = gauss_legendre(16);
  EXPECT_EQ(&a, &b);
}

TEST(Grid, SplitUniformPlacesBreakpointsOnPanelEdges) {
  const std::vector<double> breaks{0.3};
  const Grid g = split_uniform(-1.0, 1.0, breaks, 100);
  // A step at 0.3 integrates exactly only if no panel straddles it.
  const double s = integrate(g, [](double x) { return x <= 0.3 ? 1.0 : 0.0; });
  EXPECT_NEAR(s, 1.3, 1e-14);
  EXPECT_GE(g.size(), 100u);
}

TEST(Grid, GradedPanelsResolveSquareRootEdge) {
  const Grid g = split_graded(-2.0, 2.0, {}, true, true, 40);
  const double s = integrate(g, [](double x) { return std::sqrt(4.0 - x * x); });
  EXPECT_NEAR(s, 2.0 * std::numbers::pi, 1e-12);
}

TEST(Grid, GradedTowardInteriorKink) {
  const std::vector<double> breaks{0.25};
  const Grid g = split_graded(0.0, 1.0, breaks, false, false, 30);
  const double s = integrate(g, [](double x) { return std::sqrt(std::abs(x - 0.25)); });
  const double exact = (2.0 / 3.0) * (std::pow(0.25, 1.5) + std::pow(0.75, 1.5));
  EXPECT_NEAR(s, exact, 1e-12);
}

}  // namespace
}  // namespace ples::quad
