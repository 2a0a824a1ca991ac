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
#include <span>
#include <vector>

namespace ples::quad {

/// Gauss-Legendre rule on [-1, 1].
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Returns the `order`-point Gauss-Legendre rule. Rules are computed once per
/// order and cached; the returned reference stays valid for the program
/// lifetime.
const Rule& gauss_legendre(int order);

/// A flattened composite quadrature: integral of g ~= sum_i w[i] * g(x[i]).
struct Grid {
  std::vector<double> x;
  std::vector<double> w;

  std::size_t size() const noexcept { return x.size(); }
};

/// Appends `panels` equal-width Gauss-Legendre panels covering [a, b].
void append_uniform(Grid& grid, double a, double b, std::size_t panels,
                    int order = 16);

enum class Grade { kLeft, kRight, kBoth };

/// Appends panels on [a, b] whose widths shrink geometrically (by `ratio`)
/// toward the graded endpoint(s). `levels` controls the smallest panel width,
/// (b - a) * ratio^levels. Resolves endpoint singularities such as sqrt(2-x)
/// or corner kinks at exponential rate in `levels`.
void append_graded(Grid& grid, double a, double b, Grade toward, int levels,
                   double ratio = 0.15, int order = 16);

/// Composite grid on [a, b] split at every breakpoint strictly inside (a, b).
/// Each piece receives panels in proportion to its length so the whole grid
/// carries at least `min_nodes` nodes.
Grid split_uniform(double a, double b, std::span<const double> breakpoints,
                   std::size_t min_nodes, int order = 16);

/// Same split as `split_uniform`, with geometric grading toward each
/// breakpoint and toward `a`/`b` when the corresponding flag is set.
Grid split_graded(double a, double b, std::span<const double> breakpoints,
                  bool grade_a, bool grade_b, int levels, int order = 16);

template <class F>
double integrate(const Grid& grid, F&& f) {
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.x.size(); ++i) sum += grid.w[i] * f(grid.x[i]);
  return sum;
}

}  // namespace ples::quad
