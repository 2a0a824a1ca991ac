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

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace ples::quad {
namespace {

Rule compute_rule(int order) {
  Rule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Tricomi initial guess, then Newton on P_order.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged node for the weight.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= order; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = order * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule.nodes[order / 2] = 0.0;
  return rule;
}

void append_panel(Grid& grid, double a, double b, const Rule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    grid.x.push_back(mid + half * rule.nodes[i]);
    grid.w.push_back(half * rule.weights[i]);
  }
}

std::vector<double> cut_points(double a, double b,
                               std::span<const double> breakpoints) {
  std::vector<double> cuts{a};
  for (double p : breakpoints)
    if (p > a && p < b) cuts.push_back(p);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

}  // namespace

const Rule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
  static std::mutex mu;
  static std::map<int, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, compute_rule(order)).first;
  return it->second;
}

void append_uniform(Grid& grid, double a, double b, std::size_t panels, int order) {
  if (panels == 0 || !(b > a)) return;
  const Rule& rule = gauss_legendre(order);
  const double h = (b - a) / static_cast<double>(panels);
  for (std::size_t p = 0; p < panels; ++p) {
    const double lo = a + h * static_cast<double>(p);
    const double hi = (p + 1 == panels) ? b : lo + h;
    append_panel(grid, lo, hi, rule);
  }
}

void append_graded(Grid& grid, double a, double b, Grade toward, int levels,
                   double ratio, int order) {
  if (!(b > a)) return;
  if (toward == Grade::kBoth) {
    const double mid = 0.5 * (a + b);
    append_graded(grid, a, mid, Grade::kLeft, levels, ratio, order);
    append_graded(grid, mid, b, Grade::kRight, levels, ratio, order);
    return;
  }
  const Rule& rule = gauss_legendre(order);
  const double len = b - a;
  // Distances from the graded endpoint: len*ratio^levels < ... < len*ratio < len.
  std::vector<double> dist{0.0};
  for (int k = levels; k >= 1; --k) dist.push_back(len * std::pow(ratio, k));
  dist.push_back(len);
  for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
    if (toward == Grade::kLeft)
      append_panel(grid, a + dist[i], a + dist[i + 1], rule);
    else
      append_panel(grid, b - dist[i + 1], b - dist[i], rule);
  }
}

Grid split_uniform(double a, double b, std::span<const double> breakpoints,
                   std::size_t min_nodes, int order) {
  Grid grid;
  const auto cuts = cut_points(a, b, breakpoints);
  const double total = b - a;
  const double panels_total =
      std::ceil(static_cast<double>(min_nodes) / static_cast<double>(order));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double len = cuts[i + 1] - cuts[i];
    const auto panels = static_cast<std::size_t>(
        std::max(1.0, std::ceil(panels_total * len / total)));
    append_uniform(grid, cuts[i], cuts[i + 1], panels, order);
  }
  return grid;
}

Grid split_graded(double a, double b, std::span<const double> breakpoints,
                  bool grade_a, bool grade_b, int levels, int order) {
  Grid grid;
  const auto cuts = cut_points(a, b, breakpoints);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const bool left = (i > 0) || grade_a;
    const bool right = (i + 2 < cuts.size()) || grade_b;
    if (left && right)
      append_graded(grid, cuts[i], cuts[i + 1], Grade::kBoth, levels, 0.3, order);
    else if (left)
      append_graded(grid, cuts[i], cuts[i + 1], Grade::kLeft, levels, 0.3, order);
    else if (right)
      append_graded(grid, cuts[i], cuts[i + 1], Grade::kRight, levels, 0.3, order);
    else
      append_uniform(grid, cuts[i], cuts[i + 1], 4, order);
  }
  return grid;
}

}  // namespace ples::quad
