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

#include "ples/determinantal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ples/semicircle.hpp"

namespace ples::determinantal {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kRescaleAbove = 1e150;
constexpr double kRescaleFactor = 1e-150;
const double kLogRescale = std::log(kRescaleAbove);

// psi_{n-2}, psi_{n-1}, psi_n at X (psi_{-1} = psi_{-2} = 0).
struct Tail {
  double psi_n2 = 0.0;
  double psi_n1 = 0.0;
  double psi_n = 0.0;
};

Tail wavefunction_tail(std::size_t n, double x) {
  // Run the recurrence on psi_l * e^{X^2/4}; the Gaussian factor is applied
  // at the end through the accumulated log scale.
  double log_scale = -0.25 * x * x;
  double prev2 = 0.0;
  double prev = 0.0;
  double cur = std::pow(2.0 * kPi, -0.25);
  for (std::size_t l = 0; l < n; ++l) {
    const double next =
        (x * cur - std::sqrt(static_cast<double>(l)) * prev) / std::sqrt(static_cast<double>(l + 1));
    prev2 = prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      prev2 *= kRescaleFactor;
      prev *= kRescaleFactor;
      cur *= kRescaleFactor;
      log_scale += kLogRescale;
    }
  }
  const double s = std::exp(log_scale);
  return {prev2 * s, prev * s, cur * s};
}

double diagonal_from_tail(std::size_t n, const Tail& t) {
  const double nd = static_cast<double>(n);
  return nd * t.psi_n1 * t.psi_n1 - std::sqrt(nd * (nd - 1.0)) * t.psi_n2 * t.psi_n;
}

double christoffel_darboux(std::size_t n, const Tail& tx, const Tail& ty, double dx) {
  return std::sqrt(static_cast<double>(n)) * (tx.psi_n * ty.psi_n1 - tx.psi_n1 * ty.psi_n) / dx;
}

Observable indicator(double u) {
  return {[u](double x) { return x <= u ? 1.0 : 0.0; }, {u}, "indicator"};
}

std::size_t node_count(std::size_t n, double window, const QuadratureOptions& options) {
  const double base = std::max<double>(static_cast<double>(options.nodes_per_n * n),
                                       static_cast<double>(options.min_nodes));
  return static_cast<std::size_t>(std::ceil(base * window / (2.0 + options.delta)));
}

}  // namespace

double oscillator_wavefunction(std::size_t l, double x) { return wavefunction_tail(l, x).psi_n; }

std::vector<double> wavefunction_stack(std::size_t lmax, double x) {
  std::vector<double> out(lmax + 1);
  double log_scale = -0.25 * x * x;
  double prev = 0.0;
  double cur = std::pow(2.0 * kPi, -0.25);
  out[0] = cur * std::exp(log_scale);
  for (std::size_t l = 0; l < lmax; ++l) {
    const double next =
        (x * cur - std::sqrt(static_cast<double>(l)) * prev) / std::sqrt(static_cast<double>(l + 1));
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAbove) {
      prev *= kRescaleFactor;
      cur *= kRescaleFactor;
      log_scale += kLogRescale;
    }
    out[l + 1] = cur * std::exp(log_scale);
  }
  return out;
}

double kernel(std::size_t n, double x, double y) {
  if (n == 0) throw std::invalid_argument("kernel: n must be >= 1");
  const double d = x - y;
  if (std::abs(d) >= kDiagonalBlendThreshold)
    return christoffel_darboux(n, wavefunction_tail(n, x), wavefunction_tail(n, y), d);
  const double mid = 0.5 * (x + y);
  const double on_diagonal = diagonal_from_tail(n, wavefunction_tail(n, mid));
  if (d == 0.0) return on_diagonal;
  const double h = 0.5 * kDiagonalBlendThreshold;
  const double at_threshold = christoffel_darboux(n, wavefunction_tail(n, mid + h),
                                                  wavefunction_tail(n, mid - h),
                                                  kDiagonalBlendThreshold);
  return on_diagonal + (at_threshold - on_diagonal) * std::abs(d) / kDiagonalBlendThreshold;
}

double rescaled_kernel(std::size_t n, double x, double y) {
  const double root = std::sqrt(static_cast<double>(n));
  return root * kernel(n, root * x, root * y);
}

double integration_window(std::size_t n, double delta) {
  const double airy_margin = 12.0 * std::pow(static_cast<double>(n), -2.0 / 3.0);
  return std::max(2.0 + delta, 2.0 + airy_margin);
}

KernelEvaluator::KernelEvaluator(std::size_t n, std::span<const double> breakpoints,
                                 QuadratureOptions options)
    : n_(n), window_(integration_window(n, options.delta)) {
  if (n == 0) throw std::invalid_argument("KernelEvaluator: n must be >= 1");
  grid_ = quad::split_uniform(-window_, window_, breakpoints, node_count(n, window_, options));
  const double root = std::sqrt(static_cast<double>(n));
  const std::size_t m = grid_.size();
  psi_n_.resize(m);
  psi_n1_.resize(m);
  diag_.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    const Tail t = wavefunction_tail(n, root * grid_.x[i]);
    psi_n_[i] = t.psi_n;
    psi_n1_[i] = t.psi_n1;
    diag_[i] = root * diagonal_from_tail(n, t);
  }
}

double KernelEvaluator::at(std::size_t i, std::size_t j) const {
  if (i == j) return diag_[i];
  const double root = std::sqrt(static_cast<double>(n_));
  const double dx = grid_.x[i] - grid_.x[j];
  if (std::abs(root * dx) < kDiagonalBlendThreshold)
    return rescaled_kernel(n_, grid_.x[i], grid_.x[j]);
  return root * (psi_n_[i] * psi_n1_[j] - psi_n1_[i] * psi_n_[j]) / dx;
}

double KernelEvaluator::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) s += grid_.w[i] * diag_[i];
  return s;
}

double KernelEvaluator::mean(const Observable& phi) const {
  double s = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) s += grid_.w[i] * phi.fn(grid_.x[i]) * diag_[i];
  return s;
}

double KernelEvaluator::variance(const Observable& phi) const {
  const std::size_t m = grid_.size();
  std::vector<double> values(m);
  for (std::size_t i = 0; i < m; ++i) values[i] = phi.fn(grid_.x[i]);
  const double root = std::sqrt(static_cast<double>(n_));
  // Symmetric integrand: sum over i < j counts each unordered pair once,
  // which absorbs the factor 1/2.
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = grid_.x[i];
    const double ai = psi_n_[i];
    const double bi = psi_n1_[i];
    const double vi = values[i];
    double row = 0.0;
    for (std::size_t j = i + 1; j < m; ++j) {
      const double d = vi - values[j];
      if (d == 0.0) continue;
      const double dx = xi - grid_.x[j];
      double k;
      if (std::abs(root * dx) >= kDiagonalBlendThreshold)
        k = root * (ai * psi_n1_[j] - bi * psi_n_[j]) / dx;
      else
        k = rescaled_kernel(n_, xi, grid_.x[j]);
      row += grid_.w[j] * d * d * k * k;
    }
    total += grid_.w[i] * row;
  }
  return total;
}

double KernelEvaluator::max_cauchy_schwarz_excess() const {
  double worst = -std::numeric_limits<double>::infinity();
  const std::size_t m = grid_.size();
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double k = at(i, j);
      const double bound = diag_[i] * diag_[j];
      const double scale = std::max({bound, k * k, 1e-300});
      worst = std::max(worst, (k * k - bound) / scale);
    }
  }
  return worst;
}

double exact_mean(std::size_t n, const Observable& phi, QuadratureOptions options) {
  return KernelEvaluator(n, phi.kinks, options).mean(phi);
}

double exact_variance(std::size_t n, const Observable& phi, QuadratureOptions options) {
  return KernelEvaluator(n, phi.kinks, options).variance(phi);
}

MeanVariance counting_mean_variance(std::size_t n, double u, QuadratureOptions options) {
  const Observable ind = indicator(u);
  const KernelEvaluator eval(n, ind.kinks, options);
  return {eval.mean(ind), eval.variance(ind)};
}

double bulk_kernel_asymptotic(std::size_t n, double x) {
  if (!(std::abs(x) < 2.0))
    throw std::invalid_argument("bulk_kernel_asymptotic: x must lie inside (-2, 2)");
  const double nd = static_cast<double>(n);
  const double leading = nd / (2.0 * kPi) * std::sqrt(4.0 - x * x);
  // n int_x^2 sqrt(4 - y^2) dy = 2 pi n (1 - F_sc(x)): one oscillation per
  // eigenvalue to the right of x.
  const double phase = 2.0 * kPi * nd * (1.0 - semicircle::cdf(x));
  const double amplitude = (1.0 / (4.0 * kPi)) * (1.0 / (x - 2.0) - 1.0 / (x + 2.0));
  return leading + amplitude * std::cos(phase);
}

double orthonormality_defect(std::size_t lmax) {
  const double half_width = 2.0 * std::sqrt(static_cast<double>(lmax + 1)) + 14.0;
  const quad::Grid grid =
      quad::split_uniform(-half_width, half_width, {}, std::max<std::size_t>(40 * (lmax + 1), 800));
  const std::size_t m = lmax + 1;
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto psi = wavefunction_stack(lmax, grid.x[i]);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t k = l; k < m; ++k) gram[l * m + k] += grid.w[i] * psi[l] * psi[k];
  }
  double worst = 0.0;
  for (std::size_t l = 0; l < m; ++l)
    for (std::size_t k = l; k < m; ++k)
      worst = std::max(worst, std::abs(gram[l * m + k] - (l == k ? 1.0 : 0.0)));
  return worst;
}

double reproducing_integral(std::size_t n, double x, double z) {
  const double root = std::sqrt(static_cast<double>(n));
  const double half_width = root * integration_window(n, kDefaultDelta);
  const std::vector<double> breaks{x, z};
  const quad::Grid grid = quad::split_uniform(
      -half_width, half_width, breaks, std::max<std::size_t>(40 * n, 800));
  double s = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i)
    s += grid.w[i] * kernel(n, x, grid.x[i]) * kernel(n, grid.x[i], z);
  return s;
}

}  // namespace ples::determinantal
