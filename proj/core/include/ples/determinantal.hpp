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

#include "ples/quadrature.hpp"
#include "ples/testfn.hpp"

/// Exact finite-n GUE quantities from the determinantal structure of the
/// eigenvalues: oscillator wave functions, the Christoffel-Darboux kernel
/// and the one- and two-point integral formulas for E L_n and Var L_n.
///
/// Unscaled coordinates X refer to W_n (weight e^{-X^2/2}); scaled
/// coordinates x = X / sqrt(n) refer to M_n = W_n / sqrt(n).
namespace ples::determinantal {

/// psi_l(X) = H_l(X) e^{-X^2/4}, H_l orthonormal for e^{-X^2/2}. Upward
/// recurrence with running rescaling, so large |X| underflows cleanly to 0
/// instead of producing inf * 0.
double oscillator_wavefunction(std::size_t l, double x);

/// psi_0(x), ..., psi_lmax(x).
std::vector<double> wavefunction_stack(std::size_t lmax, double x);

inline constexpr double kDiagonalBlendThreshold = 1e-7;

/// K_n(X, Y) = sum_{l<n} psi_l(X) psi_l(Y), via Christoffel-Darboux off the
/// diagonal and the l'Hopital form on it, blended linearly for
/// |X - Y| < 1e-7.
double kernel(std::size_t n, double x, double y);

/// Kernel of M_n: sqrt(n) K_n(sqrt(n) x, sqrt(n) y). K(x, x) / n is the
/// density of E F_n.
double rescaled_kernel(std::size_t n, double x, double y);

struct QuadratureOptions {
  double delta = kDefaultDelta;
  /// Gauss-Legendre nodes per unit of n over [-2 - delta, 2 + delta].
  std::size_t nodes_per_n = 20;
  std::size_t min_nodes = 400;
};

/// Half-width of the integration window in scaled coordinates: 2 + delta,
/// widened at small n so the Airy-scale tail beyond 2 is below 1e-16.
double integration_window(std::size_t n, double delta);

/// Finite-n kernel evaluated on a composite Gauss-Legendre grid. Caches
/// psi_{n-2}, psi_{n-1}, psi_n at every node; immutable afterwards.
class KernelEvaluator {
 public:
  /// Grid panels are split at every point in `breakpoints`.
  KernelEvaluator(std::size_t n, std::span<const double> breakpoints = {},
                  QuadratureOptions options = {});

  std::size_t n() const noexcept { return n_; }
  const quad::Grid& grid() const noexcept { return grid_; }
  double window() const noexcept { return window_; }

  /// Scaled kernel between grid nodes i and j.
  double at(std::size_t i, std::size_t j) const;
  double diagonal(std::size_t i) const { return diag_[i]; }

  /// int K(x, x) dx, which equals n.
  double trace() const;
  /// int phi(x) K(x, x) dx.
  double mean(const Observable& phi) const;
  /// (1/2) int int (phi(x) - phi(y))^2 K(x, y)^2 dx dy.
  double variance(const Observable& phi) const;
  /// max over node pairs of K(x_i, x_j)^2 - K(x_i, x_i) K(x_j, x_j),
  /// relative to the larger diagonal product. Nonpositive up to rounding.
  double max_cauchy_schwarz_excess() const;

 private:
  std::size_t n_;
  double window_;
  quad::Grid grid_;
  std::vector<double> psi_n_;
  std::vector<double> psi_n1_;
  std::vector<double> diag_;
};

/// E L_n[phi] for GUE.
double exact_mean(std::size_t n, const Observable& phi, QuadratureOptions options = {});
/// Var L_n[phi] for GUE. Panels are split at phi's kinks on both axes.
double exact_variance(std::size_t n, const Observable& phi, QuadratureOptions options = {});

struct MeanVariance {
  double mean;
  double variance;
};

/// Mean and variance of the eigenvalue counting function N_n(-inf, u].
MeanVariance counting_mean_variance(std::size_t n, double u, QuadratureOptions options = {});

/// Two-term bulk asymptotic of K_n(x, x) (scaled), valid for |x| < 2.
double bulk_kernel_asymptotic(std::size_t n, double x);

/// max_{l, m <= lmax} |int psi_l psi_m - delta_lm|.
double orthonormality_defect(std::size_t lmax);

/// int K_n(X, Y) K_n(Y, Z) dY (unscaled), which equals K_n(X, Z).
double reproducing_integral(std::size_t n, double x, double z);

}  // namespace ples::determinantal
