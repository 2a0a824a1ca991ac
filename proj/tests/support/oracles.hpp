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

// Brute-force reference computations for the tests. Nothing here shares
// code with the library beyond the test-function types.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ples/ensemble.hpp"
#include "ples/testfn.hpp"

namespace ples::oracle {

inline constexpr double kPi = std::numbers::pi;

/// Midpoint rule on [-2, x] with `cells` cells.
inline double semicircle_cdf(double x, int cells = 2000000) {
  if (x <= -2.0) return 0.0;
  const double b = std::min(x, 2.0);
  const double h = (b + 2.0) / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double m = -2.0 + (i + 0.5) * h;
    s += std::sqrt(std::max(0.0, 4.0 - m * m));
  }
  return s * h / (2.0 * kPi);
}

/// n int_{-2}^u f rho_sc by the midpoint rule.
inline double centering(const TestFunction& f, double u, double n, int cells = 2000000) {
  const double b = std::clamp(u, -2.0, 2.0);
  const double h = (b + 2.0) / cells;
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    const double m = -2.0 + (i + 0.5) * h;
    s += f(m) * std::sqrt(std::max(0.0, 4.0 - m * m));
  }
  return n * s * h / (2.0 * kPi);
}

/// Raw-domain 2D midpoint sum for V_GUE[f_u] on a cells x cells grid over
/// [-2, 2]^2. Each cell's edge weight 1/sqrt(4 - x^2) is replaced by its
/// exact mass asin(r/2) - asin(l/2); q^2 (4 - lambda mu) is taken at the
/// cell midpoint.
inline double riemann_limit_variance(const TestFunction& f, double u, int cells = 2000) {
  const TruncatedFunction fu(f, u);
  const double h = 4.0 / cells;
  std::vector<double> x(cells);
  std::vector<double> w(cells);
  for (int i = 0; i < cells; ++i) {
    const double l = -2.0 + i * h;
    const double r = l + h;
    x[i] = 0.5 * (l + r);
    w[i] = std::asin(std::min(1.0, r / 2.0)) - std::asin(std::max(-1.0, l / 2.0));
  }
  double s = 0.0;
  for (int i = 0; i < cells; ++i) {
    double row = 0.0;
    for (int j = 0; j < cells; ++j) {
      const double q = difference_quotient(fu, x[i], x[j]);
      row += w[j] * q * q * (4.0 - x[i] * x[j]);
    }
    s += w[i] * row;
  }
  return s / (4.0 * kPi * kPi);
}

/// psi_l(x) from the explicit probabilists' Hermite sum
/// He_l(x) = l! sum_m (-1)^m x^{l-2m} / (m! (l-2m)! 2^m).
inline double wavefunction(int l, double x) {
  double he = 0.0;
  for (int m = 0; 2 * m <= l; ++m) {
    const double term = std::pow(x, l - 2 * m) /
                        (std::tgamma(m + 1.0) * std::tgamma(l - 2 * m + 1.0) * std::pow(2.0, m));
    he += (m % 2 ? -1.0 : 1.0) * term;
  }
  he *= std::tgamma(l + 1.0);
  return std::pow(2.0 * kPi, -0.25) / std::sqrt(std::tgamma(l + 1.0)) * he * std::exp(-0.25 * x * x);
}

/// K_n(x, y) = sum_{l<n} psi_l(x) psi_l(y), explicit. Small n only.
inline double kernel(int n, double x, double y) {
  double s = 0.0;
  for (int l = 0; l < n; ++l) s += wavefunction(l, x) * wavefunction(l, y);
  return s;
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi on the real symmetric
/// embedding [[A, -B], [B, A]], whose spectrum is that of A + iB doubled.
inline std::vector<double> jacobi_eigenvalues(const HermitianMatrix& h) {
  const std::size_t n = h.size();
  const std::size_t m = 2 * n;
  std::vector<double> a(m * m);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      const std::complex<double> z = h(j, k);
      a[j * m + k] = z.real();
      a[(j + n) * m + (k + n)] = z.real();
      a[j * m + (k + n)] = -z.imag();
      a[(j + n) * m + k] = z.imag();
    }
  }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < m; ++p)
      for (std::size_t q = p + 1; q < m; ++q) off += a[p * m + q] * a[p * m + q];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a[p * m + q];
        if (apq == 0.0) continue;
        const double theta = (a[q * m + q] - a[p * m + p]) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < m; ++k) {
          const double akp = a[k * m + p];
          const double akq = a[k * m + q];
          a[k * m + p] = c * akp - s * akq;
          a[k * m + q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < m; ++k) {
          const double apk = a[p * m + k];
          const double aqk = a[q * m + k];
          a[p * m + k] = c * apk - s * aqk;
          a[q * m + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> all(m);
  for (std::size_t i = 0; i < m; ++i) all[i] = a[i * m + i];
  std::sort(all.begin(), all.end());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (all[2 * i] + all[2 * i + 1]);
  return out;
}

/// Standard normal CDF.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

}  // namespace ples::oracle
