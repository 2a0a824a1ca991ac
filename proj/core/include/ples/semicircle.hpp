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

#include <complex>
#include <cstddef>
#include <functional>

namespace ples {
class TestFunction;
}

/// The Wigner semicircle law on [-2, 2]: density, CDF, quantiles and the
/// deterministic centering constants n * int_{-2}^u f dF_sc.
namespace ples::semicircle {

inline constexpr double kQuantileTolerance = 1e-13;

/// rho_sc(x) = sqrt(4 - x^2) / (2 pi) on |x| <= 2, zero elsewhere.
double density(double x);

/// F_sc(x), clamped to [0, 1].
double cdf(double x);

/// gamma_t with |F_sc(gamma_t) - t| < 1e-13. Throws std::invalid_argument for
/// t outside [0, 1].
double quantile(double t);

/// int_{-2}^{u} g(x) rho_sc(x) dx by graded Gauss-Legendre panels (the
/// square-root edges are resolved geometrically). `u` is clamped to [-2, 2].
double integrate_against_density(const std::function<double(double)>& g, double u);

/// m[f; u] = n * int_{-2}^{u} f(x) rho_sc(x) dx.
double centering(const TestFunction& f, double u, std::size_t n);

/// s_sc(z) = (-z + sqrt(z^2 - 4)) / 2 on the branch with Im s > 0 for Im z > 0.
std::complex<double> stieltjes(std::complex<double> z);

}  // namespace ples::semicircle
