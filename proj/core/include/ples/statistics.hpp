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
#include <optional>
#include <string_view>

#include "ples/eigensolver.hpp"
#include "ples/testfn.hpp"

/// Partial linear eigenvalue statistics of a spectrum. Thresholds are
/// inclusive: an eigenvalue equal to u is counted below u.
namespace ples {

enum class StatisticKind { kTypeA, kTypeB, kProcessPoint, kCounting };

std::string_view to_string(StatisticKind kind);

struct PlesResult {
  double raw = 0.0;
  double centering = 0.0;
  double centered = 0.0;
  /// Present only when a positive normalizer applies.
  std::optional<double> normalized;
  StatisticKind kind = StatisticKind::kTypeA;
};

/// A_n[f; u] = sum over lambda_l <= u of f(lambda_l), centered by
/// m[f; u] = n int_{-2}^u f dF_sc. Normalized by
/// sqrt(f(u)^2 log n / 2 pi^2) when f(u) != 0.
PlesResult type_a(const Spectrum& s, const TestFunction& f, double u);

/// B_n[f; k] = sum of f over the k smallest eigenvalues, centered by
/// m[f; gamma_{k/n}]. Requires 1 <= k <= n.
PlesResult type_b(const Spectrum& s, const TestFunction& f, std::size_t k);

/// |A_n[f; u] - (L_n[f_u] + f(u) N_n(-inf, u])|. Zero up to roundoff.
double decomposition_check(const Spectrum& s, const TestFunction& f, double u);

/// S_n[f; t] = B_n[f; floor(nt)] + (nt - floor(nt)) f(lambda_{floor(nt)+1}),
/// centered by m[f; gamma_{floor(nt)/n}] + (nt - floor(nt)) f(gamma_{(floor(nt)+1)/n}).
/// Requires t in [0, 1).
PlesResult process_point(const Spectrum& s, const TestFunction& f, double t);

/// N_n(-inf, u] by binary search.
std::size_t counting(const Spectrum& s, double u);

/// Counting statistic as a PlesResult, centered by n F_sc(u) and
/// normalized by sqrt(log n / 2 pi^2).
PlesResult counting_statistic(const Spectrum& s, double u);

/// s_n(z) = (1/n) sum 1 / (lambda_l - z). Rejects Im z == 0.
std::complex<double> stieltjes(const Spectrum& s, double z_re, double z_im);

/// max over bulk indices j in [n/10, 9n/10] of
/// |lambda_j - gamma_{j/n}| n / log^2 n. Requires n >= 16.
double rigidity_diagnostic(const Spectrum& s);

/// lambda_{n/2} (1-based, n/2 rounded down, at least 1).
double middle_eigenvalue(const Spectrum& s);

}  // namespace ples
