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

#include "ples/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ples/limits.hpp"
#include "ples/semicircle.hpp"

namespace ples {
namespace {

double partial_sum(const Spectrum& s, const TestFunction& f, std::size_t k) {
  double total = 0.0;
  for (std::size_t l = 0; l < k; ++l) total += f(s[l]);
  return total;
}

double classical_location(std::size_t k, std::size_t n) {
  return semicircle::quantile(static_cast<double>(k) / static_cast<double>(n));
}

}  // namespace

std::string_view to_string(StatisticKind kind) {
  switch (kind) {
    case StatisticKind::kTypeA: return "type_a";
    case StatisticKind::kTypeB: return "type_b";
    case StatisticKind::kProcessPoint: return "process_point";
    case StatisticKind::kCounting: return "counting";
  }
  return "unknown";
}

std::size_t counting(const Spectrum& s, double u) {
  const auto& v = s.eigenvalues();
  return static_cast<std::size_t>(std::upper_bound(v.begin(), v.end(), u) - v.begin());
}

PlesResult type_a(const Spectrum& s, const TestFunction& f, double u) {
  const std::size_t n = s.size();
  PlesResult r;
  r.kind = StatisticKind::kTypeA;
  r.raw = partial_sum(s, f, counting(s, u));
  r.centering = semicircle::centering(f, u, n);
  r.centered = r.raw - r.centering;
  const double fu = f(u);
  if (fu != 0.0 && n >= 2) r.normalized = r.centered / limits::counting_variance_normalizer(fu, n);
  return r;
}

PlesResult type_b(const Spectrum& s, const TestFunction& f, std::size_t k) {
  const std::size_t n = s.size();
  if (k < 1 || k > n) throw std::invalid_argument("type_b: k must lie in [1, n]");
  PlesResult r;
  r.kind = StatisticKind::kTypeB;
  r.raw = partial_sum(s, f, k);
  r.centering = semicircle::centering(f, classical_location(k, n), n);
  r.centered = r.raw - r.centering;
  return r;
}

double decomposition_check(const Spectrum& s, const TestFunction& f, double u) {
  const TruncatedFunction fu(f, u);
  double truncated = 0.0;
  for (double x : s.eigenvalues()) truncated += fu(x);
  const std::size_t count = counting(s, u);
  const double direct = partial_sum(s, f, count);
  return std::abs(direct - (truncated + f(u) * static_cast<double>(count)));
}

PlesResult process_point(const Spectrum& s, const TestFunction& f, double t) {
  const std::size_t n = s.size();
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("process_point: t must lie in [0, 1)");
  const double nt = static_cast<double>(n) * t;
  const auto k = std::min(static_cast<std::size_t>(std::floor(nt)), n - 1);
  const double frac = nt - static_cast<double>(k);
  PlesResult r;
  r.kind = StatisticKind::kProcessPoint;
  r.raw = partial_sum(s, f, k) + frac * f(s[k]);
  const double base = k == 0 ? 0.0 : semicircle::centering(f, classical_location(k, n), n);
  r.centering = base + frac * f(classical_location(k + 1, n));
  r.centered = r.raw - r.centering;
  return r;
}

PlesResult counting_statistic(const Spectrum& s, double u) {
  const std::size_t n = s.size();
  PlesResult r;
  r.kind = StatisticKind::kCounting;
  r.raw = static_cast<double>(counting(s, u));
  r.centering = static_cast<double>(n) * semicircle::cdf(u);
  r.centered = r.raw - r.centering;
  if (n >= 2) r.normalized = r.centered / limits::counting_variance_normalizer(1.0, n);
  return r;
}

std::complex<double> stieltjes(const Spectrum& s, double z_re, double z_im) {
  if (z_im == 0.0) throw std::invalid_argument("stieltjes: Im z must be nonzero");
  if (s.size() == 0) throw std::invalid_argument("stieltjes: empty spectrum");
  const std::complex<double> z(z_re, z_im);
  std::complex<double> total = 0.0;
  for (double x : s.eigenvalues()) total += 1.0 / (x - z);
  return total / static_cast<double>(s.size());
}

double rigidity_diagnostic(const Spectrum& s) {
  const std::size_t n = s.size();
  if (n < 16) throw std::invalid_argument("rigidity_diagnostic: n must be >= 16");
  const std::size_t lo = std::max<std::size_t>(1, (n + 9) / 10);
  const std::size_t hi = 9 * n / 10;
  const double log_n = std::log(static_cast<double>(n));
  double worst = 0.0;
  for (std::size_t j = lo; j <= hi; ++j)
    worst = std::max(worst, std::abs(s[j - 1] - classical_location(j, n)));
  return worst * static_cast<double>(n) / (log_n * log_n);
}

double middle_eigenvalue(const Spectrum& s) {
  if (s.size() == 0) throw std::invalid_argument("middle_eigenvalue: empty spectrum");
  return s[std::max<std::size_t>(1, s.size() / 2) - 1];
}

}  // namespace ples
