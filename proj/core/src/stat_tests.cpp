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

#include "ples/stat_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ples::stats {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

void require_samples(std::size_t count, const char* what) {
  if (count < kMinSamples)
    throw std::invalid_argument(std::string(what) + ": needs at least 100 values");
}

// Effective-size correction (Stephens) for the asymptotic distribution.
double corrected_lambda(double d, double ne) {
  const double root = std::sqrt(ne);
  return (root + 0.12 + 0.11 / root) * d;
}

}  // namespace

double kolmogorov_q(double lambda) {
  if (lambda < 0.2) return 1.0;
  double sum = 0.0;
  double sign = 1.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
    sum += term;
    if (std::abs(term) < 1e-16 * std::abs(sum)) break;
    sign = -sign;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_normal(std::span<const double> values) {
  require_samples(values.size(), "ks_normal");
  const Moments m = moments(values);
  if (!(m.variance > 0.0)) throw std::invalid_argument("ks_normal: zero-variance input");
  const double sd = std::sqrt(m.variance);
  std::vector<double> z(values.begin(), values.end());
  for (double& v : z) v = (v - m.mean) / sd;
  std::sort(z.begin(), z.end());
  const double count = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double f = normal_cdf(z[i]);
    d = std::max({d, static_cast<double>(i + 1) / count - f, f - static_cast<double>(i) / count});
  }
  return {d, kolmogorov_q(corrected_lambda(d, count))};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  require_samples(a.size(), "ks_two_sample");
  require_samples(b.size(), "ks_two_sample");
  std::vector<double> x(a.begin(), a.end());
  std::vector<double> y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double nx = static_cast<double>(x.size());
  const double ny = static_cast<double>(y.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < x.size() && j < y.size()) {
    const double v = std::min(x[i], y[j]);
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / nx - static_cast<double>(j) / ny));
  }
  return {d, kolmogorov_q(corrected_lambda(d, nx * ny / (nx + ny)))};
}

Moments moments(std::span<const double> values) {
  Moments m;
  m.count = values.size();
  if (m.count == 0) return m;
  const double count = static_cast<double>(m.count);
  double sum = 0.0;
  for (double v : values) sum += v;
  m.mean = sum / count;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : values) {
    const double d = v - m.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= count;
  m3 /= count;
  m4 /= count;
  if (m.count < 2) return m;
  m.variance = m2 * count / (count - 1.0);
  m.mean_se = std::sqrt(m.variance / count);
  m.variance_se = std::sqrt(std::max(0.0, (m4 - m2 * m2) / count));
  if (m2 > 0.0) {
    m.skewness = m3 / std::pow(m2, 1.5);
    m.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  return m;
}

CovarianceEstimate covariance(std::span<const double> table, std::size_t dims) {
  if (dims == 0 || table.size() % dims != 0)
    throw std::invalid_argument("covariance: table size is not a multiple of dims");
  const std::size_t rows = table.size() / dims;
  if (rows < 2) throw std::invalid_argument("covariance: needs at least 2 samples");
  const double count = static_cast<double>(rows);
  std::vector<double> mean(dims, 0.0);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t a = 0; a < dims; ++a) mean[a] += table[r * dims + a];
  for (double& v : mean) v /= count;
  CovarianceEstimate out;
  out.dims = dims;
  out.value.assign(dims * dims, 0.0);
  out.standard_error.assign(dims * dims, 0.0);
  std::vector<double> second(dims * dims, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t a = 0; a < dims; ++a) {
      const double da = table[r * dims + a] - mean[a];
      for (std::size_t b = 0; b < dims; ++b) {
        const double p = da * (table[r * dims + b] - mean[b]);
        out.value[a * dims + b] += p;
        second[a * dims + b] += p * p;
      }
    }
  }
  for (std::size_t e = 0; e < dims * dims; ++e) {
    const double c = out.value[e] / count;
    const double spread = second[e] / count - c * c;
    out.value[e] /= count - 1.0;
    out.standard_error[e] = std::sqrt(std::max(0.0, spread) / count);
  }
  return out;
}

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_line: needs two equally sized lists of >= 2 points");
  const double count = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= count;
  my /= count;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: x values are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  return fit;
}

}  // namespace ples::stats
