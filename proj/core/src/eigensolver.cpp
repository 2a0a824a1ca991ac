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

#include "ples/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace ples {
namespace {

using cplx = std::complex<double>;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Eigenvalues of the symmetric tridiagonal (d, e) by implicit QL with a
// Wilkinson-type shift. e[i] couples d[i] and d[i+1]; e is resized to n.
void implicit_ql(std::vector<double>& d, std::vector<double> e) {
  const std::size_t n = d.size();
  if (n <= 1) return;
  e.resize(n, 0.0);
  e[n - 1] = 0.0;
  const std::size_t max_sweeps = 50 * n;
  std::size_t sweeps = 0;

  for (std::size_t l = 0; l < n; ++l) {
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= kEps * dd) break;
      }
      if (m != l) {
        if (++sweeps > max_sweeps)
          throw ConvergenceError("implicit QL did not converge within 50 n sweeps");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0;
        double c = 1.0;
        double p = 0.0;
        bool underflow = false;
        for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(m) - 1;
             i >= static_cast<std::ptrdiff_t>(l); --i) {
          const auto iu = static_cast<std::size_t>(i);
          const double f = s * e[iu];
          const double b = c * e[iu];
          r = std::hypot(f, g);
          e[iu + 1] = r;
          if (r == 0.0) {
            d[iu + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[iu + 1] - p;
          r = (d[iu] - g) * s + 2.0 * c * b;
          p = s * r;
          d[iu + 1] = g + p;
          g = c * r - b;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
}

double safe_pivot_min(const TridiagonalMatrix& m) {
  double emax = 1.0;
  for (double e : m.off_diagonal) emax = std::max(emax, e * e);
  return std::numeric_limits<double>::min() * emax;
}

}  // namespace

Spectrum::Spectrum(std::vector<double> eigenvalues, Provenance provenance)
    : values_(std::move(eigenvalues)), provenance_(std::move(provenance)) {
  if (!std::is_sorted(values_.begin(), values_.end()))
    throw std::invalid_argument("Spectrum: eigenvalues must be in ascending order");
}

double Spectrum::sum() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s;
}

double Spectrum::sum_of_squares() const {
  double s = 0.0;
  for (double v : values_) s += v * v;
  return s;
}

TridiagonalMatrix householder_tridiagonalize(const HermitianMatrix& input) {
  const std::size_t n = input.size();
  TridiagonalMatrix out;
  out.diagonal.resize(n);
  out.off_diagonal.resize(n > 0 ? n - 1 : 0);
  if (n == 0) return out;

  // Only the lower triangle (j <= i) of `a` is read and updated.
  std::vector<cplx> a = input.data();
  auto at = [&](std::size_t i, std::size_t j) -> cplx& { return a[i * n + j]; };

  std::vector<cplx> v(n);
  std::vector<cplx> p(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) norm2 += std::norm(at(i, k));
    const double norm = std::sqrt(norm2);
    const cplx x0 = at(k + 1, k);
    if (norm == 0.0) {
      out.off_diagonal[k] = 0.0;
      continue;
    }
    // alpha = -e^{i arg x0} |x|, v = x - alpha e_1, H = I - tau v v^*.
    const cplx phase = (std::abs(x0) > 0.0) ? x0 / std::abs(x0) : cplx(1.0, 0.0);
    const cplx alpha = -phase * norm;
    for (std::size_t i = k + 1; i < n; ++i) v[i] = at(i, k);
    v[k + 1] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += std::norm(v[i]);
    out.off_diagonal[k] = norm;
    if (vnorm2 == 0.0) continue;
    const double tau = 2.0 / vnorm2;

    // p = tau * A v over the trailing block, from the lower triangle.
    for (std::size_t i = k + 1; i < n; ++i) p[i] = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx* row = &a[i * n];
      cplx acc = row[i] * v[i];
      const cplx vi = v[i];
      for (std::size_t j = k + 1; j < i; ++j) {
        acc += row[j] * v[j];
        p[j] += std::conj(row[j]) * vi;
      }
      p[i] += acc;
    }
    cplx vp = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      p[i] *= tau;
      vp += std::conj(v[i]) * p[i];
    }
    // w = p - (tau/2)(v^* p) v; A <- A - v w^* - w v^*.
    const double kappa = 0.5 * tau * vp.real();
    for (std::size_t i = k + 1; i < n; ++i) p[i] -= kappa * v[i];
    for (std::size_t i = k + 1; i < n; ++i) {
      cplx* row = &a[i * n];
      const cplx vi = v[i];
      const cplx wi = p[i];
      for (std::size_t j = k + 1; j <= i; ++j)
        row[j] -= vi * std::conj(p[j]) + wi * std::conj(v[j]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = at(i, i).real();
  if (n >= 2) out.off_diagonal[n - 2] = std::abs(at(n - 1, n - 2));
  return out;
}

Spectrum eigenvalues_tridiagonal(const TridiagonalMatrix& m) {
  if (m.off_diagonal.size() + 1 != m.diagonal.size() && !m.diagonal.empty())
    throw std::invalid_argument("tridiagonal matrix: off-diagonal must have n - 1 entries");
  std::vector<double> d = m.diagonal;
  implicit_ql(d, m.off_diagonal);
  return Spectrum(std::move(d), {"", 0, "tridiagonal-ql"});
}

Spectrum eigenvalues_dense(const HermitianMatrix& m) {
  const TridiagonalMatrix t = householder_tridiagonalize(m);
  std::vector<double> d = t.diagonal;
  implicit_ql(d, t.off_diagonal);
  return Spectrum(std::move(d), {"", 0, "householder-ql"});
}

std::size_t sturm_count(const TridiagonalMatrix& m, double x) {
  const std::size_t n = m.size();
  if (n == 0) return 0;
  const double pivmin = safe_pivot_min(m);
  std::size_t count = 0;
  double q = m.diagonal[0] - x;
  for (std::size_t i = 0;; ++i) {
    // A zero pivot is nudged positive: x is treated as lying just below an
    // eigenvalue it coincides with, so the count stays "strictly below".
    if (q == 0.0)
      q = pivmin;
    else if (std::abs(q) < pivmin)
      q = std::copysign(pivmin, q);
    if (q < 0.0) ++count;
    if (i + 1 == n) break;
    const double e = m.off_diagonal[i];
    q = m.diagonal[i + 1] - x - e * e / q;
  }
  return count;
}

Interval gershgorin_bounds(const TridiagonalMatrix& m) {
  const std::size_t n = m.size();
  if (n == 0) return {0.0, 0.0};
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(m.off_diagonal[i - 1]);
    if (i + 1 < n) radius += std::abs(m.off_diagonal[i]);
    lo = std::min(lo, m.diagonal[i] - radius);
    hi = std::max(hi, m.diagonal[i] + radius);
  }
  const double scale = std::max(std::abs(lo), std::abs(hi));
  const double pad = 2.0 * kEps * scale * static_cast<double>(n) + 2.0 * safe_pivot_min(m) +
                     std::numeric_limits<double>::denorm_min();
  return {lo - pad, hi + pad};
}

Spectrum eigenvalues_bisection(const TridiagonalMatrix& m, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("eigenvalues_bisection: tol must be positive");
  const std::size_t n = m.size();
  const Interval bounds = gershgorin_bounds(m);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Smallest x with count(x) > k brackets the (k+1)-th eigenvalue from above.
    double lo = (k > 0) ? std::max(bounds.lower, out[k - 1] - tol) : bounds.lower;
    double hi = bounds.upper;
    for (int iter = 0; iter < 2000 && hi - lo > tol; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(m, mid) > k)
        hi = mid;
      else
        lo = mid;
    }
    out[k] = 0.5 * (lo + hi);
  }
  std::sort(out.begin(), out.end());
  return Spectrum(std::move(out), {"", 0, "sturm-bisection"});
}

namespace {

IdentityCheck make_check(const Spectrum& s, double trace, double frob2, double max_entry) {
  const double n = static_cast<double>(s.size());
  return {std::abs(s.sum() - trace), std::abs(s.sum_of_squares() - frob2),
          1e-10 * n * max_entry, 1e-10 * n * max_entry * max_entry};
}

}  // namespace

IdentityCheck check_identities(const Spectrum& s, const HermitianMatrix& m) {
  return make_check(s, m.trace(), m.frobenius_squared(), m.max_abs_entry());
}

IdentityCheck check_identities(const Spectrum& s, const TridiagonalMatrix& m) {
  return make_check(s, m.trace(), m.frobenius_squared(), m.max_abs_entry());
}

}  // namespace ples
