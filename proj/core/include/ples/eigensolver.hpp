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
#include <stdexcept>
#include <string>
#include <vector>

#include "ples/ensemble.hpp"
#include "ples/rng.hpp"

namespace ples {

/// Where a spectrum came from.
struct Provenance {
  std::string ensemble;
  Seed seed = 0;
  std::string solver;
};

/// Ascending eigenvalues lambda_1 <= ... <= lambda_n.
class Spectrum {
 public:
  /// Throws std::invalid_argument unless `eigenvalues` is ascending.
  Spectrum(std::vector<double> eigenvalues, Provenance provenance = {});

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& eigenvalues() const noexcept { return values_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  double sum() const;
  double sum_of_squares() const;

 private:
  std::vector<double> values_;
  Provenance provenance_;
};

/// Raised when implicit QL fails to converge within 50 n sweeps.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unitary reduction of a Hermitian matrix to real symmetric tridiagonal
/// form with nonnegative off-diagonal (complex Householder reflections
/// followed by a diagonal phase change). Transforms are not accumulated.
TridiagonalMatrix householder_tridiagonalize(const HermitianMatrix& m);

Spectrum eigenvalues_dense(const HermitianMatrix& m);
Spectrum eigenvalues_tridiagonal(const TridiagonalMatrix& m);

/// Number of eigenvalues strictly below x (Sturm sequence / LDL^T inertia).
std::size_t sturm_count(const TridiagonalMatrix& m, double x);

struct Interval {
  double lower;
  double upper;
};

/// Gershgorin enclosure of the spectrum, widened by a few ulps so that
/// sturm_count(m, upper) == n.
Interval gershgorin_bounds(const TridiagonalMatrix& m);

/// Each eigenvalue bracketed to width <= tol by Sturm-count bisection.
Spectrum eigenvalues_bisection(const TridiagonalMatrix& m, double tol);

/// Residuals of the spectrum invariants against the matrix they came from.
struct IdentityCheck {
  double trace_residual;
  double frobenius_residual;
  double trace_tolerance;
  double frobenius_tolerance;

  bool ok() const noexcept {
    return trace_residual <= trace_tolerance && frobenius_residual <= frobenius_tolerance;
  }
};

IdentityCheck check_identities(const Spectrum& s, const HermitianMatrix& m);
IdentityCheck check_identities(const Spectrum& s, const TridiagonalMatrix& m);

}  // namespace ples
