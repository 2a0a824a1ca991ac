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
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ples/rng.hpp"

namespace ples {

/// Discrete law for a real entry (or for one real part of a complex entry).
/// Must be centered, normalized and supported on at least three points.
class AtomDistribution {
 public:
  struct Atom {
    double value;
    double probability;
  };

  /// Throws std::invalid_argument when probabilities do not sum to one, the
  /// mean is nonzero, or fewer than three distinct points carry mass.
  explicit AtomDistribution(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  /// E X^k.
  double moment(int k) const;
  double max_abs() const noexcept;
  double draw(Rng& rng) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

struct GaussianLaw {
  double variance;
};

/// Law of a real entry (diagonal) or of each real part of an off-diagonal entry.
using EntryLaw = std::variant<GaussianLaw, AtomDistribution>;

double entry_moment(const EntryLaw& law, int k);

/// Dense Hermitian matrix (1/sqrt(n)) W_n. Writes go through `set_*`, which
/// keep entry (k, j) the conjugate of (j, k) and the diagonal real.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t n) : n_(n), data_(n * n) {}

  std::size_t size() const noexcept { return n_; }
  std::complex<double> operator()(std::size_t j, std::size_t k) const { return data_[j * n_ + k]; }

  void set_diagonal(std::size_t l, double value) { data_[l * n_ + l] = value; }
  /// Sets (j, k) for j < k, and (k, j) to the conjugate.
  void set_upper(std::size_t j, std::size_t k, std::complex<double> value) {
    data_[j * n_ + k] = value;
    data_[k * n_ + j] = std::conj(value);
  }

  double trace() const;
  double frobenius_squared() const;
  double max_abs_entry() const;
  /// Row-major n*n storage.
  const std::vector<std::complex<double>>& data() const noexcept { return data_; }

 private:
  std::size_t n_;
  std::vector<std::complex<double>> data_;
};

/// Real symmetric tridiagonal matrix; off_diagonal has size() - 1 entries.
struct TridiagonalMatrix {
  std::vector<double> diagonal;
  std::vector<double> off_diagonal;

  std::size_t size() const noexcept { return diagonal.size(); }
  double trace() const;
  double frobenius_squared() const;
  double max_abs_entry() const;
};

/// Diagonal N(0,1), off-diagonal Re/Im each N(0,1/2), all scaled by 1/sqrt(n).
HermitianMatrix sample_gue_dense(std::size_t n, Seed seed);

/// Spectrally equivalent GUE sampler: diagonal N(0,1), k-th off-diagonal
/// chi_{2(n-k)} / sqrt(2), all scaled by 1/sqrt(n).
TridiagonalMatrix sample_gue_tridiagonal(std::size_t n, Seed seed);

/// Three-point law {-a, 0, a}, P(+-a) = p, with E X^2 = 1/2 and E X^4 = 3/4
/// (the moments of N(0, 1/2)): a = sqrt(3/2), p = 1/6.
AtomDistribution matched_atom_offdiagonal();

/// Three-point law {-sqrt3, 0, sqrt3}, P(+-sqrt3) = 1/6: mean 0, variance 1.
AtomDistribution matched_atom_diagonal();

/// Three-point off-diagonal law with E X^2 = 1/2 and E X^4 = scale * 3/4.
AtomDistribution offdiagonal_with_fourth_moment_scale(double scale);

/// Independent entries from the given laws, scaled by 1/sqrt(n). Requires
/// centered laws with off-diagonal variance 1/2 per real part and a positive
/// diagonal variance; throws std::invalid_argument otherwise.
HermitianMatrix sample_wigner(std::size_t n, const EntryLaw& diagonal,
                              const EntryLaw& off_diagonal, Seed seed);

/// Parsed ensemble spec: `gue`, `gue-tridiag`, `wigner-matched`,
/// `wigner-mismatched`, or `wigner-custom` with explicit atom tables.
struct EnsembleSpec {
  enum class Kind { kGueDense, kGueTridiagonal, kWigner };

  Kind kind = Kind::kGueTridiagonal;
  std::string tag = "gue-tridiag";
  EntryLaw diagonal = GaussianLaw{1.0};
  EntryLaw off_diagonal = GaussianLaw{0.5};

  static EnsembleSpec gue_dense();
  static EnsembleSpec gue_tridiagonal();
  static EnsembleSpec wigner_matched();
  /// Off-diagonal fourth moment per real part scaled by 1.5 relative to GUE.
  static EnsembleSpec wigner_mismatched();
  static EnsembleSpec wigner_custom(AtomDistribution diagonal, AtomDistribution off_diagonal);
  /// Named ensembles only; custom tables come from the plan file.
  static EnsembleSpec parse(std::string_view name);
};

}  // namespace ples
