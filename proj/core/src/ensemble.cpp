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

#include "ples/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ples {
namespace {

constexpr double kMomentTolerance = 1e-12;

double draw(const EntryLaw& law, Rng& rng) {
  if (const auto* g = std::get_if<GaussianLaw>(&law)) return std::sqrt(g->variance) * rng.normal();
  return std::get<AtomDistribution>(law).draw(rng);
}

}  // namespace

AtomDistribution::AtomDistribution(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  double total = 0.0;
  std::size_t support = 0;
  for (const auto& atom : atoms_) {
    if (!(atom.probability >= 0.0) || !std::isfinite(atom.value))
      throw std::invalid_argument("atom distribution: invalid atom");
    total += atom.probability;
    if (atom.probability > 0.0) ++support;
  }
  if (std::abs(total - 1.0) > kMomentTolerance)
    throw std::invalid_argument("atom distribution: probabilities must sum to 1");
  if (support < 3)
    throw std::invalid_argument("atom distribution: at least three support points required");
  if (std::abs(moment(1)) > kMomentTolerance)
    throw std::invalid_argument("atom distribution: mean must be 0");
  double acc = 0.0;
  for (const auto& atom : atoms_) {
    acc += atom.probability;
    cumulative_.push_back(acc);
  }
  cumulative_.back() = 1.0;
}

double AtomDistribution::moment(int k) const {
  double m = 0.0;
  for (const auto& atom : atoms_) m += atom.probability * std::pow(atom.value, k);
  return m;
}

double AtomDistribution::max_abs() const noexcept {
  double m = 0.0;
  for (const auto& atom : atoms_) m = std::max(m, std::abs(atom.value));
  return m;
}

double AtomDistribution::draw(Rng& rng) const {
  const double r = rng.uniform();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
  const auto idx = static_cast<std::size_t>(
      std::min<std::ptrdiff_t>(it - cumulative_.begin(), cumulative_.size() - 1));
  return atoms_[idx].value;
}

double entry_moment(const EntryLaw& law, int k) {
  if (const auto* g = std::get_if<GaussianLaw>(&law)) {
    if (k % 2 == 1) return 0.0;
    double m = 1.0;
    for (int j = k - 1; j > 0; j -= 2) m *= j;
    return m * std::pow(g->variance, k / 2);
  }
  return std::get<AtomDistribution>(law).moment(k);
}

double HermitianMatrix::trace() const {
  double t = 0.0;
  for (std::size_t l = 0; l < n_; ++l) t += data_[l * n_ + l].real();
  return t;
}

double HermitianMatrix::frobenius_squared() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return s;
}

double HermitianMatrix::max_abs_entry() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double TridiagonalMatrix::trace() const {
  double t = 0.0;
  for (double d : diagonal) t += d;
  return t;
}

double TridiagonalMatrix::frobenius_squared() const {
  double s = 0.0;
  for (double d : diagonal) s += d * d;
  for (double e : off_diagonal) s += 2.0 * e * e;
  return s;
}

double TridiagonalMatrix::max_abs_entry() const {
  double m = 0.0;
  for (double d : diagonal) m = std::max(m, std::abs(d));
  for (double e : off_diagonal) m = std::max(m, std::abs(e));
  return m;
}

HermitianMatrix sample_gue_dense(std::size_t n, Seed seed) {
  return sample_wigner(n, GaussianLaw{1.0}, GaussianLaw{0.5}, seed);
}

TridiagonalMatrix sample_gue_tridiagonal(std::size_t n, Seed seed) {
  if (n == 0) throw std::invalid_argument("sample_gue_tridiagonal: n must be >= 1");
  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  TridiagonalMatrix m;
  m.diagonal.resize(n);
  m.off_diagonal.resize(n - 1);
  for (std::size_t l = 0; l < n; ++l) m.diagonal[l] = scale * rng.normal();
  // chi_{2j} / sqrt(2) = sqrt(Gamma(j, 1)) for j = n - k.
  for (std::size_t k = 1; k < n; ++k)
    m.off_diagonal[k - 1] = scale * std::sqrt(rng.gamma(static_cast<double>(n - k)));
  return m;
}

AtomDistribution matched_atom_offdiagonal() {
  // 2 p a^2 = 1/2 and 2 p a^4 = 3/4  =>  a^2 = 3/2, p = 1/6.
  const double a = std::sqrt(1.5);
  const double p = 1.0 / 6.0;
  return AtomDistribution({{-a, p}, {0.0, 1.0 - 2.0 * p}, {a, p}});
}

AtomDistribution matched_atom_diagonal() {
  const double a = std::sqrt(3.0);
  const double p = 1.0 / 6.0;
  return AtomDistribution({{-a, p}, {0.0, 1.0 - 2.0 * p}, {a, p}});
}

AtomDistribution offdiagonal_with_fourth_moment_scale(double scale) {
  // 2 p a^2 = 1/2, 2 p a^4 = 3 scale / 4  =>  a^2 = 3 scale / 2.
  if (!(scale >= 2.0 / 3.0))
    throw std::invalid_argument("fourth moment below (E X^2)^2 is not attainable with P(0) >= 0");
  const double a2 = 1.5 * scale;
  const double p = 0.25 / a2;
  const double a = std::sqrt(a2);
  return AtomDistribution({{-a, p}, {0.0, 1.0 - 2.0 * p}, {a, p}});
}

HermitianMatrix sample_wigner(std::size_t n, const EntryLaw& diagonal,
                              const EntryLaw& off_diagonal, Seed seed) {
  if (n == 0) throw std::invalid_argument("sample_wigner: n must be >= 1");
  if (std::abs(entry_moment(diagonal, 1)) > kMomentTolerance ||
      std::abs(entry_moment(off_diagonal, 1)) > kMomentTolerance)
    throw std::invalid_argument("sample_wigner: entry laws must be centered");
  if (std::abs(entry_moment(off_diagonal, 2) - 0.5) > kMomentTolerance)
    throw std::invalid_argument("sample_wigner: off-diagonal variance per real part must be 1/2");
  const double diag_var = entry_moment(diagonal, 2);
  if (!(diag_var > 0.0) || !std::isfinite(diag_var))
    throw std::invalid_argument("sample_wigner: diagonal variance must be positive");

  Rng rng(seed);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  HermitianMatrix m(n);
  for (std::size_t j = 0; j < n; ++j) {
    m.set_diagonal(j, scale * draw(diagonal, rng));
    for (std::size_t k = j + 1; k < n; ++k) {
      const double re = draw(off_diagonal, rng);
      const double im = draw(off_diagonal, rng);
      m.set_upper(j, k, {scale * re, scale * im});
    }
  }
  return m;
}

EnsembleSpec EnsembleSpec::gue_dense() {
  return {Kind::kGueDense, "gue", GaussianLaw{1.0}, GaussianLaw{0.5}};
}

EnsembleSpec EnsembleSpec::gue_tridiagonal() {
  return {Kind::kGueTridiagonal, "gue-tridiag", GaussianLaw{1.0}, GaussianLaw{0.5}};
}

EnsembleSpec EnsembleSpec::wigner_matched() {
  return {Kind::kWigner, "wigner-matched", matched_atom_diagonal(), matched_atom_offdiagonal()};
}

EnsembleSpec EnsembleSpec::wigner_mismatched() {
  return {Kind::kWigner, "wigner-mismatched", matched_atom_diagonal(),
          offdiagonal_with_fourth_moment_scale(1.5)};
}

EnsembleSpec EnsembleSpec::wigner_custom(AtomDistribution diagonal, AtomDistribution off_diagonal) {
  EnsembleSpec spec{Kind::kWigner, "wigner-custom", std::move(diagonal), std::move(off_diagonal)};
  if (std::abs(entry_moment(spec.off_diagonal, 2) - 0.5) > kMomentTolerance)
    throw std::invalid_argument("wigner-custom: off-diagonal variance per real part must be 1/2");
  return spec;
}

EnsembleSpec EnsembleSpec::parse(std::string_view name) {
  if (name == "gue") return gue_dense();
  if (name == "gue-tridiag") return gue_tridiagonal();
  if (name == "wigner-matched") return wigner_matched();
  if (name == "wigner-mismatched") return wigner_mismatched();
  if (name == "wigner-custom")
    throw std::invalid_argument("wigner-custom requires atom tables (plan file [ensemble] section)");
  throw std::invalid_argument("unknown ensemble '" + std::string(name) +
                              "' (expected gue, gue-tridiag, wigner-matched, wigner-mismatched, "
                              "wigner-custom)");
}

}  // namespace ples
