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

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ples {

/// Half-width margin of the analyticity window (-2 - delta, 2 + delta) and of
/// the bulk [-2 + delta, 2 - delta]. Overridable per experiment.
inline constexpr double kDefaultDelta = 0.5;

/// A test function from a closed registry. Every registered function exposes
/// exact derivatives through order 4 (polynomials: any order).
///
/// Spec strings accepted by `parse`:
///   x, x2, x3            monomials
///   poly:[c0,c1,...]     c0 + c1 x + ... (degree <= 8)
///   exp:[a,b]            a * exp(b x)
///   gauss                exp(-x^2), a bounded smooth bump
class TestFunction {
 public:
  enum class Kind { kPolynomial, kMonomial, kScaledExponential, kBuiltin };

  static TestFunction polynomial(std::vector<double> coefficients);
  static TestFunction monomial(int power);
  static TestFunction scaled_exponential(double scale, double rate);
  static TestFunction gaussian_bump();
  static TestFunction parse(std::string_view spec);

  double operator()(double x) const { return derivative(0, x); }
  double derivative(int order, double x) const;

  Kind kind() const noexcept { return kind_; }
  int derivative_order_available() const noexcept;
  /// Canonical spec string; `parse(name())` reproduces the function.
  std::string name() const;

 private:
  TestFunction(Kind kind, std::vector<double> params)
      : kind_(kind), params_(std::move(params)) {}

  Kind kind_;
  // Polynomial: coefficients (low order first). Monomial: {power}.
  // Scaled exponential: {scale, rate}. Builtin: empty.
  std::vector<double> params_;
};

/// f_u(x) = (f(x) - f(u)) * 1{x <= u}. Continuous at u, identically zero
/// to the right of it.
class TruncatedFunction {
 public:
  TruncatedFunction(TestFunction base, double u);

  double operator()(double x) const { return x <= u_ ? base_(x) - base_at_u_ : 0.0; }

  const TestFunction& base() const noexcept { return base_; }
  double threshold() const noexcept { return u_; }

 private:
  TestFunction base_;
  double u_;
  double base_at_u_;
};

inline constexpr double kQuotientDiagonalThreshold = 1e-8;
inline constexpr double kQuotientStep = 1e-6;

/// (f_u(lambda) - f_u(mu)) / (lambda - mu). Below |lambda - mu| < 1e-8 the
/// quotient is replaced by a finite difference of f_u at the midpoint: the
/// symmetric rule away from u, the one-sided rule on the midpoint's side when
/// the stencil straddles u.
double difference_quotient(const TruncatedFunction& f, double lambda, double mu);

/// Lipschitz function that is constant left of `a` and right of `b` and
/// linear in between.
struct PlateauFunction {
  double a;
  double b;
  double left_value;
  double right_value;

  double operator()(double x) const;
};

/// A scalar observable for the determinantal integrals: a callable plus the
/// points where it is not smooth (quadrature panels are split there).
struct Observable {
  std::function<double(double)> fn;
  std::vector<double> kinks;
  std::string label;

  static Observable of(const TestFunction& f);
  static Observable of(const TruncatedFunction& f);
  static Observable of(const PlateauFunction& f);
};

/// Parses a threshold spec: a number ("0.5") or "quantile:t" for the
/// semicircle quantile gamma_t.
double parse_threshold(std::string_view spec);

}  // namespace ples
