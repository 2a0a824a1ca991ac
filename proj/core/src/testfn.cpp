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

#include "ples/testfn.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "ples/semicircle.hpp"

namespace ples {
namespace {

constexpr std::size_t kMaxPolynomialCoefficients = 9;

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

double parse_number(std::string_view text, std::string_view context) {
  const std::string s = trim(text);
  if (s.empty()) throw std::invalid_argument(std::string(context) + ": empty number");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    throw std::invalid_argument(std::string(context) + ": bad number '" + s + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text, std::string_view context) {
  const std::string s = trim(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw std::invalid_argument(std::string(context) + ": expected [..] list, got '" + s + "'");
  std::vector<double> out;
  std::string_view body(s.data() + 1, s.size() - 2);
  if (trim(body).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = body.find(',', start);
    out.push_back(parse_number(body.substr(start, comma - start), context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

// k-th derivative of sum_j c_j x^j.
double polynomial_derivative(const std::vector<double>& c, int order, double x) {
  double acc = 0.0;
  for (std::size_t j = c.size(); j-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= static_cast<double>(j - i);
    acc = acc * x + falling * c[j];
  }
  return acc;
}

// Physicists' Hermite polynomial, used for d^k/dx^k exp(-x^2).
double hermite_phys(int k, double x) {
  double h0 = 1.0;
  if (k == 0) return h0;
  double h1 = 2.0 * x;
  for (int j = 1; j < k; ++j) {
    const double h2 = 2.0 * x * h1 - 2.0 * j * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

TestFunction TestFunction::polynomial(std::vector<double> coefficients) {
  if (coefficients.empty())
    throw std::invalid_argument("poly: at least one coefficient required");
  if (coefficients.size() > kMaxPolynomialCoefficients)
    throw std::invalid_argument("poly: degree must be <= 8");
  for (double c : coefficients)
    if (!std::isfinite(c)) throw std::invalid_argument("poly: non-finite coefficient");
  return TestFunction(Kind::kPolynomial, std::move(coefficients));
}

TestFunction TestFunction::monomial(int power) {
  if (power < 1 || power > 3)
    throw std::invalid_argument("monomial: power must be 1, 2 or 3");
  return TestFunction(Kind::kMonomial, {static_cast<double>(power)});
}

TestFunction TestFunction::scaled_exponential(double scale, double rate) {
  if (!std::isfinite(scale) || !std::isfinite(rate))
    throw std::invalid_argument("exp: non-finite parameter");
  return TestFunction(Kind::kScaledExponential, {scale, rate});
}

TestFunction TestFunction::gaussian_bump() { return TestFunction(Kind::kBuiltin, {}); }

TestFunction TestFunction::parse(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  if (spec == "x") return monomial(1);
  if (spec == "x2") return monomial(2);
  if (spec == "x3") return monomial(3);
  if (spec == "gauss") return gaussian_bump();
  if (spec.rfind("poly:", 0) == 0)
    return polynomial(parse_list(std::string_view(spec).substr(5), "poly"));
  if (spec.rfind("exp:", 0) == 0) {
    const auto p = parse_list(std::string_view(spec).substr(4), "exp");
    if (p.size() != 2) throw std::invalid_argument("exp: expected [scale,rate]");
    return scaled_exponential(p[0], p[1]);
  }
  throw std::invalid_argument("unknown test function '" + spec +
                              "' (expected x, x2, x3, gauss, poly:[..], exp:[a,b])");
}

double TestFunction::derivative(int order, double x) const {
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  switch (kind_) {
    case Kind::kPolynomial:
      return polynomial_derivative(params_, order, x);
    case Kind::kMonomial: {
      const int p = static_cast<int>(params_[0]);
      if (order > p) return 0.0;
      double falling = 1.0;
      for (int i = 0; i < order; ++i) falling *= p - i;
      double power = 1.0;
      for (int i = 0; i < p - order; ++i) power *= x;
      return falling * power;
    }
    case Kind::kScaledExponential:
      if (order > 4) break;
      return params_[0] * std::pow(params_[1], order) * std::exp(params_[1] * x);
    case Kind::kBuiltin:
      if (order > 4) break;
      return ((order % 2 == 0) ? 1.0 : -1.0) * hermite_phys(order, x) * std::exp(-x * x);
  }
  throw std::invalid_argument("derivative: order exceeds what the function provides");
}

int TestFunction::derivative_order_available() const noexcept {
  switch (kind_) {
    case Kind::kPolynomial:
    case Kind::kMonomial:
      return 1 << 16;
    default:
      return 4;
  }
}

std::string TestFunction::name() const {
  switch (kind_) {
    case Kind::kMonomial: {
      const int p = static_cast<int>(params_[0]);
      return p == 1 ? "x" : "x" + std::to_string(p);
    }
    case Kind::kPolynomial: {
      std::string s = "poly:[";
      for (std::size_t i = 0; i < params_.size(); ++i) {
        if (i) s += ',';
        s += format_double(params_[i]);
      }
      return s + "]";
    }
    case Kind::kScaledExponential:
      return "exp:[" + format_double(params_[0]) + "," + format_double(params_[1]) + "]";
    case Kind::kBuiltin:
      return "gauss";
  }
  return {};
}

TruncatedFunction::TruncatedFunction(TestFunction base, double u)
    : base_(std::move(base)), u_(u), base_at_u_(base_(u)) {
  if (!std::isfinite(u)) throw std::invalid_argument("truncation threshold must be finite");
}

double difference_quotient(const TruncatedFunction& f, double lambda, double mu) {
  const double d = lambda - mu;
  if (std::abs(d) >= kQuotientDiagonalThreshold) return (f(lambda) - f(mu)) / d;
  const double m = 0.5 * (lambda + mu);
  const double h = kQuotientStep;
  const double u = f.threshold();
  if (m + h <= u || m - h > u) return (f(m + h) - f(m - h)) / (2.0 * h);
  if (m <= u) return (f(m) - f(m - h)) / h;
  return (f(m + h) - f(m)) / h;
}

double PlateauFunction::operator()(double x) const {
  if (x <= a) return left_value;
  if (x >= b) return right_value;
  return left_value + (right_value - left_value) * (x - a) / (b - a);
}

Observable Observable::of(const TestFunction& f) {
  return {[f](double x) { return f(x); }, {}, f.name()};
}

Observable Observable::of(const TruncatedFunction& f) {
  return {[f](double x) { return f(x); },
          {f.threshold()},
          f.base().name() + "@u=" + format_double(f.threshold())};
}

Observable Observable::of(const PlateauFunction& f) {
  return {[f](double x) { return f(x); },
          {f.a, f.b},
          "plateau[" + format_double(f.a) + "," + format_double(f.b) + "]"};
}

double parse_threshold(std::string_view spec_in) {
  const std::string spec = trim(spec_in);
  if (spec.rfind("quantile:", 0) == 0) {
    const double t = parse_number(std::string_view(spec).substr(9), "quantile");
    return semicircle::quantile(t);
  }
  return parse_number(spec, "threshold");
}

}  // namespace ples
