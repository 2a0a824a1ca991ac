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

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ples/determinantal.hpp"
#include "ples/eigensolver.hpp"
#include "ples/ensemble.hpp"
#include "ples/harness.hpp"
#include "ples/limits.hpp"
#include "ples/plan.hpp"
#include "ples/semicircle.hpp"
#include "ples/statistics.hpp"

namespace ples::cli {
namespace {

using Json = nlohmann::ordered_json;

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

void require_bulk(double u, double delta, const std::string& flag) {
  std::ostringstream msg;
  msg << flag << ": threshold " << u << " outside the bulk [" << -2.0 + delta << ", " << 2.0 - delta
      << "]";
  require(u >= -2.0 + delta && u <= 2.0 - delta, msg.str());
}

Json limit_json(const limits::LimitVariance& v) {
  return Json{{"function", v.function},
              {"thresholds", v.thresholds},
              {"value", v.value},
              {"error_estimate", v.error_estimate},
              {"panels", v.panels}};
}

std::string csv_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --stats entries: linear:FN, type_a:FN@U, type_b:FN@K, process:FN@T,
// counting@U, rigidity, middle.
struct SampleStatistic {
  std::string label;
  std::string kind;
  std::optional<TestFunction> f;
  double param = 0.0;
};

SampleStatistic parse_sample_statistic(const std::string& text, std::size_t n, double delta,
                                       double time_delta) {
  SampleStatistic s;
  s.label = text;
  const auto at = text.rfind('@');
  const std::string head = text.substr(0, at);
  const std::string param = at == std::string::npos ? "" : text.substr(at + 1);
  const auto colon = head.find(':');
  s.kind = head.substr(0, colon);
  const std::string fn = colon == std::string::npos ? "" : head.substr(colon + 1);
  auto need_fn = [&] {
    require(!fn.empty(), "--stats " + text + ": missing test function");
    s.f = TestFunction::parse(fn);
  };
  auto need_param = [&] { require(!param.empty(), "--stats " + text + ": missing @value"); };
  if (s.kind == "linear") {
    need_fn();
  } else if (s.kind == "type_a") {
    need_fn();
    need_param();
    s.param = parse_threshold(param);
    require_bulk(s.param, delta, "--stats " + text);
  } else if (s.kind == "type_b") {
    need_fn();
    need_param();
    const double k = std::stod(param);
    require(k >= 1.0 && k <= static_cast<double>(n) && std::floor(k) == k,
            "--stats " + text + ": k must be an integer in [1, n]");
    s.param = k;
  } else if (s.kind == "process") {
    need_fn();
    need_param();
    s.param = std::stod(param);
    require(s.param >= time_delta && s.param <= 1.0 - time_delta,
            "--stats " + text + ": t outside [time_delta, 1 - time_delta]");
  } else if (s.kind == "counting") {
    need_param();
    s.param = parse_threshold(param);
    require_bulk(s.param, delta, "--stats " + text);
  } else if (s.kind == "rigidity") {
    require(n >= 16, "--stats rigidity: n must be >= 16");
  } else if (s.kind == "middle") {
  } else {
    throw DomainError("--stats " + text +
                      ": unknown statistic (linear, type_a, type_b, process, counting, rigidity, "
                      "middle)");
  }
  return s;
}

PlesResult evaluate_sample_statistic(const SampleStatistic& s, const Spectrum& spectrum) {
  if (s.kind == "linear") {
    PlesResult r;
    for (double x : spectrum.eigenvalues()) r.raw += (*s.f)(x);
    r.centering = semicircle::centering(*s.f, 2.0, spectrum.size());
    r.centered = r.raw - r.centering;
    return r;
  }
  if (s.kind == "type_a") return type_a(spectrum, *s.f, s.param);
  if (s.kind == "type_b") return type_b(spectrum, *s.f, static_cast<std::size_t>(s.param));
  if (s.kind == "process") return process_point(spectrum, *s.f, s.param);
  if (s.kind == "counting") return counting_statistic(spectrum, s.param);
  PlesResult r;
  r.raw = s.kind == "rigidity" ? rigidity_diagnostic(spectrum) : middle_eigenvalue(spectrum);
  r.centered = r.raw;
  return r;
}

struct Check {
  std::string name;
  double observed;
  double tolerance;
};

std::vector<Check> validation_checks(Seed seed) {
  std::vector<Check> checks;
  for (std::size_t n : {1, 8, 32}) {
    const determinantal::KernelEvaluator eval(n);
    checks.push_back({"kernel_trace_n" + std::to_string(n),
                      std::abs(eval.trace() - static_cast<double>(n)) / static_cast<double>(n), 1e-6});
  }
  checks.push_back({"kernel_reproducing_n10",
                    std::abs(determinantal::reproducing_integral(10, 0.3, -1.1) -
                             determinantal::kernel(10, 0.3, -1.1)),
                    1e-6});
  checks.push_back({"kernel_cauchy_schwarz_n16",
                    std::max(0.0, determinantal::KernelEvaluator(16).max_cauchy_schwarz_excess()),
                    1e-9});
  checks.push_back({"oscillator_orthonormality_l20", determinantal::orthonormality_defect(20), 1e-10});
  {
    const auto x2 = Observable::of(TestFunction::monomial(2));
    checks.push_back({"exact_mean_n1_x2", std::abs(determinantal::exact_mean(1, x2) - 1.0), 1e-8});
    checks.push_back({"exact_variance_n1_x2", std::abs(determinantal::exact_variance(1, x2) - 2.0), 1e-8});
  }
  checks.push_back({"limit_variance_x_u2",
                    std::abs(limits::limit_variance(TestFunction::monomial(1), 2.0).value - 1.0), 1e-6});
  checks.push_back({"limit_variance_x2_u2",
                    std::abs(limits::limit_variance(TestFunction::monomial(2), 2.0).value - 2.0), 1e-6});
  double roundtrip = std::abs(semicircle::quantile(0.5));
  for (double x : {-1.9, -1.0, -0.3, 0.7, 1.5, 1.99})
    roundtrip = std::max(roundtrip, std::abs(semicircle::quantile(semicircle::cdf(x)) - x));
  checks.push_back({"quantile_cdf_roundtrip", roundtrip, 1e-9});

  constexpr double kBisectionTol = 1e-12;
  double ql_vs_bisection = 0.0;
  double identity_excess = 0.0;
  double decomposition = 0.0;
  const TestFunction x2 = TestFunction::monomial(2);
  for (std::size_t i = 0; i < 20; ++i) {
    const TridiagonalMatrix t = sample_gue_tridiagonal(60, derive_seed(seed, i, 0));
    const Spectrum ql = eigenvalues_tridiagonal(t);
    const Spectrum bis = eigenvalues_bisection(t, kBisectionTol);
    for (std::size_t j = 0; j < ql.size(); ++j)
      ql_vs_bisection = std::max(ql_vs_bisection, std::abs(ql[j] - bis[j]));
    const IdentityCheck tc = check_identities(ql, t);
    identity_excess = std::max({identity_excess, tc.trace_residual / tc.trace_tolerance,
                                tc.frobenius_residual / tc.frobenius_tolerance});
    const HermitianMatrix h = sample_gue_dense(24, derive_seed(seed, i, 1));
    const Spectrum dense = eigenvalues_dense(h);
    const IdentityCheck hc = check_identities(dense, h);
    identity_excess = std::max({identity_excess, hc.trace_residual / hc.trace_tolerance,
                                hc.frobenius_residual / hc.frobenius_tolerance});
    decomposition = std::max(decomposition, decomposition_check(ql, x2, 0.0));
  }
  checks.push_back({"tridiagonal_ql_vs_bisection", ql_vs_bisection, 10.0 * kBisectionTol});
  checks.push_back({"spectral_identities_relative", identity_excess, 1.0});
  checks.push_back({"type_a_decomposition", decomposition, 1e-12});
  {
    HermitianMatrix m(2);
    m.set_diagonal(0, 1.0);
    m.set_diagonal(1, -1.0);
    m.set_upper(0, 1, {0.0, 1.0});
    const Spectrum s = eigenvalues_dense(m);
    const double r = std::sqrt(2.0);
    checks.push_back({"dense_2x2_closed_form", std::max(std::abs(s[0] + r), std::abs(s[1] - r)), 1e-13});
  }
  return checks;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Partial linear eigenvalue statistics of GUE and Wigner matrices", "ples"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  double delta = kDefaultDelta;
  double time_delta = limits::kDefaultTimeDelta;

  auto* quantile = app.add_subcommand("quantile", "Semicircle quantile gamma_t");
  double q_t = 0.5;
  quantile->add_option("--t", q_t, "Probability in [0, 1]")->required();

  auto* exact = app.add_subcommand("exact", "Exact GUE mean and variance of L_n[f] or L_n[f_u]");
  std::size_t e_n = 0;
  std::string e_fn;
  std::optional<std::string> e_u;
  exact->add_option("--n", e_n, "Matrix size")->required()->check(CLI::PositiveNumber);
  exact->add_option("--fn", e_fn, "Test function (x, x2, x3, gauss, poly:[..], exp:[a,b])")->required();
  exact->add_option("--u", e_u, "Truncation threshold (number or quantile:t)");
  exact->add_option("--delta", delta, "Bulk margin");

  auto* limit = app.add_subcommand("limit-variance", "Limiting variance V_GUE[f_u]");
  std::string l_fn;
  std::string l_u = "2";
  limit->add_option("--fn", l_fn, "Test function")->required();
  limit->add_option("--u", l_u, "Threshold in [-2, 2] (number or quantile:t)");

  auto* cov = app.add_subcommand("process-cov", "Limiting covariance of S_n[f; s] and S_n[f; t]");
  std::string c_fn;
  double c_s = 0.5;
  double c_t = 0.5;
  cov->add_option("--fn", c_fn, "Test function")->required();
  cov->add_option("--s", c_s, "First time")->required();
  cov->add_option("--t", c_t, "Second time")->required();
  cov->add_option("--time-delta", time_delta, "Time margin");

  auto* sample = app.add_subcommand("sample", "Sample spectra and per-sample statistics");
  std::string s_ensemble = "gue";
  std::size_t s_n = 0;
  Seed s_seed = 0;
  std::size_t s_count = 1;
  std::vector<std::string> s_stats;
  std::optional<std::string> s_csv;
  sample->add_option("--ensemble", s_ensemble, "gue, gue-tridiag, wigner-matched, wigner-mismatched");
  sample->add_option("--n", s_n, "Matrix size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", s_seed, "Master seed")->required();
  sample->add_option("--count", s_count, "Number of samples")->check(CLI::PositiveNumber);
  sample->add_option("--stats", s_stats,
                     "Statistics: linear:FN, type_a:FN@U, type_b:FN@K, process:FN@T, counting@U, "
                     "rigidity, middle");
  sample->add_option("--csv", s_csv, "Write per-sample rows here instead of stdout");
  sample->add_option("--delta", delta, "Bulk margin");
  sample->add_option("--time-delta", time_delta, "Time margin");

  auto* experiment = app.add_subcommand("experiment", "Run an experiment plan");
  std::string x_plan;
  unsigned x_workers = 0;
  std::optional<std::string> x_json;
  std::optional<std::string> x_csv;
  experiment->add_option("--plan", x_plan, "Plan file (TOML)")->required();
  experiment->add_option("--workers", x_workers, "Worker threads (default: PLES_WORKERS or all cores)");
  experiment->add_option("--json", x_json, "Also write the report here");
  experiment->add_option("--csv", x_csv, "Write per-sample rows here");

  auto* validate = app.add_subcommand("validate", "Run the built-in invariant suite");
  Seed v_seed = 1;
  validate->add_option("--seed", v_seed, "Seed for sampled checks");

  if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
    const auto subs = app.get_subcommands([](CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(),
                                   [&](CLI::App* s) { return s->get_name() == args.front(); });
    if (!known) {
      err << "ples: unknown command '" << args.front() << "'\n" << app.help();
      return kUsage;
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "ples: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  try {
    if (quantile->parsed()) {
      require(q_t >= 0.0 && q_t <= 1.0, "--t must lie in [0, 1]");
      out << Json{{"t", q_t}, {"quantile", semicircle::quantile(q_t)}}.dump(2) << "\n";
      return kOk;
    }
    if (exact->parsed()) {
      const TestFunction f = TestFunction::parse(e_fn);
      Json j{{"n", e_n}, {"fn", f.name()}};
      Observable obs = Observable::of(f);
      if (e_u) {
        const double u = parse_threshold(*e_u);
        require_bulk(u, delta, "--u");
        obs = Observable::of(TruncatedFunction(f, u));
        j["u"] = u;
      }
      const determinantal::KernelEvaluator eval(e_n, obs.kinks, {delta});
      j["mean"] = eval.mean(obs);
      j["variance"] = eval.variance(obs);
      out << j.dump(2) << "\n";
      return kOk;
    }
    if (limit->parsed()) {
      const TestFunction f = TestFunction::parse(l_fn);
      const double u = parse_threshold(l_u);
      require(u >= -2.0 && u <= 2.0, "--u must lie in [-2, 2]");
      out << limit_json(limits::limit_variance(f, u)).dump(2) << "\n";
      return kOk;
    }
    if (cov->parsed()) {
      const TestFunction f = TestFunction::parse(c_fn);
      for (double r : {c_s, c_t}) {
        std::ostringstream msg;
        msg << "time " << r << " outside [" << time_delta << ", " << 1.0 - time_delta << "]";
        require(r >= time_delta && r <= 1.0 - time_delta, msg.str());
      }
      Json j = limit_json(limits::process_covariance(f, c_s, c_t, time_delta));
      j["s"] = c_s;
      j["t"] = c_t;
      out << j.dump(2) << "\n";
      return kOk;
    }
    if (sample->parsed()) {
      const EnsembleSpec ensemble = EnsembleSpec::parse(s_ensemble);
      std::vector<SampleStatistic> stats;
      for (const std::string& text : s_stats)
        stats.push_back(parse_sample_statistic(text, s_n, delta, time_delta));

      std::ofstream file;
      if (s_csv) {
        file.open(*s_csv);
        require(static_cast<bool>(file), "cannot write '" + *s_csv + "'");
      }
      std::ostream& rows = s_csv ? static_cast<std::ostream&>(file) : out;
      Json spectra = Json::array();
      if (!stats.empty()) rows << "sample,seed,n,statistic_kind,statistic,raw,centered,normalized\n";
      for (std::size_t i = 0; i < s_count; ++i) {
        std::optional<harness::SampledSpectrum> sampled;
        Seed seed = 0;
        for (std::size_t attempt = 0; attempt < harness::kMaxAttempts && !sampled; ++attempt) {
          seed = harness::sample_seed(s_seed, 0, s_n, i, attempt);
          try {
            sampled = harness::sample_spectrum(ensemble, s_n, seed);
          } catch (const ConvergenceError&) {
          }
        }
        if (!sampled) throw harness::ExperimentAborted("eigensolver failed repeatedly");
        if (stats.empty()) {
          spectra.push_back(Json{{"sample", i},
                                 {"seed", seed},
                                 {"solver", sampled->spectrum.provenance().solver},
                                 {"identities_ok", sampled->identities.ok()},
                                 {"eigenvalues", sampled->spectrum.eigenvalues()}});
          continue;
        }
        for (const SampleStatistic& s : stats) {
          const PlesResult r = evaluate_sample_statistic(s, sampled->spectrum);
          rows << i << "," << seed << "," << s_n << "," << s.kind << "," << s.label << ","
               << csv_double(r.raw) << "," << csv_double(r.centered) << ","
               << (r.normalized ? csv_double(*r.normalized) : "") << "\n";
        }
      }
      if (stats.empty()) {
        out << Json{{"ensemble", ensemble.tag}, {"n", s_n}, {"samples", spectra}}.dump(2) << "\n";
      } else if (s_csv) {
        out << Json{{"ensemble", ensemble.tag}, {"n", s_n}, {"count", s_count}, {"csv", *s_csv}}.dump(2)
            << "\n";
      }
      return kOk;
    }
    if (experiment->parsed()) {
      ExperimentPlan plan = load_plan(x_plan);
      if (x_json) plan.json_path = x_json;
      if (x_csv) plan.csv_path = x_csv;
      const harness::ExperimentReport report = harness::run(plan, {x_workers});
      out << report.to_json();
      return report.passed() ? kOk : kVerdictFailed;
    }
    if (validate->parsed()) {
      Json checks = Json::array();
      bool ok = true;
      for (const Check& c : validation_checks(v_seed)) {
        const bool pass = c.observed <= c.tolerance;
        ok = ok && pass;
        checks.push_back(Json{{"check", c.name}, {"observed", c.observed}, {"tolerance", c.tolerance},
                              {"pass", pass}});
      }
      out << Json{{"checks", checks}, {"passed", ok}}.dump(2) << "\n";
      return ok ? kOk : kVerdictFailed;
    }
  } catch (const PlanError& e) {
    err << "ples: plan error: " << e.what() << "\n";
    return kUsage;
  } catch (const harness::ExperimentAborted& e) {
    err << "ples: experiment aborted: " << e.what() << "\n";
    return kAborted;
  } catch (const std::invalid_argument& e) {
    err << "ples: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "ples: error: " << e.what() << "\n";
    return kAborted;
  }
  return kUsage;
}

}  // namespace ples::cli
