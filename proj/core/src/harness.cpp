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

#include "ples/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <thread>

#include "json.hpp"
#include "ples/determinantal.hpp"
#include "ples/limits.hpp"
#include "ples/semicircle.hpp"
#include "ples/statistics.hpp"

namespace ples::harness {
namespace {

using Json = nlohmann::ordered_json;

constexpr double kDecompositionTolerance = 1e-11;
constexpr std::size_t kExactComparatorMaxN = 1024;

bool is_gue(const EnsembleSpec& e) {
  return e.kind == EnsembleSpec::Kind::kGueDense || e.kind == EnsembleSpec::Kind::kGueTridiagonal;
}

// Per (statistic, n) quantities fixed before sampling.
struct Context {
  std::size_t k = 0;
  double linear_center = 0.0;
  std::optional<double> exact_center;
};

Observable type_a_observable(const TestFunction& f, double u) {
  return {[f, u](double x) { return x <= u ? f(x) : 0.0; }, {u}, "type_a"};
}

Observable counting_observable(double u) {
  return {[u](double x) { return x <= u ? 1.0 : 0.0; }, {u}, "counting"};
}

std::optional<Observable> exact_observable(const StatisticSpec& s) {
  switch (s.kind) {
    case PlanStatistic::kLinear:
      if (s.u) return Observable::of(TruncatedFunction(*s.f, *s.u));
      return Observable::of(*s.f);
    case PlanStatistic::kTypeA:
      return type_a_observable(*s.f, *s.u);
    case PlanStatistic::kCounting:
      return counting_observable(*s.u);
    default:
      return std::nullopt;
  }
}

SampleValue from_result(const PlesResult& r) { return {r.raw, r.centered, r.normalized}; }

SampleValue plain(double v) { return {v, v, std::nullopt}; }

void evaluate(const StatisticSpec& s, const Context& ctx, const Spectrum& spectrum,
              std::vector<SampleValue>& out, double& decomposition) {
  switch (s.kind) {
    case PlanStatistic::kLinear: {
      double raw = 0.0;
      if (s.u) {
        const TruncatedFunction fu(*s.f, *s.u);
        for (double x : spectrum.eigenvalues()) raw += fu(x);
      } else {
        for (double x : spectrum.eigenvalues()) raw += (*s.f)(x);
      }
      out.push_back({raw, raw - ctx.linear_center, std::nullopt});
      break;
    }
    case PlanStatistic::kTypeA: {
      PlesResult r = type_a(spectrum, *s.f, *s.u);
      if (ctx.exact_center) {
        r.centering = *ctx.exact_center;
        r.centered = r.raw - r.centering;
        if (r.normalized)
          r.normalized = r.centered / limits::counting_variance_normalizer((*s.f)(*s.u), spectrum.size());
      }
      const std::size_t count = counting(spectrum, *s.u);
      double scale = 1.0 + std::abs((*s.f)(*s.u)) * static_cast<double>(count);
      for (std::size_t l = 0; l < count; ++l) scale += std::abs((*s.f)(spectrum[l]));
      decomposition = std::max(decomposition, decomposition_check(spectrum, *s.f, *s.u) / scale);
      out.push_back(from_result(r));
      break;
    }
    case PlanStatistic::kTypeB:
      out.push_back(from_result(type_b(spectrum, *s.f, ctx.k)));
      break;
    case PlanStatistic::kProcess:
      for (double t : s.t) out.push_back(from_result(process_point(spectrum, *s.f, t)));
      break;
    case PlanStatistic::kCounting: {
      PlesResult r = counting_statistic(spectrum, *s.u);
      if (ctx.exact_center) {
        r.centering = *ctx.exact_center;
        r.centered = r.raw - r.centering;
        r.normalized = r.centered / limits::counting_variance_normalizer(1.0, spectrum.size());
      }
      out.push_back(from_result(r));
      break;
    }
    case PlanStatistic::kRigidity:
      out.push_back(plain(rigidity_diagnostic(spectrum)));
      break;
    case PlanStatistic::kMiddleEigenvalue:
      out.push_back(plain(middle_eigenvalue(spectrum)));
      break;
  }
}

double field(const SampleValue& v, ValueField f) {
  switch (f) {
    case ValueField::kRaw: return v.raw;
    case ValueField::kCentered: return v.centered;
    case ValueField::kNormalized: return v.normalized.value_or(std::numeric_limits<double>::quiet_NaN());
  }
  return v.raw;
}

std::vector<double> column(const EnsembleRun& run, std::size_t c, ValueField f) {
  std::vector<double> out;
  out.reserve(run.samples.size());
  for (const SampleRecord& r : run.samples) out.push_back(field(r.values[c], f));
  return out;
}

EnsembleRun run_ensemble(const ExperimentPlan& plan, const EnsembleSpec& ensemble, unsigned role,
                         std::size_t n, const std::vector<Context>& contexts, unsigned workers) {
  EnsembleRun run;
  run.ensemble = ensemble.tag;
  run.n = n;
  run.samples.resize(plan.samples);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= plan.samples) return;
      try {
        SampleRecord rec;
        std::optional<SampledSpectrum> sampled;
        for (std::size_t attempt = 0; attempt < kMaxAttempts && !sampled; ++attempt) {
          rec.seed = sample_seed(plan.seed, role, n, i, attempt);
          rec.attempts = attempt;
          try {
            sampled = sample_spectrum(ensemble, n, rec.seed);
          } catch (const ConvergenceError&) {
          }
        }
        if (!sampled)
          throw ExperimentAborted("sample " + std::to_string(i) + " at n = " + std::to_string(n) +
                                  " failed to converge after " + std::to_string(kMaxAttempts) +
                                  " attempts");
        rec.identities_ok = sampled->identities.ok();
        for (std::size_t s = 0; s < plan.statistics.size(); ++s)
          evaluate(plan.statistics[s], contexts[s], sampled->spectrum, rec.values,
                   rec.decomposition_residual);
        run.samples[i] = std::move(rec);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(plan.samples);
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  return run;
}

Verdict make(std::string check, std::string invariant, double observed, double lower, double upper,
             bool pass) {
  return {std::move(check), std::move(invariant), observed, lower, upper, pass};
}

std::optional<double> limit_for(const StatisticSpec& s, std::size_t n, std::size_t k,
                                std::optional<double> t) {
  switch (s.kind) {
    case PlanStatistic::kLinear:
      return limits::limit_variance(*s.f, s.u.value_or(2.0)).value;
    case PlanStatistic::kTypeA:
      return limits::limit_variance(*s.f, *s.u).value;
    case PlanStatistic::kTypeB:
      return limits::limit_variance(
                 *s.f, semicircle::quantile(static_cast<double>(k) / static_cast<double>(n)))
          .value;
    case PlanStatistic::kProcess:
      return limits::limit_variance(*s.f, semicircle::quantile(*t)).value;
    default:
      return std::nullopt;
  }
}

std::optional<double> reference_for(const StatisticSpec& s, const Row& row) {
  switch (s.verdicts.variance_reference) {
    case VarianceReference::kLimit: return row.limit_variance;
    case VarianceReference::kUnit: return 1.0;
    case VarianceReference::kLogCounting: {
      const double fu = s.kind == PlanStatistic::kCounting ? 1.0 : (*s.f)(*s.u);
      const double norm = limits::counting_variance_normalizer(fu, row.n);
      return norm * norm;
    }
  }
  return std::nullopt;
}

Row summarize(const StatisticSpec& s, const Context& ctx, std::size_t n, std::size_t col,
              std::optional<double> t, const EnsembleRun& primary, const EnsembleRun* compare,
              std::optional<determinantal::MeanVariance> exact) {
  const Verdicts& v = s.verdicts;
  Row row;
  row.statistic = s.name;
  row.kind = std::string(to_string(s.kind));
  row.value = std::string(to_string(s.value));
  row.n = n;
  if (s.kind == PlanStatistic::kTypeB) row.k = ctx.k;
  row.u = s.u;
  row.t = t;
  const std::vector<double> values = column(primary, col, s.value);
  row.moments = stats::moments(values);
  const bool testable = values.size() >= stats::kMinSamples && row.moments.variance > 0.0;
  if (testable) row.ks_normal = stats::ks_normal(values);
  if (compare && values.size() >= stats::kMinSamples)
    row.two_sample = stats::ks_two_sample(values, column(*compare, col, s.value));
  if (exact) {
    row.exact_mean = exact->mean;
    row.exact_variance = exact->variance;
  }
  row.limit_variance = limit_for(s, n, ctx.k, t);
  if (v.variance_ratio) row.reference_variance = reference_for(s, row);

  if (v.ks_normal_p_min) {
    const double p = row.ks_normal ? row.ks_normal->p_value : 0.0;
    row.verdicts.push_back(make("ks_normal_p", "gaussian limit", p, *v.ks_normal_p_min, 1.0,
                                p > *v.ks_normal_p_min));
  }
  if (v.two_sample_p_min) {
    const double p = row.two_sample ? row.two_sample->p_value : 0.0;
    row.verdicts.push_back(make("two_sample_p", "four-moment universality", p, *v.two_sample_p_min,
                                1.0, p > *v.two_sample_p_min));
  }
  if (v.variance_ratio) {
    const double ratio = row.moments.variance / row.reference_variance.value_or(0.0);
    row.verdicts.push_back(make("variance_ratio",
                                std::string("variance matches ") +
                                    std::string(to_string(v.variance_reference)) + " reference",
                                ratio, v.variance_ratio->min, v.variance_ratio->max,
                                ratio >= v.variance_ratio->min && ratio <= v.variance_ratio->max));
  }
  if (v.exact_within_se && exact) {
    const double zm = std::abs(row.moments.mean - exact->mean) / row.moments.mean_se;
    const double zv = std::abs(row.moments.variance - exact->variance) / row.moments.variance_se;
    row.verdicts.push_back(make("exact_mean_z", "exact determinantal mean", zm, 0.0,
                                *v.exact_within_se, zm <= *v.exact_within_se));
    row.verdicts.push_back(make("exact_variance_z", "exact determinantal variance", zv, 0.0,
                                *v.exact_within_se, zv <= *v.exact_within_se));
  }
  if (v.skewness_max) {
    const double a = std::abs(row.moments.skewness);
    row.verdicts.push_back(make("abs_skewness", "gaussian limit shape", a, 0.0, *v.skewness_max,
                                a <= *v.skewness_max));
  }
  if (v.excess_kurtosis_max) {
    const double a = std::abs(row.moments.excess_kurtosis);
    row.verdicts.push_back(make("abs_excess_kurtosis", "gaussian limit shape", a, 0.0,
                                *v.excess_kurtosis_max, a <= *v.excess_kurtosis_max));
  }
  if (v.fraction_at_most) {
    std::size_t below = 0;
    for (double x : values) below += x <= v.fraction_at_most->threshold ? 1 : 0;
    const double fraction = static_cast<double>(below) / static_cast<double>(values.size());
    row.verdicts.push_back(make("fraction_at_most_" + std::to_string(v.fraction_at_most->threshold),
                                "rigidity", fraction, v.fraction_at_most->min_fraction, 1.0,
                                fraction >= v.fraction_at_most->min_fraction));
  }
  return row;
}

CovarianceGrid covariance_grid(const ExperimentPlan& plan, const StatisticSpec& s, std::size_t n,
                               std::size_t first_col, const EnsembleRun& run) {
  CovarianceGrid g;
  g.statistic = s.name;
  g.n = n;
  g.t = s.t;
  const std::size_t d = s.t.size();
  std::vector<double> table;
  table.reserve(run.samples.size() * d);
  for (const SampleRecord& r : run.samples)
    for (std::size_t j = 0; j < d; ++j) table.push_back(field(r.values[first_col + j], s.value));
  const stats::CovarianceEstimate est = stats::covariance(table, d);
  g.empirical = est.value;
  g.standard_error = est.standard_error;
  g.theoretical.resize(d * d);
  g.z.resize(d * d);
  double worst = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      const double theo = limits::process_covariance(*s.f, s.t[a], s.t[b], plan.time_delta).value;
      g.theoretical[a * d + b] = g.theoretical[b * d + a] = theo;
    }
  }
  for (std::size_t e = 0; e < d * d; ++e) {
    const double diff = g.empirical[e] - g.theoretical[e];
    const double se = g.standard_error[e];
    g.z[e] = se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
    worst = std::max(worst, std::abs(g.z[e]));
  }
  if (s.verdicts.covariance_z_max)
    g.verdict = make("covariance_max_abs_z", "process covariance", worst, 0.0,
                     *s.verdicts.covariance_z_max, worst < *s.verdicts.covariance_z_max);
  return g;
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json verdict_json(const Verdict& v) {
  return Json{{"check", v.check}, {"invariant", v.invariant}, {"observed", v.observed},
              {"lower", v.lower},  {"upper", v.upper},         {"pass", v.pass}};
}

Json verdicts_json(const std::vector<Verdict>& vs) {
  Json out = Json::array();
  for (const Verdict& v : vs) out.push_back(verdict_json(v));
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

unsigned default_workers() {
  if (const char* env = std::getenv("PLES_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

Seed sample_seed(Seed master, unsigned role, std::size_t n, std::size_t index, std::size_t attempt) {
  const Seed stream = derive_seed(derive_seed(master, role, 0), n, 0);
  return derive_seed(stream, index, attempt);
}

SampledSpectrum sample_spectrum(const EnsembleSpec& ensemble, std::size_t n, Seed seed) {
  Provenance prov{ensemble.tag, seed, ""};
  switch (ensemble.kind) {
    case EnsembleSpec::Kind::kGueTridiagonal: {
      const TridiagonalMatrix m = sample_gue_tridiagonal(n, seed);
      Spectrum s = eigenvalues_tridiagonal(m);
      prov.solver = "tridiagonal-ql";
      Spectrum out(s.eigenvalues(), prov);
      return {out, check_identities(out, m)};
    }
    case EnsembleSpec::Kind::kGueDense:
    case EnsembleSpec::Kind::kWigner: {
      const HermitianMatrix m = ensemble.kind == EnsembleSpec::Kind::kGueDense
                                    ? sample_gue_dense(n, seed)
                                    : sample_wigner(n, ensemble.diagonal, ensemble.off_diagonal, seed);
      Spectrum s = eigenvalues_dense(m);
      prov.solver = "householder-ql";
      Spectrum out(s.eigenvalues(), prov);
      return {out, check_identities(out, m)};
    }
  }
  throw std::logic_error("sample_spectrum: unknown ensemble kind");
}

bool ExperimentReport::passed() const {
  auto all = [](const std::vector<Verdict>& vs) {
    return std::all_of(vs.begin(), vs.end(), [](const Verdict& v) { return v.pass; });
  };
  if (!all(checks)) return false;
  for (const Row& r : rows)
    if (!all(r.verdicts)) return false;
  for (const CovarianceGrid& g : covariances)
    if (g.verdict && !g.verdict->pass) return false;
  for (const SeriesResult& s : series)
    if (!all(s.verdicts)) return false;
  return true;
}

std::string ExperimentReport::to_json() const {
  Json root;
  root["plan"] = plan;
  root["seed"] = seed;
  root["samples"] = samples;
  root["ensemble"] = ensemble;
  root["compare"] = compare ? Json(*compare) : Json(nullptr);
  Json rows_json = Json::array();
  for (const Row& r : rows) {
    Json j;
    j["statistic"] = r.statistic;
    j["kind"] = r.kind;
    j["value"] = r.value;
    j["n"] = r.n;
    if (r.k) j["k"] = *r.k;
    if (r.u) j["u"] = *r.u;
    if (r.t) j["t"] = *r.t;
    j["count"] = r.moments.count;
    j["mean"] = r.moments.mean;
    j["mean_se"] = r.moments.mean_se;
    j["variance"] = r.moments.variance;
    j["variance_se"] = r.moments.variance_se;
    j["skewness"] = r.moments.skewness;
    j["excess_kurtosis"] = r.moments.excess_kurtosis;
    if (r.ks_normal)
      j["ks_normal"] = Json{{"statistic", r.ks_normal->statistic}, {"p_value", r.ks_normal->p_value}};
    if (r.two_sample)
      j["ks_two_sample"] =
          Json{{"statistic", r.two_sample->statistic}, {"p_value", r.two_sample->p_value}};
    j["exact_mean"] = optional_json(r.exact_mean);
    j["exact_variance"] = optional_json(r.exact_variance);
    j["limit_variance"] = optional_json(r.limit_variance);
    j["reference_variance"] = optional_json(r.reference_variance);
    j["verdicts"] = verdicts_json(r.verdicts);
    rows_json.push_back(std::move(j));
  }
  root["rows"] = std::move(rows_json);
  Json cov = Json::array();
  for (const CovarianceGrid& g : covariances) {
    Json j{{"statistic", g.statistic}, {"n", g.n},        {"t", g.t},
           {"empirical", g.empirical}, {"standard_error", g.standard_error},
           {"theoretical", g.theoretical}, {"z", g.z}};
    j["verdict"] = g.verdict ? verdict_json(*g.verdict) : Json(nullptr);
    cov.push_back(std::move(j));
  }
  root["covariance_grids"] = std::move(cov);
  Json ser = Json::array();
  for (const SeriesResult& s : series)
    ser.push_back(Json{{"statistic", s.statistic},
                       {"n", s.n},
                       {"scaled_variance", s.scaled_variance},
                       {"verdicts", verdicts_json(s.verdicts)}});
  root["series"] = std::move(ser);
  root["checks"] = verdicts_json(checks);
  root["solver_failures"] = solver_failures;
  root["identity_failures"] = identity_failures;
  root["max_decomposition_residual"] = max_decomposition_residual;
  root["passed"] = passed();
  return root.dump(2) + "\n";
}

std::string ExperimentReport::to_csv() const {
  std::string out = "ensemble,n,sample,seed,attempts,column,raw,centered,normalized\n";
  for (const EnsembleRun& run : runs) {
    for (std::size_t i = 0; i < run.samples.size(); ++i) {
      const SampleRecord& r = run.samples[i];
      for (std::size_t c = 0; c < r.values.size(); ++c) {
        const SampleValue& v = r.values[c];
        out += run.ensemble + "," + std::to_string(run.n) + "," + std::to_string(i) + "," +
               std::to_string(r.seed) + "," + std::to_string(r.attempts) + "," + columns[c] + "," +
               format_double(v.raw) + "," + format_double(v.centered) + "," +
               (v.normalized ? format_double(*v.normalized) : std::string()) + "\n";
      }
    }
  }
  return out;
}

ExperimentReport run(const ExperimentPlan& plan, RunOptions options) {
  plan.validate();
  const unsigned workers = options.workers ? options.workers : default_workers();

  ExperimentReport report;
  report.plan = plan.name;
  report.seed = plan.seed;
  report.samples = plan.samples;
  report.ensemble = plan.ensemble.tag;
  if (plan.compare) report.compare = plan.compare->tag;
  for (const StatisticSpec& s : plan.statistics) {
    if (s.kind == PlanStatistic::kProcess) {
      for (double t : s.t) report.columns.push_back(s.name + "@t=" + format_double(t));
    } else {
      report.columns.push_back(s.name);
    }
  }
  if (plan.statistics.empty()) return report;

  const bool gue = is_gue(plan.ensemble);
  std::map<std::string, SeriesResult> series;
  for (std::size_t n : plan.n) {
    std::vector<Context> contexts(plan.statistics.size());
    std::vector<std::optional<determinantal::MeanVariance>> exact(plan.statistics.size());
    for (std::size_t s = 0; s < plan.statistics.size(); ++s) {
      const StatisticSpec& spec = plan.statistics[s];
      if (spec.kind == PlanStatistic::kTypeB) contexts[s].k = spec.rank_for(n);
      if (spec.kind == PlanStatistic::kLinear) {
        const std::function<double(double)> g =
            spec.u ? std::function<double(double)>(TruncatedFunction(*spec.f, *spec.u))
                   : std::function<double(double)>(*spec.f);
        contexts[s].linear_center =
            static_cast<double>(n) * semicircle::integrate_against_density(g, 2.0);
      }
      const auto obs = exact_observable(spec);
      if (gue && obs && n <= kExactComparatorMaxN &&
          (spec.verdicts.exact_within_se || plan.exact_centering)) {
        const determinantal::KernelEvaluator eval(n, obs->kinks);
        exact[s] = determinantal::MeanVariance{eval.mean(*obs), eval.variance(*obs)};
        if (plan.exact_centering && spec.kind != PlanStatistic::kLinear)
          contexts[s].exact_center = exact[s]->mean;
      }
    }

    EnsembleRun primary = run_ensemble(plan, plan.ensemble, 0, n, contexts, workers);
    std::optional<EnsembleRun> compare;
    if (plan.compare) compare = run_ensemble(plan, *plan.compare, 1, n, contexts, workers);

    for (const EnsembleRun* run : {&primary, compare ? &*compare : nullptr}) {
      if (!run) continue;
      std::size_t resampled = 0;
      for (const SampleRecord& r : run->samples) {
        resampled += r.attempts > 0 ? 1 : 0;
        report.solver_failures += r.attempts;
        report.identity_failures += r.identities_ok ? 0 : 1;
        report.max_decomposition_residual =
            std::max(report.max_decomposition_residual, r.decomposition_residual);
      }
      if (static_cast<double>(resampled) > kMaxFailureFraction * static_cast<double>(plan.samples))
        throw ExperimentAborted(std::to_string(resampled) + " of " + std::to_string(plan.samples) +
                                " samples of " + run->ensemble + " at n = " + std::to_string(n) +
                                " needed resampling (limit 0.1%)");
    }

    std::size_t col = 0;
    for (std::size_t s = 0; s < plan.statistics.size(); ++s) {
      const StatisticSpec& spec = plan.statistics[s];
      const EnsembleRun* cmp = compare ? &*compare : nullptr;
      if (spec.kind == PlanStatistic::kProcess) {
        for (std::size_t j = 0; j < spec.t.size(); ++j)
          report.rows.push_back(
              summarize(spec, contexts[s], n, col + j, spec.t[j], primary, cmp, std::nullopt));
        report.covariances.push_back(covariance_grid(plan, spec, n, col, primary));
      } else {
        report.rows.push_back(summarize(spec, contexts[s], n, col, std::nullopt, primary, cmp, exact[s]));
      }
      if (spec.verdicts.scaled_variance_stability) {
        SeriesResult& sr = series[spec.name];
        sr.statistic = spec.name;
        sr.n.push_back(n);
        const double log_n = std::log(static_cast<double>(n));
        const double nd = static_cast<double>(n);
        sr.scaled_variance.push_back(report.rows.back().moments.variance * nd * nd / log_n);
      }
      col += spec.width();
    }
    report.runs.push_back(std::move(primary));
    if (compare) report.runs.push_back(std::move(*compare));
  }

  for (const StatisticSpec& spec : plan.statistics) {
    auto it = series.find(spec.name);
    if (it == series.end()) continue;
    SeriesResult sr = std::move(it->second);
    const double factor = *spec.verdicts.scaled_variance_stability;
    double worst = 1.0;
    for (std::size_t i = 1; i < sr.scaled_variance.size(); ++i) {
      const double a = sr.scaled_variance[i - 1];
      const double b = sr.scaled_variance[i];
      worst = std::max(worst, std::max(a / b, b / a));
    }
    sr.verdicts.push_back(make("scaled_variance_ratio", "eigenvalue variance scaling", worst, 1.0,
                               factor, worst <= factor));
    report.series.push_back(std::move(sr));
  }

  report.checks.push_back(make("identity_failures", "spectral trace and Frobenius identities",
                               static_cast<double>(report.identity_failures), 0.0, 0.0,
                               report.identity_failures == 0));
  report.checks.push_back(make("decomposition_residual", "type A decomposition identity",
                               report.max_decomposition_residual, 0.0, kDecompositionTolerance,
                               report.max_decomposition_residual <= kDecompositionTolerance));

  if (plan.json_path) {
    std::ofstream out(*plan.json_path);
    if (!out) throw std::runtime_error("cannot write '" + *plan.json_path + "'");
    out << report.to_json();
  }
  if (plan.csv_path) {
    std::ofstream out(*plan.csv_path);
    if (!out) throw std::runtime_error("cannot write '" + *plan.csv_path + "'");
    out << report.to_csv();
  }
  return report;
}

}  // namespace ples::harness
