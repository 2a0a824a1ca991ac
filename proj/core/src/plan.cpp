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

#include "ples/plan.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ples/stat_tests.hpp"
#include "toml.hpp"

namespace ples {
namespace {

std::string join(const std::string& path, std::string_view key) {
  return path.empty() ? std::string(key) : path + "." + std::string(key);
}

std::string index_path(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Reads keys from a TOML table and rejects any key it was never asked for.
class Reader {
 public:
  Reader(const toml::table& table, std::string path) : table_(table), path_(std::move(path)) {}

  const std::string& path() const noexcept { return path_; }
  std::string at(std::string_view key) const { return join(path_, key); }

  const toml::node* get(std::string_view key) {
    seen_.insert(std::string(key));
    return table_.get(key);
  }

  std::optional<double> number(std::string_view key) {
    const toml::node* node = get(key);
    if (!node) return std::nullopt;
    if (auto v = node->value<double>()) return *v;
    throw PlanError(at(key), "expected a number");
  }

  std::optional<std::int64_t> integer(std::string_view key) {
    const toml::node* node = get(key);
    if (!node) return std::nullopt;
    if (node->is_integer()) return node->as_integer()->get();
    throw PlanError(at(key), "expected an integer");
  }

  std::optional<std::string> string(std::string_view key) {
    const toml::node* node = get(key);
    if (!node) return std::nullopt;
    if (auto v = node->value<std::string>()) return *v;
    throw PlanError(at(key), "expected a string");
  }

  std::optional<bool> boolean(std::string_view key) {
    const toml::node* node = get(key);
    if (!node) return std::nullopt;
    if (node->is_boolean()) return node->as_boolean()->get();
    throw PlanError(at(key), "expected true or false");
  }

  std::optional<std::vector<double>> numbers(std::string_view key) {
    const toml::node* node = get(key);
    if (!node) return std::nullopt;
    const toml::array* arr = node->as_array();
    if (!arr) throw PlanError(at(key), "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < arr->size(); ++i) {
      auto v = (*arr)[i].value<double>();
      if (!v) throw PlanError(index_path(at(key), i), "expected a number");
      out.push_back(*v);
    }
    return out;
  }

  const toml::table* table(std::string_view key) {
    const toml::node* node = get(key);
    if (!node) return nullptr;
    if (const toml::table* t = node->as_table()) return t;
    throw PlanError(at(key), "expected a table");
  }

  void finish() const {
    for (const auto& [key, node] : table_) {
      if (!seen_.count(std::string(key.str())))
        throw PlanError(at(key.str()), "unknown key");
    }
  }

 private:
  const toml::table& table_;
  std::string path_;
  std::set<std::string> seen_;
};

std::size_t to_count(std::int64_t v, const std::string& path, std::int64_t min) {
  if (v < min) throw PlanError(path, "must be >= " + std::to_string(min));
  return static_cast<std::size_t>(v);
}

AtomDistribution parse_atoms(Reader& r) {
  auto values = r.numbers("values");
  auto probabilities = r.numbers("probabilities");
  if (!values || !probabilities)
    throw PlanError(r.path(), "atom table needs 'values' and 'probabilities'");
  if (values->size() != probabilities->size())
    throw PlanError(r.at("probabilities"), "length differs from 'values'");
  std::vector<AtomDistribution::Atom> atoms;
  for (std::size_t i = 0; i < values->size(); ++i) atoms.push_back({(*values)[i], (*probabilities)[i]});
  try {
    return AtomDistribution(std::move(atoms));
  } catch (const std::invalid_argument& e) {
    throw PlanError(r.path(), e.what());
  }
}

EnsembleSpec parse_ensemble(const toml::table& table, const std::string& path) {
  Reader r(table, path);
  const auto name = r.string("name");
  if (!name) throw PlanError(r.at("name"), "required");
  EnsembleSpec spec;
  if (*name == "wigner-custom") {
    const toml::table* diag = r.table("diagonal");
    const toml::table* off = r.table("off_diagonal");
    if (!diag) throw PlanError(r.at("diagonal"), "required for wigner-custom");
    if (!off) throw PlanError(r.at("off_diagonal"), "required for wigner-custom");
    Reader dr(*diag, r.at("diagonal"));
    Reader orr(*off, r.at("off_diagonal"));
    AtomDistribution d = parse_atoms(dr);
    AtomDistribution o = parse_atoms(orr);
    dr.finish();
    orr.finish();
    try {
      spec = EnsembleSpec::wigner_custom(std::move(d), std::move(o));
    } catch (const std::invalid_argument& e) {
      throw PlanError(path, e.what());
    }
  } else {
    try {
      spec = EnsembleSpec::parse(*name);
    } catch (const std::invalid_argument& e) {
      throw PlanError(r.at("name"), e.what());
    }
  }
  r.finish();
  return spec;
}

PlanStatistic parse_kind(const std::string& s, const std::string& path) {
  if (s == "linear") return PlanStatistic::kLinear;
  if (s == "type_a") return PlanStatistic::kTypeA;
  if (s == "type_b") return PlanStatistic::kTypeB;
  if (s == "process") return PlanStatistic::kProcess;
  if (s == "counting") return PlanStatistic::kCounting;
  if (s == "rigidity") return PlanStatistic::kRigidity;
  if (s == "middle_eigenvalue") return PlanStatistic::kMiddleEigenvalue;
  throw PlanError(path, "unknown kind '" + s +
                            "' (expected linear, type_a, type_b, process, counting, rigidity, "
                            "middle_eigenvalue)");
}

ValueField parse_value(const std::string& s, const std::string& path) {
  if (s == "raw") return ValueField::kRaw;
  if (s == "centered") return ValueField::kCentered;
  if (s == "normalized") return ValueField::kNormalized;
  throw PlanError(path, "unknown value '" + s + "' (expected raw, centered, normalized)");
}

VarianceReference parse_reference(const std::string& s, const std::string& path) {
  if (s == "limit") return VarianceReference::kLimit;
  if (s == "unit") return VarianceReference::kUnit;
  if (s == "log_counting") return VarianceReference::kLogCounting;
  throw PlanError(path, "unknown reference '" + s + "' (expected limit, unit, log_counting)");
}

Verdicts parse_verdicts(const toml::table& table, const std::string& path) {
  Reader r(table, path);
  Verdicts v;
  v.ks_normal_p_min = r.number("ks_normal_p_min");
  v.two_sample_p_min = r.number("two_sample_p_min");
  if (auto range = r.numbers("variance_ratio")) {
    if (range->size() != 2 || (*range)[0] > (*range)[1])
      throw PlanError(r.at("variance_ratio"), "expected [min, max]");
    v.variance_ratio = Range{(*range)[0], (*range)[1]};
  }
  if (auto ref = r.string("variance_reference"))
    v.variance_reference = parse_reference(*ref, r.at("variance_reference"));
  v.exact_within_se = r.number("exact_within_se");
  v.covariance_z_max = r.number("covariance_z_max");
  v.skewness_max = r.number("skewness_max");
  v.excess_kurtosis_max = r.number("excess_kurtosis_max");
  if (const toml::table* fb = r.table("fraction_at_most")) {
    Reader fr(*fb, r.at("fraction_at_most"));
    auto threshold = fr.number("threshold");
    auto fraction = fr.number("min_fraction");
    if (!threshold || !fraction)
      throw PlanError(fr.path(), "needs 'threshold' and 'min_fraction'");
    fr.finish();
    v.fraction_at_most = FractionBound{*threshold, *fraction};
  }
  v.scaled_variance_stability = r.number("scaled_variance_stability");
  r.finish();
  return v;
}

StatisticSpec parse_statistic(const toml::table& table, const std::string& path) {
  Reader r(table, path);
  StatisticSpec s;
  const auto kind = r.string("kind");
  if (!kind) throw PlanError(r.at("kind"), "required");
  s.kind = parse_kind(*kind, r.at("kind"));
  s.name = r.string("name").value_or(*kind);
  if (auto fn = r.string("fn")) {
    try {
      s.f = TestFunction::parse(*fn);
    } catch (const std::invalid_argument& e) {
      throw PlanError(r.at("fn"), e.what());
    }
    s.fn_spec = *fn;
  }
  if (const toml::node* u = r.get("u")) {
    if (auto num = u->value<double>()) {
      s.u = *num;
    } else if (auto str = u->value<std::string>()) {
      try {
        s.u = parse_threshold(*str);
      } catch (const std::invalid_argument& e) {
        throw PlanError(r.at("u"), e.what());
      }
    } else {
      throw PlanError(r.at("u"), "expected a number or \"quantile:t\"");
    }
  }
  s.k_fraction = r.number("k_fraction");
  if (auto k = r.integer("k")) s.k = to_count(*k, r.at("k"), 1);
  if (auto t = r.numbers("t")) s.t = *t;
  if (auto value = r.string("value")) s.value = parse_value(*value, r.at("value"));
  if (const toml::table* v = r.table("verdicts")) s.verdicts = parse_verdicts(*v, r.at("verdicts"));
  r.finish();
  return s;
}

bool is_gue(const EnsembleSpec& e) {
  return e.kind == EnsembleSpec::Kind::kGueDense || e.kind == EnsembleSpec::Kind::kGueTridiagonal;
}

bool needs_function(PlanStatistic kind) {
  return kind == PlanStatistic::kLinear || kind == PlanStatistic::kTypeA ||
         kind == PlanStatistic::kTypeB || kind == PlanStatistic::kProcess;
}

}  // namespace

bool Verdicts::any() const noexcept {
  return ks_normal_p_min || two_sample_p_min || variance_ratio || exact_within_se ||
         covariance_z_max || skewness_max || excess_kurtosis_max || fraction_at_most ||
         scaled_variance_stability;
}

std::size_t StatisticSpec::rank_for(std::size_t n) const {
  if (k) return *k;
  const double fraction = k_fraction.value_or(0.5);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n))));
}

void ExperimentPlan::validate() const {
  if (!(delta > 0.0 && delta < 2.0)) throw PlanError("delta", "must lie in (0, 2)");
  if (!(time_delta > 0.0 && time_delta < 0.5)) throw PlanError("time_delta", "must lie in (0, 0.5)");
  if (!statistics.empty() && n.empty()) throw PlanError("n", "at least one matrix size required");
  if (!statistics.empty() && samples == 0) throw PlanError("samples", "must be >= 1");
  if (exact_centering && !is_gue(ensemble))
    throw PlanError("exact_centering", "exact means are available for GUE only");

  const double lo = -2.0 + delta;
  const double hi = 2.0 - delta;
  std::set<std::string> names;
  for (std::size_t i = 0; i < statistics.size(); ++i) {
    const StatisticSpec& s = statistics[i];
    const std::string path = index_path("statistic", i);
    const Verdicts& v = s.verdicts;
    if (!names.insert(s.name).second) throw PlanError(join(path, "name"), "duplicate name '" + s.name + "'");
    if (needs_function(s.kind) && !s.f) throw PlanError(join(path, "fn"), "required for this kind");
    if (!needs_function(s.kind) && s.f) throw PlanError(join(path, "fn"), "not used by this kind");

    const bool threshold_kind = s.kind == PlanStatistic::kTypeA || s.kind == PlanStatistic::kCounting;
    if (threshold_kind && !s.u) throw PlanError(join(path, "u"), "required for this kind");
    if (s.u && !threshold_kind && s.kind != PlanStatistic::kLinear)
      throw PlanError(join(path, "u"), "not used by this kind");
    if (s.u && !(*s.u >= lo && *s.u <= hi)) {
      std::ostringstream msg;
      msg << "threshold " << *s.u << " outside the bulk [" << lo << ", " << hi << "]";
      throw PlanError(join(path, "u"), msg.str());
    }

    if (s.kind == PlanStatistic::kTypeB) {
      if (s.k && s.k_fraction) throw PlanError(join(path, "k"), "give either k or k_fraction");
      if (s.k_fraction && !(*s.k_fraction > 0.0 && *s.k_fraction <= 1.0))
        throw PlanError(join(path, "k_fraction"), "must lie in (0, 1]");
      for (std::size_t size : n)
        if (s.rank_for(size) > size)
          throw PlanError(join(path, "k"), "k exceeds n = " + std::to_string(size));
    } else if (s.k || s.k_fraction) {
      throw PlanError(join(path, "k"), "not used by this kind");
    }

    if (s.kind == PlanStatistic::kProcess) {
      if (s.t.size() < 2) throw PlanError(join(path, "t"), "process needs at least 2 times");
      for (std::size_t j = 0; j < s.t.size(); ++j)
        if (!(s.t[j] >= time_delta && s.t[j] <= 1.0 - time_delta)) {
          std::ostringstream msg;
          msg << "time " << s.t[j] << " outside [" << time_delta << ", " << 1.0 - time_delta << "]";
          throw PlanError(index_path(join(path, "t"), j), msg.str());
        }
    } else if (!s.t.empty()) {
      throw PlanError(join(path, "t"), "not used by this kind");
    }

    if (s.value == ValueField::kNormalized) {
      const bool normalizable = s.kind == PlanStatistic::kCounting ||
                                (s.kind == PlanStatistic::kTypeA && (*s.f)(*s.u) != 0.0);
      if (!normalizable)
        throw PlanError(join(path, "value"),
                        "normalized values exist only for counting and type_a with f(u) != 0");
      for (std::size_t size : n)
        if (size < 2) throw PlanError("n", "normalized statistics need n >= 2");
    }
    if (s.kind == PlanStatistic::kRigidity)
      for (std::size_t size : n)
        if (size < 16) throw PlanError("n", "rigidity needs n >= 16");

    const std::string vpath = join(path, "verdicts");
    if ((v.ks_normal_p_min || v.two_sample_p_min || v.skewness_max || v.excess_kurtosis_max) &&
        samples < stats::kMinSamples)
      throw PlanError("samples", "distributional verdicts need at least 100 samples");
    if (v.two_sample_p_min && !compare)
      throw PlanError(join(vpath, "two_sample_p_min"), "needs a [compare] ensemble");
    if (v.exact_within_se) {
      if (!is_gue(ensemble))
        throw PlanError(join(vpath, "exact_within_se"), "exact comparators exist for GUE only");
      if (s.kind != PlanStatistic::kLinear && s.kind != PlanStatistic::kTypeA &&
          s.kind != PlanStatistic::kCounting)
        throw PlanError(join(vpath, "exact_within_se"), "needs a linear, type_a or counting statistic");
      if (s.value != ValueField::kRaw)
        throw PlanError(join(vpath, "exact_within_se"), "compares raw values; set value = \"raw\"");
    }
    if (v.variance_ratio) {
      const std::string rpath = join(vpath, "variance_reference");
      switch (v.variance_reference) {
        case VarianceReference::kLimit:
          if (s.kind != PlanStatistic::kLinear && s.kind != PlanStatistic::kTypeA &&
              s.kind != PlanStatistic::kTypeB)
            throw PlanError(rpath, "limit variance applies to linear, type_a and type_b");
          if (s.value == ValueField::kNormalized)
            throw PlanError(rpath, "limit variance compares unnormalized values");
          break;
        case VarianceReference::kUnit:
          if (s.value != ValueField::kNormalized)
            throw PlanError(rpath, "unit reference needs value = \"normalized\"");
          break;
        case VarianceReference::kLogCounting:
          if (!(s.kind == PlanStatistic::kCounting ||
                (s.kind == PlanStatistic::kTypeA && (*s.f)(*s.u) != 0.0)))
            throw PlanError(rpath, "log_counting needs counting or type_a with f(u) != 0");
          if (s.value == ValueField::kNormalized)
            throw PlanError(rpath, "log_counting compares unnormalized values");
          break;
      }
    }
    if (v.covariance_z_max && s.kind != PlanStatistic::kProcess)
      throw PlanError(join(vpath, "covariance_z_max"), "needs a process statistic");
    if (v.scaled_variance_stability && n.size() < 2)
      throw PlanError(join(vpath, "scaled_variance_stability"), "needs at least two values of n");
    if (v.fraction_at_most && !(v.fraction_at_most->min_fraction >= 0.0 &&
                                v.fraction_at_most->min_fraction <= 1.0))
      throw PlanError(join(vpath, "fraction_at_most.min_fraction"), "must lie in [0, 1]");
  }
}

ExperimentPlan parse_plan(std::string_view toml_text, std::string_view source) {
  toml::table root;
  try {
    root = toml::parse(toml_text, source);
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " (line " << e.source().begin.line << ")";
    throw PlanError("", msg.str());
  }
  Reader r(root, "");
  ExperimentPlan plan;
  if (auto name = r.string("name")) plan.name = *name;
  if (auto seed = r.integer("seed")) {
    if (*seed < 0) throw PlanError("seed", "must be >= 0");
    plan.seed = static_cast<Seed>(*seed);
  }
  if (auto samples = r.integer("samples")) plan.samples = to_count(*samples, "samples", 1);
  if (const toml::node* n = r.get("n")) {
    if (n->is_integer()) {
      plan.n.push_back(to_count(n->as_integer()->get(), "n", 1));
    } else if (const toml::array* arr = n->as_array()) {
      for (std::size_t i = 0; i < arr->size(); ++i) {
        const toml::node& e = (*arr)[i];
        if (!e.is_integer()) throw PlanError(index_path("n", i), "expected an integer");
        plan.n.push_back(to_count(e.as_integer()->get(), index_path("n", i), 1));
      }
    } else {
      throw PlanError("n", "expected an integer or an array of integers");
    }
  }
  if (auto d = r.number("delta")) plan.delta = *d;
  if (auto d = r.number("time_delta")) plan.time_delta = *d;
  if (auto b = r.boolean("exact_centering")) plan.exact_centering = *b;
  if (const toml::table* e = r.table("ensemble")) plan.ensemble = parse_ensemble(*e, "ensemble");
  if (const toml::table* c = r.table("compare")) plan.compare = parse_ensemble(*c, "compare");
  if (const toml::node* stats = r.get("statistic")) {
    const toml::array* arr = stats->as_array();
    if (!arr) throw PlanError("statistic", "expected an array of tables ([[statistic]])");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const toml::table* t = (*arr)[i].as_table();
      if (!t) throw PlanError(index_path("statistic", i), "expected a table");
      plan.statistics.push_back(parse_statistic(*t, index_path("statistic", i)));
    }
  }
  if (const toml::table* out = r.table("output")) {
    Reader o(*out, "output");
    plan.json_path = o.string("json");
    plan.csv_path = o.string("csv");
    o.finish();
  }
  r.finish();
  plan.validate();
  return plan;
}

ExperimentPlan load_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PlanError("", "cannot open plan file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_plan(text.str(), path);
}

std::string_view to_string(PlanStatistic kind) {
  switch (kind) {
    case PlanStatistic::kLinear: return "linear";
    case PlanStatistic::kTypeA: return "type_a";
    case PlanStatistic::kTypeB: return "type_b";
    case PlanStatistic::kProcess: return "process";
    case PlanStatistic::kCounting: return "counting";
    case PlanStatistic::kRigidity: return "rigidity";
    case PlanStatistic::kMiddleEigenvalue: return "middle_eigenvalue";
  }
  return "unknown";
}

std::string_view to_string(ValueField field) {
  switch (field) {
    case ValueField::kRaw: return "raw";
    case ValueField::kCentered: return "centered";
    case ValueField::kNormalized: return "normalized";
  }
  return "unknown";
}

std::string_view to_string(VarianceReference reference) {
  switch (reference) {
    case VarianceReference::kLimit: return "limit";
    case VarianceReference::kUnit: return "unit";
    case VarianceReference::kLogCounting: return "log_counting";
  }
  return "unknown";
}

}  // namespace ples
