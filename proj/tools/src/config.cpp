// Copyright 2026 The advlearn Authors
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

#include "advlearn/bench/config.hpp"

#include "advlearn/instances.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace advlearn::bench {
namespace {

// Shortest text that reads back as x.
std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Node& at, const std::string& field,
                         const std::string& problem) const {
    const int line = at.IsDefined() ? at.Mark().line + 1 : 0;
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + field +
                      ": " + problem);
  }

  void only_keys(const YAML::Node& map, const std::string& field,
                 const std::set<std::string>& allowed) const {
    if (!map.IsMap()) fail(map, field, "expected a mapping");
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) {
        fail(kv.first, field.empty() ? key : field + "." + key, "unknown key");
      }
    }
  }

  double real(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a number");
    try {
      const double v = n.as<double>();
      if (!std::isfinite(v)) fail(n, field, "must be finite");
      return v;
    } catch (const YAML::BadConversion&) {
      fail(n, field, "expected a number, got '" + n.Scalar() + "'");
    }
  }

  std::uint64_t count(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a non-negative integer");
    try {
      const long long v = n.as<long long>();
      if (v < 0) fail(n, field, "must be non-negative");
      return static_cast<std::uint64_t>(v);
    } catch (const YAML::BadConversion&) {
      fail(n, field, "expected a non-negative integer, got '" + n.Scalar() + "'");
    }
  }

  bool boolean(const YAML::Node& n, const std::string& field) const {
    try {
      return n.as<bool>();
    } catch (const YAML::BadConversion&) {
      fail(n, field, "expected true or false");
    }
  }

  std::string text(const YAML::Node& n, const std::string& field) const {
    if (!n.IsScalar()) fail(n, field, "expected a string");
    return n.Scalar();
  }

  template <typename F>
  auto list(const YAML::Node& n, const std::string& field, F&& item) const {
    using T = decltype(item(n, field));
    std::vector<T> out;
    if (n.IsScalar()) {
      out.push_back(item(n, field));
      return out;
    }
    if (!n.IsSequence() || n.size() == 0) fail(n, field, "expected a non-empty list");
    for (std::size_t i = 0; i < n.size(); ++i) {
      out.push_back(item(n[i], field + "[" + std::to_string(i) + "]"));
    }
    return out;
  }

  std::vector<double> reals(const YAML::Node& n, const std::string& field) const {
    return list(n, field, [this](const YAML::Node& x, const std::string& f) {
      return real(x, f);
    });
  }

  const std::string& source() const { return source_; }

 private:
  std::string source_;
};

void check_each(const Parser& ps, const YAML::Node& node, const std::string& field,
                const std::vector<double>& values, bool (*ok)(double),
                const std::string& rule) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!ok(values[i])) {
      const YAML::Node at = node.IsSequence() ? node[i] : node;
      ps.fail(at, field + "[" + std::to_string(i) + "]",
              "must " + rule + " (got " + format_double(values[i]) + ")");
    }
  }
}

AdviceModel parse_advice(const Parser& ps, const YAML::Node& n,
                         const std::string& field) {
  if (n.IsScalar()) {
    const std::string name = n.Scalar();
    if (name == "exact") return AdviceModel{};
    if (name == "corner") {
      AdviceModel m;
      m.kind = AdviceModel::Kind::kCorner;
      return m;
    }
    ps.fail(n, field, "model '" + name + "' needs parameters");
  }
  if (!n["model"]) ps.fail(n, field + ".model", "missing");
  const std::string model = ps.text(n["model"], field + ".model");
  AdviceModel m;
  auto need = [&](const char* key) {
    if (!n[key]) ps.fail(n, field + "." + key, "missing for model " + model);
    return n[key];
  };
  if (model == "exact") {
    ps.only_keys(n, field, {"model"});
  } else if (model == "sparse") {
    ps.only_keys(n, field, {"model", "t", "magnitude"});
    m.kind = AdviceModel::Kind::kSparse;
    m.t = ps.count(need("t"), field + ".t");
    m.magnitude = ps.real(need("magnitude"), field + ".magnitude");
    if (!(m.magnitude >= 0.0 && m.magnitude <= 1.0)) {
      ps.fail(n["magnitude"], field + ".magnitude", "must lie in [0, 1]");
    }
  } else if (model == "dense") {
    ps.only_keys(n, field, {"model", "l1_budget"});
    m.kind = AdviceModel::Kind::kDense;
    m.l1_budget = ps.real(need("l1_budget"), field + ".l1_budget");
    if (!(m.l1_budget >= 0.0)) {
      ps.fail(n["l1_budget"], field + ".l1_budget", "must be >= 0");
    }
  } else if (model == "adversarial") {
    ps.only_keys(n, field, {"model", "family", "subset_size", "lambda"});
    const std::string family = ps.text(need("family"), field + ".family");
    if (family == "corner") {
      m.kind = AdviceModel::Kind::kCorner;
    } else if (family == "unbalanced") {
      m.kind = AdviceModel::Kind::kUnbalanced;
      m.subset_size = ps.count(need("subset_size"), field + ".subset_size");
    } else if (family == "balanced") {
      m.kind = AdviceModel::Kind::kBalanced;
      m.lambda = ps.real(need("lambda"), field + ".lambda");
      if (!(m.lambda > 0.0)) ps.fail(n["lambda"], field + ".lambda", "must be > 0");
    } else {
      ps.fail(n["family"], field + ".family",
              "unknown family '" + family + "' (corner, unbalanced, balanced)");
    }
  } else if (model == "explicit") {
    ps.only_keys(n, field, {"model", "p", "q"});
    m.kind = AdviceModel::Kind::kExplicit;
    m.p = ps.reals(need("p"), field + ".p");
    m.q = ps.reals(need("q"), field + ".q");
    if (m.p.size() != m.q.size()) {
      ps.fail(n["q"], field + ".q", "length differs from p");
    }
    auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    check_each(ps, n["p"], field + ".p", m.p, in_unit, "lie in [0, 1]");
    check_each(ps, n["q"], field + ".q", m.q, in_unit, "lie in [0, 1]");
  } else {
    ps.fail(n["model"], field + ".model",
            "unknown model '" + model +
                "' (exact, sparse, dense, adversarial, explicit)");
  }
  return m;
}

void validate_grid(const Parser& ps, const YAML::Node& root, SweepSpec& spec) {
  for (std::size_t a = 0; a < spec.advice.size(); ++a) {
    const AdviceModel& m = spec.advice[a];
    const std::string field = "advice[" + std::to_string(a) + "]";
    const YAML::Node at = root["advice"] ? root["advice"] : root;
    for (std::size_t d : spec.dims) {
      if (m.kind == AdviceModel::Kind::kExplicit && m.p.size() != d) {
        ps.fail(at, field + ".p", "length " + std::to_string(m.p.size()) +
                                      " does not match d = " + std::to_string(d));
      }
      if (m.kind == AdviceModel::Kind::kSparse && m.t > d) {
        ps.fail(at, field + ".t", "exceeds d = " + std::to_string(d));
      }
      if (m.kind == AdviceModel::Kind::kUnbalanced && m.subset_size > d) {
        ps.fail(at, field + ".subset_size", "exceeds d = " + std::to_string(d));
      }
      if (m.kind == AdviceModel::Kind::kUnbalanced && d < 10) {
        ps.fail(at, field, "the unbalanced family needs d >= 10");
      }
      for (double eps : spec.epsilons) {
        if (m.kind == AdviceModel::Kind::kUnbalanced && eps > 1.0) {
          ps.fail(at, field, "the unbalanced family needs epsilon <= 1");
        }
        if (m.kind == AdviceModel::Kind::kBalanced) {
          if (m.lambda < 100.0 * eps * (1.0 - 1e-12)) {
            ps.fail(at, field + ".lambda", "must be >= 100 epsilon");
          }
          const std::size_t k = balanced_subset_size(eps, m.lambda);
          if (k > d) {
            ps.fail(at, field + ".lambda",
                    "needs k = ceil(lambda^2/epsilon^2) = " + std::to_string(k) +
                        " coordinates but d = " + std::to_string(d));
          }
        }
      }
    }
  }
  // Every grid point must yield a valid schedule.
  for (std::size_t d : spec.dims) {
    for (double eps : spec.epsilons) {
      for (double eta : spec.etas) {
        for (double tau : spec.taus) {
          for (double delta : spec.deltas) {
            PipelineConfig cfg;
            cfg.epsilon = eps;
            cfg.delta = delta;
            cfg.eta = eta;
            cfg.tau = tau;
            cfg.advice = MeanVector::constant(d, 0.5);
            cfg.tester_c = spec.tester_c;
            cfg.threshold_factor = spec.threshold_factor;
            cfg.lasso_constant = spec.lasso_constant;
            cfg.baseline_constant = spec.baseline_constant;
            cfg.stage1_multiplier = spec.stage1_multiplier;
            try {
              make_schedule(d, cfg);
            } catch (const std::invalid_argument& e) {
              ps.fail(root["sweep"], "sweep",
                      "grid point (d = " + std::to_string(d) +
                          ", epsilon = " + format_double(eps) +
                          ", eta = " + format_double(eta) +
                          ", tau = " + format_double(tau) + "): " + e.what());
            }
          }
        }
      }
    }
  }
}

SweepSpec parse_root(const Parser& ps, const YAML::Node& root) {
  if (!root.IsMap()) ps.fail(root, "<root>", "expected a mapping");
  ps.only_keys(root, "", {"schema_version", "seed", "trials", "sweep", "truth",
                          "advice", "constants", "options"});
  SweepSpec spec;
  spec.source = ps.source();
  if (root["schema_version"]) {
    const auto v = ps.count(root["schema_version"], "schema_version");
    if (v != kConfigSchemaVersion) {
      ps.fail(root["schema_version"], "schema_version",
              "unsupported version " + std::to_string(v));
    }
  }
  if (root["seed"]) spec.seed = ps.count(root["seed"], "seed");
  if (root["trials"]) spec.trials = ps.count(root["trials"], "trials");
  if (spec.trials < 1) ps.fail(root["trials"], "trials", "must be >= 1");

  const YAML::Node sweep = root["sweep"];
  if (!sweep) ps.fail(root, "sweep", "missing");
  ps.only_keys(sweep, "sweep", {"dims", "epsilons", "etas", "taus", "deltas"});
  for (const char* key : {"dims", "epsilons", "etas", "taus"}) {
    if (!sweep[key]) ps.fail(sweep, std::string("sweep.") + key, "missing");
  }
  spec.dims = ps.list(sweep["dims"], "sweep.dims",
                      [&](const YAML::Node& n, const std::string& f) {
                        const auto d = ps.count(n, f);
                        if (d < 2) ps.fail(n, f, "must be >= 2");
                        return static_cast<std::size_t>(d);
                      });
  spec.epsilons = ps.reals(sweep["epsilons"], "sweep.epsilons");
  check_each(ps, sweep["epsilons"], "sweep.epsilons", spec.epsilons,
             [](double x) { return x > 0.0; }, "be > 0");
  spec.etas = ps.reals(sweep["etas"], "sweep.etas");
  check_each(ps, sweep["etas"], "sweep.etas", spec.etas,
             [](double x) { return x >= 0.0 && x <= 0.25; }, "lie in [0, 1/4]");
  spec.taus = ps.reals(sweep["taus"], "sweep.taus");
  check_each(ps, sweep["taus"], "sweep.taus", spec.taus,
             [](double x) { return x > 0.0 && x <= 0.5; }, "lie in (0, 1/2]");
  if (sweep["deltas"]) {
    spec.deltas = ps.reals(sweep["deltas"], "sweep.deltas");
    check_each(ps, sweep["deltas"], "sweep.deltas", spec.deltas,
               [](double x) { return x > 0.0 && x < 1.0; }, "lie in (0, 1)");
  }

  if (const YAML::Node truth = root["truth"]) {
    ps.only_keys(truth, "truth", {"model", "value"});
    const std::string model =
        truth["model"] ? ps.text(truth["model"], "truth.model") : "uniform";
    if (model == "uniform") {
      spec.truth.kind = TruthModel::Kind::kUniform;
    } else if (model == "constant") {
      spec.truth.kind = TruthModel::Kind::kConstant;
      if (!truth["value"]) ps.fail(truth, "truth.value", "missing");
      spec.truth.value = ps.real(truth["value"], "truth.value");
      if (!(spec.truth.value >= 0.0 && spec.truth.value <= 1.0)) {
        ps.fail(truth["value"], "truth.value", "must lie in [0, 1]");
      }
    } else {
      ps.fail(truth["model"], "truth.model",
              "unknown model '" + model + "' (uniform, constant)");
    }
  }

  if (const YAML::Node advice = root["advice"]) {
    spec.advice = ps.list(advice, "advice",
                          [&](const YAML::Node& n, const std::string& f) {
                            return parse_advice(ps, n, f);
                          });
  }

  if (const YAML::Node c = root["constants"]) {
    ps.only_keys(c, "constants",
                 {"tester_c", "threshold_factor", "lasso_constant",
                  "baseline_constant", "stage1_multiplier"});
    auto positive = [&](const char* key, double& slot) {
      if (!c[key]) return;
      slot = ps.real(c[key], std::string("constants.") + key);
      if (!(slot > 0.0)) ps.fail(c[key], std::string("constants.") + key, "must be > 0");
    };
    positive("tester_c", spec.tester_c);
    positive("threshold_factor", spec.threshold_factor);
    positive("lasso_constant", spec.lasso_constant);
    positive("baseline_constant", spec.baseline_constant);
    positive("stage1_multiplier", spec.stage1_multiplier);
    if (!(spec.threshold_factor > 2.0 && spec.threshold_factor < 3.0)) {
      ps.fail(c["threshold_factor"], "constants.threshold_factor",
              "must lie in (2, 3)");
    }
    if (spec.stage1_multiplier < 1.0) {
      ps.fail(c["stage1_multiplier"], "constants.stage1_multiplier",
              "must be >= 1");
    }
  }

  if (const YAML::Node o = root["options"]) {
    ps.only_keys(o, "options", {"box_clamp", "reuse_stage1", "sample_mode"});
    if (o["box_clamp"]) spec.box_clamp = ps.boolean(o["box_clamp"], "options.box_clamp");
    if (o["reuse_stage1"]) {
      spec.reuse_stage1 = ps.boolean(o["reuse_stage1"], "options.reuse_stage1");
    }
    if (o["sample_mode"]) {
      const std::string mode = ps.text(o["sample_mode"], "options.sample_mode");
      if (mode == "counts") {
        spec.sample_mode = SampleMode::kCounts;
      } else if (mode == "bitpacked") {
        spec.sample_mode = SampleMode::kBitPacked;
      } else {
        ps.fail(o["sample_mode"], "options.sample_mode",
                "unknown mode '" + mode + "' (counts, bitpacked)");
      }
    }
  }

  validate_grid(ps, root, spec);
  return spec;
}

const char* mode_name(SampleMode m) {
  return m == SampleMode::kCounts ? "counts" : "bitpacked";
}

}  // namespace

std::string AdviceModel::label() const {
  switch (kind) {
    case Kind::kExact:
      return "exact";
    case Kind::kSparse:
      return "sparse(t=" + std::to_string(t) + ",magnitude=" +
             format_double(magnitude) + ")";
    case Kind::kDense:
      return "dense(l1_budget=" + format_double(l1_budget) + ")";
    case Kind::kCorner:
      return "adversarial(corner)";
    case Kind::kUnbalanced:
      return "adversarial(unbalanced,subset_size=" + std::to_string(subset_size) + ")";
    case Kind::kBalanced:
      return "adversarial(balanced,lambda=" + format_double(lambda) + ")";
    case Kind::kExplicit:
      return "explicit";
  }
  return "unknown";
}

std::size_t SweepSpec::grid_size() const {
  return dims.size() * epsilons.size() * etas.size() * taus.size() *
         deltas.size() * advice.size();
}

SweepSpec parse_config(const std::string& text, const std::string& source) {
  const Parser ps(source);
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) +
                      ": <syntax>: " + e.msg);
  }
  try {
    return parse_root(ps, root);
  } catch (const YAML::Exception& e) {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " +
                      e.msg);
  }
}

SweepSpec load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ":0: <file>: cannot open");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

void apply_overrides(SweepSpec& spec, std::optional<std::uint64_t> seed,
                     std::optional<std::size_t> trials) {
  if (seed) spec.seed = *seed;
  if (trials) {
    if (*trials < 1) throw ConfigError("--trials:0: trials: must be >= 1");
    spec.trials = *trials;
  }
}

std::string to_yaml(const SweepSpec& spec) {
  YAML::Emitter out;
  out.SetDoublePrecision(17);
  out << YAML::BeginMap;
  out << YAML::Key << "schema_version" << YAML::Value << kConfigSchemaVersion;
  out << YAML::Key << "seed" << YAML::Value << spec.seed;
  out << YAML::Key << "trials" << YAML::Value << spec.trials;
  out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "dims" << YAML::Value << YAML::Flow << spec.dims;
  out << YAML::Key << "epsilons" << YAML::Value << YAML::Flow << spec.epsilons;
  out << YAML::Key << "etas" << YAML::Value << YAML::Flow << spec.etas;
  out << YAML::Key << "taus" << YAML::Value << YAML::Flow << spec.taus;
  out << YAML::Key << "deltas" << YAML::Value << YAML::Flow << spec.deltas;
  out << YAML::EndMap;
  out << YAML::Key << "truth" << YAML::Value << YAML::BeginMap;
  if (spec.truth.kind == TruthModel::Kind::kUniform) {
    out << YAML::Key << "model" << YAML::Value << "uniform";
  } else {
    out << YAML::Key << "model" << YAML::Value << "constant";
    out << YAML::Key << "value" << YAML::Value << spec.truth.value;
  }
  out << YAML::EndMap;
  out << YAML::Key << "advice" << YAML::Value << YAML::BeginSeq;
  for (const AdviceModel& m : spec.advice) {
    out << YAML::BeginMap;
    using K = AdviceModel::Kind;
    switch (m.kind) {
      case K::kExact:
        out << YAML::Key << "model" << YAML::Value << "exact";
        break;
      case K::kSparse:
        out << YAML::Key << "model" << YAML::Value << "sparse";
        out << YAML::Key << "t" << YAML::Value << m.t;
        out << YAML::Key << "magnitude" << YAML::Value << m.magnitude;
        break;
      case K::kDense:
        out << YAML::Key << "model" << YAML::Value << "dense";
        out << YAML::Key << "l1_budget" << YAML::Value << m.l1_budget;
        break;
      case K::kCorner:
        out << YAML::Key << "model" << YAML::Value << "adversarial";
        out << YAML::Key << "family" << YAML::Value << "corner";
        break;
      case K::kUnbalanced:
        out << YAML::Key << "model" << YAML::Value << "adversarial";
        out << YAML::Key << "family" << YAML::Value << "unbalanced";
        out << YAML::Key << "subset_size" << YAML::Value << m.subset_size;
        break;
      case K::kBalanced:
        out << YAML::Key << "model" << YAML::Value << "adversarial";
        out << YAML::Key << "family" << YAML::Value << "balanced";
        out << YAML::Key << "lambda" << YAML::Value << m.lambda;
        break;
      case K::kExplicit:
        out << YAML::Key << "model" << YAML::Value << "explicit";
        out << YAML::Key << "p" << YAML::Value << YAML::Flow << m.p;
        out << YAML::Key << "q" << YAML::Value << YAML::Flow << m.q;
        break;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq;
  out << YAML::Key << "constants" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tester_c" << YAML::Value << spec.tester_c;
  out << YAML::Key << "threshold_factor" << YAML::Value << spec.threshold_factor;
  out << YAML::Key << "lasso_constant" << YAML::Value << spec.lasso_constant;
  out << YAML::Key << "baseline_constant" << YAML::Value << spec.baseline_constant;
  out << YAML::Key << "stage1_multiplier" << YAML::Value << spec.stage1_multiplier;
  out << YAML::EndMap;
  out << YAML::Key << "options" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "box_clamp" << YAML::Value << spec.box_clamp;
  out << YAML::Key << "reuse_stage1" << YAML::Value << spec.reuse_stage1;
  out << YAML::Key << "sample_mode" << YAML::Value << mode_name(spec.sample_mode);
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

}  // namespace advlearn::bench
