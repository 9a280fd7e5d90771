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

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "advlearn/bench/calibrate.hpp"
#include "advlearn/bench/config.hpp"
#include "advlearn/bench/result_io.hpp"
#include "advlearn/bench/sweep.hpp"
#include "advlearn/bench/verify.hpp"
#include "advlearn/instances.hpp"
#include "advlearn/rng.hpp"

namespace {

using namespace advlearn;
using namespace advlearn::bench;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitAudit = 2;

struct Common {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string out;
  int workers = default_workers();
  std::string format = "csv";
};

void add_common(CLI::App* cmd, Common& c, bool with_trials = true) {
  cmd->add_option("--seed", c.seed, "Master seed");
  if (with_trials) cmd->add_option("--trials", c.trials, "Trials per grid cell");
  cmd->add_option("--out", c.out, "Output file (default: stdout)");
  cmd->add_option("--workers", c.workers,
                  "Worker threads (default: $ADVICE_LEARN_WORKERS or 1)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
}

// Opens --out, or stdout when empty.
std::ostream& open_out(const std::string& path, std::unique_ptr<std::ofstream>& file) {
  if (path.empty()) return std::cout;
  file = std::make_unique<std::ofstream>(path);
  if (!*file) throw std::runtime_error("cannot open " + path + " for writing");
  return *file;
}

int cmd_learn(const std::string& config_path, const Common& c) {
  SweepSpec spec;
  try {
    spec = load_config(config_path);
    apply_overrides(spec, c.seed, c.trials);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const std::vector<ResultRow> rows = run_sweep(spec, c.workers);
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = open_out(c.out, file);
  if (c.format == "csv") {
    write_csv(out, rows);
  } else {
    write_jsonl(out, rows);
  }
  std::size_t failed = 0;
  for (const ResultRow& r : rows) {
    for (const std::string& problem : audit(r)) {
      std::cerr << "audit: grid " << r.grid_index << " trial " << r.trial << ": "
                << problem << '\n';
      ++failed;
    }
  }
  std::cerr << "{\"schema_version\":" << kResultSchemaVersion
            << ",\"rows\":" << rows.size() << ",\"audit_failures\":" << failed
            << ",\"result_hash\":\"" << hash_hex(result_hash(rows)) << "\"}\n";
  return failed == 0 ? kExitOk : kExitAudit;
}

struct CalibrateArgs {
  std::size_t d = 256;
  double epsilon = 0.2;
  double threshold_factor = kDefaultThresholdFactor;
  std::vector<double> c_grid;
};

int cmd_calibrate(const CalibrateArgs& a, const Common& c) {
  const std::size_t trials = c.trials.value_or(400);
  if (trials < 100) {
    std::cerr << "error: calibrate-tester: --trials must be >= 100\n";
    return kExitUsage;
  }
  const CalibrationReport report = calibrate_tester(
      a.d, a.epsilon, trials, c.seed.value_or(1),
      a.c_grid.empty() ? default_c_grid() : a.c_grid, a.threshold_factor, c.workers);
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = open_out(c.out, file);
  if (c.format == "csv") {
    write_calibration_csv(out, report);
  } else {
    for (const CalibrationRow& row : report.rows) {
      out << "{\"schema_version\":" << kResultSchemaVersion << ",\"c\":" << row.c
          << ",\"accept\":[" << row.accept[0] << ',' << row.accept[1] << ','
          << row.accept[2] << ',' << row.accept[3]
          << "],\"false_reject\":" << row.false_reject()
          << ",\"false_accept\":" << row.false_accept() << "}\n";
    }
  }
  if (report.recommended) {
    std::cerr << "recommended c = " << *report.recommended << '\n';
  } else {
    std::cerr << "no c in the grid keeps both error rates <= 1/4\n";
  }
  return kExitOk;
}

int cmd_verify(const std::string& suite, const Common& c) {
  if (!is_suite(suite)) {
    std::cerr << "error: unknown suite '" << suite << "'; expected one of:";
    for (const std::string& name : suite_names()) std::cerr << ' ' << name;
    std::cerr << '\n';
    return kExitUsage;
  }
  VerifyOptions options;
  options.workers = c.workers;
  if (c.seed) options.seed = *c.seed;
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = open_out(c.out, file);
  bool all = true;
  for (int id : suite_criteria(suite)) {
    const CriterionResult r = run_criterion(id, options);
    std::cerr << summary_line(r) << '\n';
    out << summary_json(r) << '\n';
    out.flush();
    all = all && r.passed;
  }
  return all ? kExitOk : kExitAudit;
}

struct GenArgs {
  std::string family = "balanced";
  std::size_t d = 0;
  double epsilon = 0.01;
  double lambda = 1.0;
  std::size_t subset_size = 0;
  std::size_t count = 4;
  std::size_t min_symdiff = 0;
  std::size_t max_attempts = 10000;
  double eta = 0.1;
  double tau = 0.25;
};

int cmd_gen_instances(const GenArgs& a, const Common& c) {
  const std::uint64_t seed = c.seed.value_or(1);
  SweepSpec spec;
  spec.seed = seed;
  spec.trials = c.trials.value_or(1);
  spec.epsilons = {a.epsilon};
  spec.etas = {a.eta};
  spec.taus = {a.tau};
  spec.advice.clear();
  try {
    std::size_t k = a.subset_size;
    std::size_t d = a.d;
    if (a.family == "balanced") {
      k = balanced_subset_size(a.epsilon, a.lambda);
      if (d == 0) d = 2 * k;
    }
    if (d == 0) throw std::invalid_argument("--d is required");
    const std::size_t symdiff = a.min_symdiff ? a.min_symdiff : k / 4;
    const SubsetCode code =
        gv_code(d, k, symdiff, a.count, derive_seed(seed, 0), a.max_attempts);
    for (const Subset& s : code.sets) {
      AdviceModel m;
      m.kind = AdviceModel::Kind::kExplicit;
      if (a.family == "balanced") {
        const BalancedInstance inst = balanced_instance(d, a.epsilon, a.lambda, s);
        m.p = inst.p.vector();
        m.q = inst.q.vector();
      } else {
        const InstancePair pair = unbalanced_instance(d, a.epsilon, s);
        m.p = pair.p.vector();
        m.q = pair.q.vector();
      }
      spec.advice.push_back(std::move(m));
    }
    spec.dims = {d};
  } catch (const CodeBudgetExhausted& e) {
    std::cerr << "error: " << e.what() << "; lower --count below "
              << e.achieved() + 1 << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: gen-instances: " << e.what() << '\n';
    return kExitUsage;
  }
  std::unique_ptr<std::ofstream> file;
  std::ostream& out = open_out(c.out, file);
  out << to_yaml(spec);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learning product distributions with advice: experiments and checks"};
  app.require_subcommand(1);

  Common learn_common;
  std::string config_path;
  auto* learn = app.add_subcommand("learn", "Run a configured sweep of the learner");
  learn->add_option("--config", config_path, "Experiment config (YAML)")->required();
  add_common(learn, learn_common);

  Common cal_common;
  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand(
      "calibrate-tester", "Single-shot tester error rates over a grid of c");
  calibrate->add_option("--d", cal.d, "Dimension");
  calibrate->add_option("--epsilon", cal.epsilon, "Tester epsilon");
  calibrate->add_option("--threshold-factor", cal.threshold_factor,
                        "Acceptance threshold factor in (2, 3)");
  calibrate->add_option("--c-grid", cal.c_grid, "Values of c (default: 2^{j/4})");
  add_common(calibrate, cal_common);

  Common verify_common;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run an acceptance suite");
  verify->add_option("suite", suite,
                     "metrics, tester, approxl1, lasso, pipeline-small, "
                     "pipeline-large or all")
      ->required();
  add_common(verify, verify_common, false);

  Common gen_common;
  GenArgs gen;
  auto* gen_cmd = app.add_subcommand(
      "gen-instances", "Emit a config with adversarial instance pairs");
  gen_cmd->add_option("--family", gen.family, "balanced or unbalanced")
      ->check(CLI::IsMember({"balanced", "unbalanced"}));
  gen_cmd->add_option("--d", gen.d, "Dimension (balanced default: 2k)");
  gen_cmd->add_option("--epsilon", gen.epsilon, "Instance epsilon");
  gen_cmd->add_option("--lambda", gen.lambda, "Balanced radius");
  gen_cmd->add_option("--subset-size", gen.subset_size, "Unbalanced |S|");
  gen_cmd->add_option("--count", gen.count, "Number of instances M");
  gen_cmd->add_option("--min-symdiff", gen.min_symdiff,
                      "Minimum pairwise symmetric difference (default: k/4)");
  gen_cmd->add_option("--max-attempts", gen.max_attempts,
                      "Consecutive rejections before giving up");
  gen_cmd->add_option("--eta", gen.eta, "eta of the emitted sweep");
  gen_cmd->add_option("--tau", gen.tau, "tau of the emitted sweep");
  add_common(gen_cmd, gen_common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*learn) return cmd_learn(config_path, learn_common);
    if (*calibrate) return cmd_calibrate(cal, cal_common);
    if (*verify) return cmd_verify(suite, verify_common);
    if (*gen_cmd) return cmd_gen_instances(gen, gen_common);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitAudit;
  }
  return kExitUsage;
}
