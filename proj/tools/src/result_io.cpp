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

#include "advlearn/bench/result_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace advlearn::bench {
namespace {

using nlohmann::json;

std::string fmt_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_bool(bool b) { return b ? "true" : "false"; }

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string join_doubles(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += fmt_double(v[i]);
  }
  return out;
}

std::vector<std::string> csv_fields(const ResultRow& r) {
  return {std::to_string(r.schema_version),
          quote(r.revision),
          std::to_string(r.grid_index),
          std::to_string(r.trial),
          std::to_string(r.seed),
          std::to_string(r.d),
          fmt_double(r.epsilon),
          fmt_double(r.delta),
          fmt_double(r.eta),
          fmt_double(r.tau),
          quote(r.advice_model),
          fmt_double(r.tester_c),
          fmt_double(r.threshold_factor),
          fmt_double(r.lasso_constant),
          fmt_double(r.baseline_constant),
          fmt_double(r.stage1_multiplier),
          fmt_bool(r.box_clamp),
          fmt_bool(r.reuse_stage1),
          std::to_string(r.k),
          fmt_double(r.alpha),
          fmt_double(r.zeta),
          fmt_double(r.delta_prime),
          std::to_string(r.levels),
          std::to_string(r.repetitions),
          r.approx_status,
          r.branch,
          r.lambda ? fmt_double(*r.lambda) : "",
          std::to_string(r.samples_stage1),
          std::to_string(r.samples_stage2),
          std::to_string(r.samples_total),
          std::to_string(r.baseline_samples),
          fmt_bool(r.audit_ok),
          fmt_double(r.true_l1),
          fmt_double(r.true_l2),
          fmt_double(r.realized_l2),
          r.realized_tv ? fmt_double(*r.realized_tv) : "",
          join_doubles(r.estimate),
          fmt_double(r.wall_ms)};
}

// Splits one CSV record; handles quoted fields with doubled quotes.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (ch == '"') {
        quoted = false;
      } else {
        out.back() += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.emplace_back();
    } else {
      out.back() += ch;
    }
  }
  if (quoted) throw std::runtime_error("csv: unterminated quote");
  return out;
}

double parse_double(const std::string& s, const char* field) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || *end != '\0') {
    throw std::runtime_error(std::string("csv: bad number in ") + field + ": '" +
                             s + "'");
  }
  return v;
}

std::uint64_t parse_count(const std::string& s, const char* field) {
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
  if (s.empty() || *end != '\0') {
    throw std::runtime_error(std::string("csv: bad count in ") + field + ": '" +
                             s + "'");
  }
  return v;
}

bool parse_bool(const std::string& s, const char* field) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::runtime_error(std::string("csv: bad boolean in ") + field);
}

std::optional<double> parse_optional(const std::string& s, const char* field) {
  if (s.empty()) return std::nullopt;
  return parse_double(s, field);
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  if (s.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t stop = s.find(';', start);
    out.push_back(parse_double(s.substr(start, stop - start), "estimate"));
    if (stop == std::string::npos) break;
    start = stop + 1;
  }
  return out;
}

ResultRow row_from_fields(const std::vector<std::string>& f) {
  if (f.size() != csv_header().size()) {
    throw std::runtime_error("csv: expected " + std::to_string(csv_header().size()) +
                             " fields, got " + std::to_string(f.size()));
  }
  ResultRow r;
  std::size_t i = 0;
  r.schema_version = static_cast<int>(parse_count(f[i++], "schema_version"));
  r.revision = f[i++];
  r.grid_index = parse_count(f[i++], "grid_index");
  r.trial = parse_count(f[i++], "trial");
  r.seed = parse_count(f[i++], "seed");
  r.d = parse_count(f[i++], "d");
  r.epsilon = parse_double(f[i++], "epsilon");
  r.delta = parse_double(f[i++], "delta");
  r.eta = parse_double(f[i++], "eta");
  r.tau = parse_double(f[i++], "tau");
  r.advice_model = f[i++];
  r.tester_c = parse_double(f[i++], "tester_c");
  r.threshold_factor = parse_double(f[i++], "threshold_factor");
  r.lasso_constant = parse_double(f[i++], "lasso_constant");
  r.baseline_constant = parse_double(f[i++], "baseline_constant");
  r.stage1_multiplier = parse_double(f[i++], "stage1_multiplier");
  r.box_clamp = parse_bool(f[i++], "box_clamp");
  r.reuse_stage1 = parse_bool(f[i++], "reuse_stage1");
  r.k = parse_count(f[i++], "k");
  r.alpha = parse_double(f[i++], "alpha");
  r.zeta = parse_double(f[i++], "zeta");
  r.delta_prime = parse_double(f[i++], "delta_prime");
  r.levels = parse_count(f[i++], "levels");
  r.repetitions = parse_count(f[i++], "repetitions");
  r.approx_status = f[i++];
  r.branch = f[i++];
  r.lambda = parse_optional(f[i++], "lambda");
  r.samples_stage1 = parse_count(f[i++], "samples_stage1");
  r.samples_stage2 = parse_count(f[i++], "samples_stage2");
  r.samples_total = parse_count(f[i++], "samples_total");
  r.baseline_samples = parse_count(f[i++], "baseline_samples");
  r.audit_ok = parse_bool(f[i++], "audit_ok");
  r.true_l1 = parse_double(f[i++], "true_l1");
  r.true_l2 = parse_double(f[i++], "true_l2");
  r.realized_l2 = parse_double(f[i++], "realized_l2");
  r.realized_tv = parse_optional(f[i++], "realized_tv");
  r.estimate = parse_doubles(f[i++]);
  r.wall_ms = parse_double(f[i++], "wall_ms");
  return r;
}

json to_json(const ResultRow& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["revision"] = r.revision;
  j["grid_index"] = r.grid_index;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["d"] = r.d;
  j["epsilon"] = r.epsilon;
  j["delta"] = r.delta;
  j["eta"] = r.eta;
  j["tau"] = r.tau;
  j["advice_model"] = r.advice_model;
  j["tester_c"] = r.tester_c;
  j["threshold_factor"] = r.threshold_factor;
  j["lasso_constant"] = r.lasso_constant;
  j["baseline_constant"] = r.baseline_constant;
  j["stage1_multiplier"] = r.stage1_multiplier;
  j["box_clamp"] = r.box_clamp;
  j["reuse_stage1"] = r.reuse_stage1;
  j["k"] = r.k;
  j["alpha"] = r.alpha;
  j["zeta"] = r.zeta;
  j["delta_prime"] = r.delta_prime;
  j["levels"] = r.levels;
  j["repetitions"] = r.repetitions;
  j["approx_status"] = r.approx_status;
  j["branch"] = r.branch;
  j["lambda"] = r.lambda ? json(*r.lambda) : json(nullptr);
  j["samples_stage1"] = r.samples_stage1;
  j["samples_stage2"] = r.samples_stage2;
  j["samples_total"] = r.samples_total;
  j["baseline_samples"] = r.baseline_samples;
  j["audit_ok"] = r.audit_ok;
  j["true_l1"] = r.true_l1;
  j["true_l2"] = r.true_l2;
  j["realized_l2"] = r.realized_l2;
  j["realized_tv"] = r.realized_tv ? json(*r.realized_tv) : json(nullptr);
  j["estimate"] = r.estimate;
  j["wall_ms"] = r.wall_ms;
  return j;
}

ResultRow from_json(const json& j) {
  ResultRow r;
  r.schema_version = j.at("schema_version").get<int>();
  r.revision = j.at("revision").get<std::string>();
  r.grid_index = j.at("grid_index").get<std::uint64_t>();
  r.trial = j.at("trial").get<std::uint64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.d = j.at("d").get<std::uint64_t>();
  r.epsilon = j.at("epsilon").get<double>();
  r.delta = j.at("delta").get<double>();
  r.eta = j.at("eta").get<double>();
  r.tau = j.at("tau").get<double>();
  r.advice_model = j.at("advice_model").get<std::string>();
  r.tester_c = j.at("tester_c").get<double>();
  r.threshold_factor = j.at("threshold_factor").get<double>();
  r.lasso_constant = j.at("lasso_constant").get<double>();
  r.baseline_constant = j.at("baseline_constant").get<double>();
  r.stage1_multiplier = j.at("stage1_multiplier").get<double>();
  r.box_clamp = j.at("box_clamp").get<bool>();
  r.reuse_stage1 = j.at("reuse_stage1").get<bool>();
  r.k = j.at("k").get<std::uint64_t>();
  r.alpha = j.at("alpha").get<double>();
  r.zeta = j.at("zeta").get<double>();
  r.delta_prime = j.at("delta_prime").get<double>();
  r.levels = j.at("levels").get<std::uint64_t>();
  r.repetitions = j.at("repetitions").get<std::uint64_t>();
  r.approx_status = j.at("approx_status").get<std::string>();
  r.branch = j.at("branch").get<std::string>();
  if (!j.at("lambda").is_null()) r.lambda = j.at("lambda").get<double>();
  r.samples_stage1 = j.at("samples_stage1").get<std::uint64_t>();
  r.samples_stage2 = j.at("samples_stage2").get<std::uint64_t>();
  r.samples_total = j.at("samples_total").get<std::uint64_t>();
  r.baseline_samples = j.at("baseline_samples").get<std::uint64_t>();
  r.audit_ok = j.at("audit_ok").get<bool>();
  r.true_l1 = j.at("true_l1").get<double>();
  r.true_l2 = j.at("true_l2").get<double>();
  r.realized_l2 = j.at("realized_l2").get<double>();
  if (!j.at("realized_tv").is_null()) r.realized_tv = j.at("realized_tv").get<double>();
  r.estimate = j.at("estimate").get<std::vector<double>>();
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

}  // namespace

const std::vector<std::string>& csv_header() {
  static const std::vector<std::string> header{
      "schema_version", "revision", "grid_index", "trial", "seed", "d",
      "epsilon", "delta", "eta", "tau", "advice_model", "tester_c",
      "threshold_factor", "lasso_constant", "baseline_constant",
      "stage1_multiplier", "box_clamp", "reuse_stage1", "k", "alpha", "zeta",
      "delta_prime", "levels", "repetitions", "approx_status", "branch",
      "lambda", "samples_stage1", "samples_stage2", "samples_total",
      "baseline_samples", "audit_ok", "true_l1", "true_l2", "realized_l2",
      "realized_tv", "estimate", "wall_ms"};
  return header;
}

void write_csv_header(std::ostream& out) {
  const auto& h = csv_header();
  for (std::size_t i = 0; i < h.size(); ++i) out << (i ? "," : "") << h[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, const ResultRow& row) {
  const auto f = csv_fields(row);
  for (std::size_t i = 0; i < f.size(); ++i) out << (i ? "," : "") << f[i];
  out << '\n';
}

void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  write_csv_header(out);
  for (const ResultRow& r : rows) write_csv_row(out, r);
}

void write_jsonl_row(std::ostream& out, const ResultRow& row) {
  out << to_json(row).dump() << '\n';
}

void write_jsonl(std::ostream& out, const std::vector<ResultRow>& rows) {
  for (const ResultRow& r : rows) write_jsonl_row(out, r);
}

std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("csv: missing header");
  if (split_csv(line) != csv_header()) {
    throw std::runtime_error("csv: header does not match schema version " +
                             std::to_string(kResultSchemaVersion));
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(row_from_fields(split_csv(line)));
  }
  return rows;
}

std::vector<ResultRow> read_jsonl(std::istream& in) {
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      rows.push_back(from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw std::runtime_error("jsonl line " + std::to_string(number) + ": " +
                               e.what());
    }
  }
  return rows;
}

std::uint64_t result_hash(const std::vector<ResultRow>& rows) {
  std::ostringstream text;
  write_csv_header(text);
  for (ResultRow r : rows) {
    r.wall_ms = 0.0;
    write_csv_row(text, r);
  }
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::vector<std::string> audit(const ResultRow& r) {
  std::vector<std::string> problems;
  if (!r.audit_ok) problems.push_back("sampler draws differ from stage totals");
  if (r.samples_total != r.samples_stage1 + r.samples_stage2) {
    problems.push_back("samples_total != samples_stage1 + samples_stage2");
  }
  if (r.branch == "advice_lasso") {
    const double limit = r.epsilon * std::sqrt(static_cast<double>(r.d));
    if (!r.lambda) {
      problems.push_back("advice_lasso branch without lambda");
    } else if (!(*r.lambda < limit)) {
      problems.push_back("advice_lasso branch with lambda >= epsilon sqrt(d)");
    }
  }
  if (r.estimate.size() != r.d) problems.push_back("estimate has wrong length");
  for (double x : r.estimate) {
    if (!(x >= 0.0 && x <= 1.0)) {
      problems.push_back("estimate entry outside [0, 1]");
      break;
    }
  }
  return problems;
}

}  // namespace advlearn::bench
