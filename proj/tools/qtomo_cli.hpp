// Copyright 2026 The qtomo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end for qtomo. Kept in a header so the test suite can
// drive run_cli() in-process.
//
//   qtomo <exact|sample|sweep|reconstruct|bloch> [--theta R] [--phi R]
//         [--degrees] [--shots N] [--seed U64] [--trials N]
//         [--theta-steps N] [--phi-steps N] [--s1 R --s2 R --s3 R]
//         [--format json|csv] [--out PATH]
//
// Exit codes: 0 success, 2 validation error, 3 I/O error.

#pragma once

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cerrno>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qtomo/qtomo.hpp"

namespace qtomo::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitIo = 3;

inline constexpr std::int64_t kDefaultShots = 8192;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { Json, Csv };

struct RunConfig {
  std::string command;
  std::optional<double> theta;
  std::optional<double> phi;
  bool degrees = false;
  std::int64_t shots = kDefaultShots;
  bool shots_given = false;
  std::optional<std::uint64_t> seed;
  std::int64_t trials = 1;
  std::int64_t theta_steps = 11;
  std::int64_t phi_steps = 16;
  std::optional<double> s1, s2, s3;
  Format format = Format::Json;
  std::string out_path;
};

// ---------------------------------------------------------------------------
// Serialization

inline std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

/// JSON text with every floating-point value printed to 17 significant digits.
inline void write_json(const json& j, std::ostream& os, int indent = 0) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << json(it.key()).dump() << ": ";
        write_json(it.value(), os, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      const bool flat = std::none_of(j.begin(), j.end(), [](const json& e) { return e.is_structured(); });
      if (flat) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_json(j[i], os, indent);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_json(j[i], os, indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case json::value_t::number_float:
      os << format_number(j.get<double>());
      return;
    default:
      os << j.dump();
      return;
  }
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json matrix_json(const Matrix2& m) {
  return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                      json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

inline json stokes_json(const StokesVector& s) { return {{"s0", s.s0}, {"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}}; }

inline json strategy_json(const Strategy& s) { return {{"beta", s.beta()}, {"alpha", s.alpha()}}; }

inline json estimate_json(const SampleEstimate& e) {
  return {{"value", e.value}, {"shots", e.shots}, {"std_error", e.std_error}, {"seed", e.seed}};
}

inline json report_skeleton(const std::string& command) {
  json r = json::object();
  r["command"] = command;
  r["inputs"] = nullptr;
  r["steps"] = nullptr;
  r["stokes"] = nullptr;
  r["reconstruction"] = nullptr;
  r["metrics"] = nullptr;
  r["seed"] = nullptr;
  return r;
}

/// RFC 4180 table: header plus rows, comma separated, LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> row) {
    if (row.size() != header_.size()) throw std::logic_error("CsvTable: row width mismatch");
    rows_.push_back(std::move(row));
  }

  void write(std::ostream& os) const {
    write_line(os, header_);
    for (const auto& r : rows_) write_line(os, r);
  }

 private:
  static std::string quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }

  static void write_line(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) os << ',';
      os << quote(fields[i]);
    }
    os << '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string bool_field(bool b) { return b ? "true" : "false"; }
inline std::string u64_field(std::uint64_t v) { return std::to_string(v); }

inline std::vector<std::string> rho_columns() {
  return {"rho00_re", "rho00_im", "rho01_re", "rho01_im", "rho10_re", "rho10_im", "rho11_re", "rho11_im"};
}

inline void append_rho_fields(std::vector<std::string>& row, const Matrix2& m) {
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      row.push_back(format_number(m(i, j).real()));
      row.push_back(format_number(m(i, j).imag()));
    }
}

template <typename... Vs>
std::vector<std::string> concat(std::vector<std::string> a, const Vs&... rest) {
  (a.insert(a.end(), rest.begin(), rest.end()), ...);
  return a;
}

// ---------------------------------------------------------------------------
// Commands

struct Output {
  std::optional<json> report;
  std::optional<CsvTable> table;
};

inline PureQubit input_qubit(const RunConfig& cfg) {
  if (!cfg.theta || !cfg.phi) throw ValidationError(cfg.command + ": --theta and --phi are required");
  double theta = *cfg.theta;
  double phi = *cfg.phi;
  if (cfg.degrees) {
    theta = theta / 180.0 * std::numbers::pi;
    phi = phi / 180.0 * std::numbers::pi;
  }
  return PureQubit{theta, phi};
}

inline json angle_inputs(const RunConfig& cfg, const PureQubit& q) {
  return {{"theta", q.theta()}, {"phi", q.phi()}, {"degrees", cfg.degrees}};
}

inline json reconstruction_json(const Matrix2& rho, bool projected, double bloch_norm) {
  return {{"rho", matrix_json(rho)}, {"projected", projected}, {"bloch_norm", bloch_norm}};
}

inline Output cmd_exact(const RunConfig& cfg) {
  const PureQubit q = input_qubit(cfg);
  const Matrix2 rho = pure_density(q);
  const StokesVector s = exact_stokes(rho);
  const StokesVector reference = stokes_of(rho);
  const double residual = std::max({std::abs(s.s1 - reference.s1), std::abs(s.s2 - reference.s2),
                                    std::abs(s.s3 - reference.s3)});
  const TomographyResult tr = exact_tomography(q);

  json steps = json::array();
  std::vector<std::string> step_fields;
  int index = 1;
  for (const auto& step : protocol_steps()) {
    const GameRun run = run_step(rho, step);
    const double pa = payoff_exact(run, step.payoff_a);
    const double pb = payoff_exact(run, step.payoff_b);
    steps.push_back({{"step", index++},
                     {"label", to_string(step.label)},
                     {"strategy_a", strategy_json(step.strategy_a)},
                     {"strategy_b", strategy_json(step.strategy_b)},
                     {"payoff_alice", pa},
                     {"payoff_bob", pb}});
    step_fields.push_back(format_number(pa));
    step_fields.push_back(format_number(pb));
  }

  Output out;
  if (cfg.format == Format::Json) {
    json r = report_skeleton("exact");
    r["inputs"] = angle_inputs(cfg, q);
    r["steps"] = steps;
    r["stokes"] = stokes_json(s);
    r["reconstruction"] = reconstruction_json(tr.rho_hat, tr.projected, s.bloch_norm());
    r["metrics"] = {{"residual", residual}, {"fidelity", *tr.fidelity}, {"trace_distance", *tr.trace_dist}};
    out.report = r;
  } else {
    CsvTable t(concat(std::vector<std::string>{"theta", "phi", "s0", "s1", "s2", "s3", "alice_step1", "bob_step1",
                                               "alice_step2", "bob_step2", "alice_step3", "bob_step3", "residual"},
                      rho_columns(), std::vector<std::string>{"projected", "fidelity", "trace_distance"}));
    std::vector<std::string> row{format_number(q.theta()), format_number(q.phi()), format_number(s.s0),
                                 format_number(s.s1),      format_number(s.s2),    format_number(s.s3)};
    row.insert(row.end(), step_fields.begin(), step_fields.end());
    row.push_back(format_number(residual));
    append_rho_fields(row, tr.rho_hat);
    row.push_back(bool_field(tr.projected));
    row.push_back(format_number(*tr.fidelity));
    row.push_back(format_number(*tr.trace_dist));
    t.add_row(row);
    out.table = t;
  }
  return out;
}

/// Seed for repetition `trial`; trial 0 uses the master seed unchanged.
inline std::uint64_t trial_seed(std::uint64_t seed, std::int64_t trial) {
  return trial == 0 ? seed : derive_seed(~seed, static_cast<std::uint64_t>(trial));
}

inline Output cmd_sample(const RunConfig& cfg, std::uint64_t seed) {
  const PureQubit q = input_qubit(cfg);
  if (cfg.shots < 1) throw ValidationError("sample: --shots must be >= 1");
  if (cfg.trials < 1) throw ValidationError("sample: --trials must be >= 1");

  const TomographyResult tr = run_tomography(q, cfg.shots, seed);
  std::vector<double> fidelities{*tr.fidelity};
  double td_sum = *tr.trace_dist;
  for (std::int64_t t = 1; t < cfg.trials; ++t) {
    const TomographyResult extra = run_tomography(q, cfg.shots, trial_seed(seed, t));
    fidelities.push_back(*extra.fidelity);
    td_sum += *extra.trace_dist;
  }
  std::sort(fidelities.begin(), fidelities.end());
  const std::size_t n = fidelities.size();
  const double median = n % 2 ? fidelities[n / 2] : 0.5 * (fidelities[n / 2 - 1] + fidelities[n / 2]);
  const double mean_td = td_sum / static_cast<double>(cfg.trials);

  const auto steps = protocol_steps();
  Output out;
  if (cfg.format == Format::Json) {
    json r = report_skeleton("sample");
    json inputs = angle_inputs(cfg, q);
    inputs["shots"] = cfg.shots;
    inputs["trials"] = cfg.trials;
    r["inputs"] = inputs;
    json js = json::array();
    for (std::size_t i = 0; i < steps.size(); ++i) {
      js.push_back({{"step", static_cast<int>(i) + 1},
                    {"label", to_string(steps[i].label)},
                    {"strategy_a", strategy_json(steps[i].strategy_a)},
                    {"strategy_b", strategy_json(steps[i].strategy_b)},
                    {"estimate", estimate_json((*tr.per_step)[i])}});
    }
    r["steps"] = js;
    r["stokes"] = stokes_json(tr.stokes_est);
    r["reconstruction"] = reconstruction_json(tr.rho_hat, tr.projected, tr.stokes_est.bloch_norm());
    r["metrics"] = {{"fidelity", *tr.fidelity},
                    {"trace_distance", *tr.trace_dist},
                    {"trials", cfg.trials},
                    {"median_fidelity", median},
                    {"mean_trace_distance", mean_td}};
    r["seed"] = seed;
    out.report = r;
  } else {
    CsvTable t(concat(std::vector<std::string>{"theta", "phi", "seed", "shots", "s1_hat", "s2_hat", "s3_hat",
                                               "s1_std_error", "s2_std_error", "s3_std_error"},
                      rho_columns(),
                      std::vector<std::string>{"projected", "fidelity", "trace_distance", "trials", "median_fidelity",
                                               "mean_trace_distance"}));
    std::array<double, 3> se{};
    for (const auto& e : *tr.per_step) se[static_cast<std::size_t>(e.step_label)] = e.std_error;
    std::vector<std::string> row{format_number(q.theta()),        format_number(q.phi()),
                                 u64_field(seed),                 std::to_string(cfg.shots),
                                 format_number(tr.stokes_est.s1), format_number(tr.stokes_est.s2),
                                 format_number(tr.stokes_est.s3), format_number(se[0]),
                                 format_number(se[1]),            format_number(se[2])};
    append_rho_fields(row, tr.rho_hat);
    row.push_back(bool_field(tr.projected));
    row.push_back(format_number(*tr.fidelity));
    row.push_back(format_number(*tr.trace_dist));
    row.push_back(std::to_string(cfg.trials));
    row.push_back(format_number(median));
    row.push_back(format_number(mean_td));
    t.add_row(row);
    out.table = t;
  }
  return out;
}

struct SweepRow {
  double theta, phi;
  StokesVector truth;
  StokesVector estimate;
  double fidelity;
  std::optional<std::uint64_t> seed;
};

inline std::vector<std::string> sweep_header() {
  return {"theta", "phi", "s1", "s2", "s3", "s1_hat", "s2_hat", "s3_hat", "fidelity"};
}

/// theta spans [0, pi] inclusive, phi spans [0, 2 pi) exclusive; rows are theta-major.
inline std::vector<SweepRow> sweep_rows(std::int64_t theta_steps, std::int64_t phi_steps,
                                        std::optional<std::int64_t> shots, std::uint64_t seed) {
  if (theta_steps < 2 || phi_steps < 2) throw ValidationError("sweep: grid needs at least 2 points per axis");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(theta_steps * phi_steps));
  for (std::int64_t i = 0; i < theta_steps; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(theta_steps - 1);
    for (std::int64_t j = 0; j < phi_steps; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(phi_steps);
      const PureQubit q{theta, phi};
      const auto cell = static_cast<std::uint64_t>(i * phi_steps + j);
      SweepRow row{q.theta(), q.phi(), stokes_of(pure_density(q)), {}, 0.0, std::nullopt};
      TomographyResult tr;
      if (shots) {
        row.seed = derive_seed(seed, cell);
        tr = run_tomography(q, *shots, *row.seed);
      } else {
        tr = exact_tomography(q);
      }
      row.estimate = tr.stokes_est;
      row.fidelity = *tr.fidelity;
      rows.push_back(row);
    }
  }
  return rows;
}

inline Output cmd_sweep(const RunConfig& cfg, std::uint64_t seed) {
  if (cfg.shots_given && cfg.shots < 1) throw ValidationError("sweep: --shots must be >= 1");
  const std::optional<std::int64_t> shots = cfg.shots_given ? std::optional{cfg.shots} : std::nullopt;
  const auto rows = sweep_rows(cfg.theta_steps, cfg.phi_steps, shots, seed);

  Output out;
  if (cfg.format == Format::Json) {
    json r = report_skeleton("sweep");
    r["inputs"] = {{"theta_steps", cfg.theta_steps},
                   {"phi_steps", cfg.phi_steps},
                   {"mode", shots ? "sampled" : "exact"},
                   {"shots", shots ? json(*shots) : json(nullptr)}};
    json jr = json::array();
    for (const auto& row : rows) {
      jr.push_back({{"theta", row.theta},
                    {"phi", row.phi},
                    {"s1", row.truth.s1},
                    {"s2", row.truth.s2},
                    {"s3", row.truth.s3},
                    {"s1_hat", row.estimate.s1},
                    {"s2_hat", row.estimate.s2},
                    {"s3_hat", row.estimate.s3},
                    {"fidelity", row.fidelity},
                    {"seed", row.seed ? json(*row.seed) : json(nullptr)}});
    }
    r["metrics"] = {{"rows", jr}};
    if (shots) r["seed"] = seed;
    out.report = r;
  } else {
    CsvTable t(sweep_header());
    for (const auto& row : rows) {
      t.add_row({format_number(row.theta), format_number(row.phi), format_number(row.truth.s1),
                 format_number(row.truth.s2), format_number(row.truth.s3), format_number(row.estimate.s1),
                 format_number(row.estimate.s2), format_number(row.estimate.s3), format_number(row.fidelity)});
    }
    out.table = t;
  }
  return out;
}

inline Output cmd_reconstruct(const RunConfig& cfg) {
  if (!cfg.s1 || !cfg.s2 || !cfg.s3) throw ValidationError("reconstruct: --s1, --s2 and --s3 are required");
  const StokesVector s{1.0, *cfg.s1, *cfg.s2, *cfg.s3};
  const auto rec = reconstruct(s, true);

  Output out;
  if (cfg.format == Format::Json) {
    json r = report_skeleton("reconstruct");
    r["inputs"] = {{"s1", s.s1}, {"s2", s.s2}, {"s3", s.s3}};
    r["stokes"] = stokes_json(s);
    r["reconstruction"] = reconstruction_json(rec.rho, rec.projected, s.bloch_norm());
    r["metrics"] = {{"bloch_norm", s.bloch_norm()}};
    out.report = r;
  } else {
    CsvTable t(concat(std::vector<std::string>{"s1", "s2", "s3", "bloch_norm", "projected"}, rho_columns()));
    std::vector<std::string> row{format_number(s.s1), format_number(s.s2), format_number(s.s3),
                                 format_number(s.bloch_norm()), bool_field(rec.projected)};
    append_rho_fields(row, rec.rho);
    t.add_row(row);
    out.table = t;
  }
  return out;
}

inline Output cmd_bloch(const RunConfig& cfg) {
  const PureQubit q = input_qubit(cfg);
  const BlochGeometry g = bloch_geometry(q);
  const double px = g.point[0], py = g.point[1], pz = g.point[2];

  Output out;
  if (cfg.format == Format::Json) {
    json r = report_skeleton("bloch");
    r["inputs"] = angle_inputs(cfg, q);
    r["stokes"] = stokes_json(StokesVector{1.0, px, py, pz});
    json planes = json::array();
    for (const auto& p : g.planes) {
      const char* axis = p.axis == Axis::X ? "x" : p.axis == Axis::Y ? "y" : "z";
      planes.push_back({{"axis", axis}, {"offset", p.offset}});
    }
    r["metrics"] = {{"planes", planes}, {"point", {{"x", px}, {"y", py}, {"z", pz}}}};
    out.report = r;
  } else {
    CsvTable t({"theta", "phi", "plane_z", "plane_y", "plane_x", "x", "y", "z"});
    t.add_row({format_number(q.theta()), format_number(q.phi()), format_number(g.planes[0].offset),
               format_number(g.planes[1].offset), format_number(g.planes[2].offset), format_number(px),
               format_number(py), format_number(pz)});
    out.table = t;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dispatch

using EnvLookup = std::function<std::optional<std::string>(const char*)>;

inline std::optional<std::string> process_env(const char* name) {
  if (const char* v = std::getenv(name)) return std::string(v);
  return std::nullopt;
}

inline std::uint64_t parse_seed(const std::string& text) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw ValidationError("seed must be an unsigned 64-bit integer: '" + text + "'");
  errno = 0;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(text.c_str(), &end, 10);
  if (errno == ERANGE) throw ValidationError("seed out of range: '" + text + "'");
  return static_cast<std::uint64_t>(v);
}

/// --seed, then QTOMO_SEED, then fresh entropy.
inline std::uint64_t resolve_seed(const RunConfig& cfg, const EnvLookup& env) {
  if (cfg.seed) return *cfg.seed;
  if (auto v = env("QTOMO_SEED")) return parse_seed(*v);
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

inline void emit(const Output& o, std::ostream& os) {
  if (o.report) {
    write_json(*o.report, os);
    os << '\n';
  } else if (o.table) {
    o.table->write(os);
  }
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
                   const EnvLookup& env = process_env) {
  CLI::App app{"Single-qubit state tomography through quantum-game payoffs", "qtomo"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string seed_text;
  std::string format_text = "json";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", format_text, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", cfg.out_path, "Write output to PATH instead of stdout");
  };
  auto add_angles = [&](CLI::App* sub) {
    sub->add_option("--theta", cfg.theta, "Polar angle (radians unless --degrees)");
    sub->add_option("--phi", cfg.phi, "Azimuthal angle (radians unless --degrees)");
    sub->add_flag("--degrees", cfg.degrees, "Interpret angles in degrees");
  };
  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--shots", cfg.shots, "Shots per protocol step");
    sub->add_option("--seed", seed_text, "Master RNG seed (unsigned 64-bit)");
  };

  auto* exact = app.add_subcommand("exact", "Exact payoffs and Stokes vector for a pure state");
  add_angles(exact);
  add_common(exact);

  auto* sample = app.add_subcommand("sample", "Finite-shot tomography of a pure state");
  add_angles(sample);
  add_sampling(sample);
  sample->add_option("--trials", cfg.trials, "Independent repetitions summarized in metrics");
  add_common(sample);

  auto* sweep = app.add_subcommand("sweep", "Evaluate a theta x phi grid (sampled when --shots is given)");
  add_sampling(sweep);
  sweep->add_option("--theta-steps", cfg.theta_steps, "Grid points over [0, pi]");
  sweep->add_option("--phi-steps", cfg.phi_steps, "Grid points over [0, 2 pi)");
  add_common(sweep);

  auto* recon = app.add_subcommand("reconstruct", "Density matrix from Stokes parameters");
  recon->add_option("--s1", cfg.s1, "Stokes parameter S1");
  recon->add_option("--s2", cfg.s2, "Stokes parameter S2");
  recon->add_option("--s3", cfg.s3, "Stokes parameter S3");
  add_common(recon);

  auto* bloch = app.add_subcommand("bloch", "Plane offsets and intersection point on the Bloch sphere");
  add_angles(bloch);
  add_common(bloch);

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "qtomo: " << e.what() << '\n';
    return kExitValidation;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format_text == "csv" ? Format::Csv : Format::Json;
    if (!seed_text.empty()) cfg.seed = parse_seed(seed_text);
    for (const auto* opt : {sample->get_option("--shots"), sweep->get_option("--shots")})
      if (opt->count() > 0) cfg.shots_given = true;

    Output result;
    if (cfg.command == "exact") {
      result = cmd_exact(cfg);
    } else if (cfg.command == "sample") {
      result = cmd_sample(cfg, resolve_seed(cfg, env));
    } else if (cfg.command == "sweep") {
      result = cmd_sweep(cfg, cfg.shots_given ? resolve_seed(cfg, env) : 0);
    } else if (cfg.command == "reconstruct") {
      result = cmd_reconstruct(cfg);
    } else {
      result = cmd_bloch(cfg);
    }

    if (cfg.out_path.empty()) {
      emit(result, out);
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw IoError("cannot open output file '" + cfg.out_path + "'");
      emit(result, file);
      file.close();
      if (!file) throw IoError("failed writing output file '" + cfg.out_path + "'");
    }
  } catch (const ValidationError& e) {
    err << "qtomo: " << e.what() << '\n';
    return kExitValidation;
  } catch (const IoError& e) {
    err << "qtomo: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

}  // namespace qtomo::cli
