// Copyright 2026 The rydcz Authors
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

// Experiment commands behind the `rydcz` executable. Each command writes
// `<output_dir>/<name>.csv` and prints a one-line summary.

#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rydcz/config.hpp"
#include "rydcz/csv.hpp"
#include "rydcz/errors.hpp"
#include "rydcz/experiments.hpp"
#include "rydcz/protocols.hpp"

namespace rydcz {

inline constexpr std::array<std::string_view, 7> kCommandNames = {
    "truth-table", "bell-fidelity", "sweep-q", "sweep-t", "sweep-sigma", "robustness", "coherent-demo"};

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitSolver = 2 };

struct CommandOptions {
  std::optional<ProtocolKind> protocol;  // robustness
  std::optional<double> epsilon;         // robustness: single point instead of the grid
  std::vector<double> values;            // sweep grid override, in CSV units (Q, mK, um, epsilon)
  std::size_t nodes = 11;                // Gauss-Hermite nodes for sweep-sigma
  std::size_t samples = 201;             // coherent-demo rows
  bool open_system = false;              // truth-table through the master equation
};

inline ProtocolKind parse_protocol(std::string_view name) {
  if (name == "one-step") return ProtocolKind::OneStep;
  if (name == "three-step") return ProtocolKind::ThreeStep;
  throw ValidationError("protocol", "expected one-step or three-step, got '" + std::string(name) + "'");
}

namespace detail {

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct CommandContext {
  const RunConfig& cfg;
  const CommandOptions& opts;
  std::ostream& out;
  std::ostream& err;
  std::filesystem::path csv_path;
};

inline void warn_condition(const CommandContext& c, const SystemParams& p) {
  const double dev = cz_condition(p);
  if (std::abs(dev) > 1e-6) {
    c.err << "warning: |eta| deviates from sqrt(6)/2 by a relative " << format_number(dev)
          << "; the single pulse will not restore |1_m 1_a>\n";
  }
}

inline int cmd_truth_table(const CommandContext& c) {
  const SystemParams& p = c.cfg.system;
  warn_condition(c, p);
  const auto rows = cz_truth_table(p, !c.opts.open_system, c.cfg.solver);
  CsvTable table{{"input", "population", "phase"}, {}};
  std::string phases;
  double min_pop = 1.0;
  for (const TruthRow& r : rows) {
    const std::string label =
        std::to_string(r.photons) + "m" + (r.atom == AtomLevel::A0 ? "0a" : "1a");
    table.add_row({label, format_number(r.population), format_number(r.phase)});
    phases += (phases.empty() ? "" : ", ") + fixed(r.phase, 6);
    min_pop = std::min(min_pop, r.population);
  }
  write_csv(c.csv_path, table);
  c.out << "phases = (" << phases << ") rad, min population = " << fixed(min_pop, 9) << "\n";
  return kExitOk;
}

inline int cmd_bell_fidelity(const CommandContext& c) {
  const SystemParams& p = c.cfg.system;
  warn_condition(c, p);
  const BellResult r = bell_fidelity(p, c.cfg.solver);
  for (const PositivityViolation& w : r.warnings) {
    c.err << "warning: min eigenvalue " << format_number(w.min_eigenvalue) << " at t = "
          << format_number(w.time) << " us\n";
  }
  CsvTable table{{"q_factor", "temperature_mK", "g_MHz", "omega_MHz", "fidelity"}, {}};
  table.add_numeric_row({p.q_factor, p.temperature * 1e3, p.g / kTwoPi, p.omega_laser / kTwoPi, r.fidelity});
  write_csv(c.csv_path, table);
  c.out << "F = " << fixed(r.fidelity, 3) << "\n";
  return kExitOk;
}

// Runs a sweep; values/results are converted between CSV units and internal units.
inline int run_sweep(const CommandContext& c, SweepParameter param, const std::string& column,
                     double to_internal) {
  SweepSpec spec;
  spec.parameter = param;
  spec.base = c.cfg.system;
  spec.noise = c.cfg.noise;
  spec.solver = c.cfg.solver;
  spec.quadrature_nodes = c.opts.nodes;
  if (c.opts.values.empty()) {
    spec.values = default_grid(param);
  } else {
    for (double v : c.opts.values) spec.values.push_back(v * to_internal);
  }
  warn_condition(c, spec.base);
  const SweepResult result = sweep(spec);

  CsvTable table{{column, "fidelity"}, {}};
  for (const SweepRow& row : result.rows) {
    table.add_numeric_row({row.value / to_internal, row.result});
    if (!row.ok()) c.err << "row " << column << " = " << format_number(row.value / to_internal)
                         << " failed: " << row.error << "\n";
  }
  write_csv(c.csv_path, table);
  c.out << result.rows.size() << " rows written to " << c.csv_path.string();
  if (result.failures() > 0) c.out << " (" << result.failures() << " failed)";
  c.out << "\n";
  return result.failures() > 0 ? kExitSolver : kExitOk;
}

inline int cmd_robustness(const CommandContext& c) {
  const SystemParams& p = c.cfg.system;
  std::vector<double> grid;
  if (c.opts.epsilon) {
    grid = {*c.opts.epsilon};
  } else if (!c.opts.values.empty()) {
    grid = c.opts.values;
  } else {
    grid = default_grid(SweepParameter::Epsilon);
  }
  std::vector<ProtocolKind> kinds;
  if (c.opts.protocol) {
    kinds = {*c.opts.protocol};
  } else {
    kinds = {ProtocolKind::OneStep, ProtocolKind::ThreeStep};
  }

  CsvTable table;
  table.header.push_back("epsilon");
  for (ProtocolKind k : kinds) {
    table.header.push_back(kinds.size() == 1 ? "error" : "error_" + std::string(k == ProtocolKind::OneStep
                                                                                    ? "one_step"
                                                                                    : "three_step"));
  }
  double last = 0.0;
  for (double eps : grid) {
    std::vector<double> row{eps};
    for (ProtocolKind k : kinds) row.push_back(last = robustness_error(k, eps, p));
    table.add_numeric_row(row);
  }
  write_csv(c.csv_path, table);
  if (grid.size() == 1 && kinds.size() == 1) {
    c.out << "error = " << fixed(last, 3) << "\n";
  } else {
    c.out << grid.size() << " rows written to " << c.csv_path.string() << "\n";
  }
  return kExitOk;
}

inline int cmd_coherent_demo(const CommandContext& c) {
  const SystemParams& p = c.cfg.system;
  warn_condition(c, p);
  const TimeSeries series = coherent_time_evolution(p, c.opts.samples);
  CsvTable table;
  table.header.push_back("t");
  for (const std::string& n : series.names()) table.header.push_back(n);
  for (std::size_t r = 0; r < series.size(); ++r) {
    std::vector<double> row{series.times()[r]};
    for (std::size_t col = 0; col < series.names().size(); ++col) row.push_back(series.column(col)[r]);
    table.add_numeric_row(row);
  }
  write_csv(c.csv_path, table);
  c.out << "pop_11 at t = 2pi/Omega: " << fixed(series.column("pop_11").back(), 9) << "\n";
  return kExitOk;
}

}  // namespace detail

/// Dispatches one experiment command. Returns 0 on success, 1 on invalid
/// input, 2 on solver failure (partial sweep output is still written).
inline int run_command(std::string_view name, const RunConfig& cfg, const CommandOptions& opts,
                       std::ostream& out, std::ostream& err) {
  try {
    validate_config(cfg);
    if (opts.nodes == 0) throw ValidationError("nodes", "must be positive");
    if (opts.samples < 2) throw ValidationError("samples", "must be at least 2");
    const detail::CommandContext ctx{cfg, opts, out, err, cfg.output_dir / (std::string(name) + ".csv")};
    if (name == "truth-table") return detail::cmd_truth_table(ctx);
    if (name == "bell-fidelity") return detail::cmd_bell_fidelity(ctx);
    if (name == "sweep-q") return detail::run_sweep(ctx, SweepParameter::QFactor, "q_factor", 1.0);
    if (name == "sweep-t") return detail::run_sweep(ctx, SweepParameter::Temperature, "temperature_mK", 1e-3);
    if (name == "sweep-sigma") return detail::run_sweep(ctx, SweepParameter::Sigma, "sigma_um", 1.0);
    if (name == "robustness") return detail::cmd_robustness(ctx);
    if (name == "coherent-demo") return detail::cmd_coherent_demo(ctx);
    err << "error: unknown command '" << name << "'\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
}

}  // namespace rydcz
