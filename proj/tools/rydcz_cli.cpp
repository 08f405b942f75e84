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

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rydcz/commands.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw rydcz::ValidationError("config", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atom-photon controlled-Z gate simulator"};
  app.set_help_all_flag("--help-all");

  std::string command;
  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::size_t nodes = 11;
  double steps = 0.0;
  std::string protocol;
  double epsilon = 0.0;
  std::vector<double> values;
  std::size_t samples = 201;
  bool open_system = false;

  std::vector<std::string> names(rydcz::kCommandNames.begin(), rydcz::kCommandNames.end());
  app.add_option("command", command, "Experiment to run")->required()->check(CLI::IsMember(names));
  app.add_option("--config", config_path, "Configuration file (key = value lines)");
  app.add_option("--out", out_dir, "Output directory for CSV files");
  app.add_option("--set", overrides, "Override a configuration key, key=value (repeatable)");
  app.add_option("--nodes", nodes, "Gauss-Hermite nodes for sweep-sigma")->check(CLI::PositiveNumber);
  app.add_option("--steps", steps, "RK4 steps per microsecond")->check(CLI::PositiveNumber);
  auto* protocol_opt = app.add_option("--protocol", protocol, "robustness: one-step or three-step")
                           ->check(CLI::IsMember({"one-step", "three-step"}));
  auto* epsilon_opt = app.add_option("--epsilon", epsilon, "robustness: single relative coupling error");
  app.add_option("--values", values, "Sweep grid (Q, mK, um or epsilon)")->delimiter(',');
  app.add_option("--samples", samples, "coherent-demo: number of time samples");
  app.add_flag("--open", open_system, "truth-table: include decoherence (master equation)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? rydcz::kExitOk : rydcz::kExitValidation;
  }

  rydcz::RunConfig cfg;
  try {
    cfg = config_path.empty() ? rydcz::parse_config("") : rydcz::parse_config(read_file(config_path));
    for (const std::string& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw rydcz::ValidationError(kv, "--set expects key=value");
      rydcz::set_config_value(cfg, rydcz::detail::trim(std::string_view(kv).substr(0, eq)),
                              rydcz::detail::trim(std::string_view(kv).substr(eq + 1)));
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (steps > 0.0) cfg.solver.steps_per_unit_time = steps;
  } catch (const rydcz::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return rydcz::kExitValidation;
  }

  rydcz::CommandOptions opts;
  opts.nodes = nodes;
  opts.values = values;
  opts.samples = samples;
  opts.open_system = open_system;
  if (protocol_opt->count() > 0) opts.protocol = rydcz::parse_protocol(protocol);
  if (epsilon_opt->count() > 0) opts.epsilon = epsilon;

  return rydcz::run_command(command, cfg, opts, std::cout, std::cerr);
}
