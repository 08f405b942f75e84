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

// Plain-text run configuration: `key = value` lines, `#` starts a comment.
// Values are in laboratory units (MHz, mK, ms, um) and are converted once
// here to the internal rad/us, K, us convention.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>
#include <algorithm>

#include "rydcz/errors.hpp"
#include "rydcz/lindblad.hpp"
#include "rydcz/model.hpp"

namespace rydcz {

struct RunConfig {
  SystemParams system;
  PositionNoise noise;
  EvolutionConfig solver;
  std::filesystem::path output_dir = ".";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline bool parse_double(std::string_view text, double& out) {
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end && std::isfinite(out);
}

inline double number_for(std::string_view key, std::string_view value) {
  double v = 0.0;
  if (!parse_double(value, v)) {
    throw ValidationError(std::string(key), "expected a finite number, got '" + std::string(value) + "'");
  }
  return v;
}

inline long integer_for(std::string_view key, std::string_view value) {
  const double v = number_for(key, value);
  if (v != std::floor(v)) throw ValidationError(std::string(key), "expected an integer");
  return static_cast<long>(v);
}

inline bool bool_for(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
  if (value == "false" || value == "0" || value == "no" || value == "off") return false;
  throw ValidationError(std::string(key), "expected a boolean, got '" + std::string(value) + "'");
}

}  // namespace detail

/// Sets one configuration key from its textual value. Throws
/// ValidationError naming the key on unknown keys or malformed values.
inline void set_config_value(RunConfig& cfg, std::string_view key, std::string_view value) {
  using detail::number_for;
  SystemParams& s = cfg.system;
  if (key == "omega_MHz") {
    s.omega_laser = kTwoPi * number_for(key, value);
  } else if (key == "g_MHz") {
    s.g = kTwoPi * number_for(key, value);
  } else if (key == "omega_c_MHz") {
    s.omega_c = kTwoPi * number_for(key, value);
  } else if (key == "q_factor") {
    s.q_factor = number_for(key, value);
  } else if (key == "temperature_mK") {
    s.temperature = 1e-3 * number_for(key, value);
  } else if (key == "tau1_ms") {
    s.tau1 = 1e3 * number_for(key, value);
  } else if (key == "tau2_ms") {
    s.tau2 = 1e3 * number_for(key, value);
  } else if (key == "n_max") {
    const long n = detail::integer_for(key, value);
    if (n < 1 || n > 200) throw ValidationError("n_max", "must be in [1, 200]");
    s.n_max = static_cast<int>(n);
  } else if (key == "slope_MHz_per_um") {
    cfg.noise.slope = kTwoPi * number_for(key, value);
  } else if (key == "sigma_um") {
    cfg.noise.sigma = number_for(key, value);
  } else if (key == "steps_per_us") {
    cfg.solver.steps_per_unit_time = number_for(key, value);
  } else if (key == "record_every") {
    const long n = detail::integer_for(key, value);
    if (n < 1) throw ValidationError("record_every", "must be positive");
    cfg.solver.record_every = static_cast<std::size_t>(n);
  } else if (key == "positivity_check") {
    cfg.solver.positivity_check = detail::bool_for(key, value);
  } else if (key == "output_dir") {
    if (value.empty()) throw ValidationError("output_dir", "must not be empty");
    cfg.output_dir = std::filesystem::path(std::string(value));
  } else {
    throw ValidationError(std::string(key), "unknown key");
  }
}

/// Domain checks, reported under the configuration key names.
inline void validate_config(const RunConfig& cfg) {
  const SystemParams& s = cfg.system;
  auto positive = [](double v, const char* key) {
    if (!(v > 0.0)) throw ValidationError(key, "must be positive");
  };
  positive(s.omega_laser, "omega_MHz");
  positive(s.omega_c, "omega_c_MHz");
  positive(s.tau1, "tau1_ms");
  positive(s.tau2, "tau2_ms");
  if (!(s.g >= 0.0)) throw ValidationError("g_MHz", "must be non-negative");
  if (!(s.q_factor >= 1.0)) throw ValidationError("q_factor", "must be >= 1");
  if (!(s.temperature >= 0.0)) throw ValidationError("temperature_mK", "must be non-negative");
  if (!(cfg.noise.sigma >= 0.0)) throw ValidationError("sigma_um", "must be non-negative");
  if (!(cfg.solver.steps_per_unit_time >= 1.0)) throw ValidationError("steps_per_us", "must be >= 1");
}

/// Parses configuration text. An empty text yields the default parameter set
/// (Omega/2pi = 1 MHz, g/2pi = sqrt(3)/2 MHz, omega_c/2pi = 5037 MHz,
/// T = 50 mK, Q = 2e5, tau = 0.82 / 1.97 ms, n_max = 5).
inline RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::vector<std::string> seen;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string_view key = detail::trim(line.substr(0, eq));
    const std::string_view value = detail::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "missing key");
    if (value.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    }
    seen.emplace_back(key);
    set_config_value(cfg, key, value);
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace rydcz
