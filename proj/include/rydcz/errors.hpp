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

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rydcz {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  explicit NotHermitian(double residue)
      : Error("matrix is not Hermitian (max |h - h^dagger| = " + std::to_string(residue) + ")"),
        residue_(residue) {}
  double residue() const noexcept { return residue_; }

 private:
  double residue_;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class InvalidState : public Error {
 public:
  using Error::Error;
};

/// Raised by the step-doubling self test when the integrator is under-resolved.
class StepTooCoarse : public Error {
 public:
  StepTooCoarse(double change, double tolerance)
      : Error("step doubling changed the probe fidelity by " + std::to_string(change) +
              " (tolerance " + std::to_string(tolerance) + ")"),
        change_(change) {}
  double change() const noexcept { return change_; }

 private:
  double change_;
};

/// A configuration value failed its domain check. `key()` names the offending key.
class ValidationError : public Error {
 public:
  ValidationError(std::string key, const std::string& why)
      : Error("invalid value for '" + key + "': " + why), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Malformed configuration text; `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& why)
      : Error("line " + std::to_string(line) + ": " + why), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace rydcz
