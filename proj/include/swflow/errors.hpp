//
// Copyright 2026 The swflow Authors
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
//

#ifndef SWFLOW_ERRORS_HPP
#define SWFLOW_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace swflow {

// Invalid values for individual arguments raise std::invalid_argument.
// The classes below distinguish the remaining failure modes so callers
// (notably the CLI) can map them to exit codes.

/// A parameter combination outside the supported analysis regime,
/// e.g. a sensitivity bound requested for too few projections.
class UnsupportedRegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation-level precondition violated by otherwise well-formed inputs,
/// e.g. a private flow started on a target whose rows are not unit-norm.
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, int line, const std::string& what)
      : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  explicit ParseError(const std::string& what)
      : std::runtime_error(what), line_(0) {}

  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace swflow

#endif  // SWFLOW_ERRORS_HPP
