// Copyright 2026 The cavsim Authors
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

/**
 * @file
 * Line-oriented circuit description files (.circ).
 *
 *   # comment
 *   circuit cnot electrons=1
 *   modes in,1,2,3,4,5,out
 *   cavity c1 spin=0
 *   input in
 *   output out
 *   pbs in=in out=1,2 checkpoint=Eq3
 *   hwp in=2 out=2
 *   phase pi in=4 out=4
 *   switch a in=8 out=9,10
 *   delay in=1 out=1
 *   hadamard-e spin=0
 *   interact c1 in=3:against,4 out=3,4:against
 *
 * A port is a mode name, optionally suffixed ":against" (default direction
 * is along z). PBS lists k inputs and 2k outputs: transmit ports, then
 * reflect ports. Phase takes pi, -pi or a number in radians.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cavsim/circuits.hpp"

namespace cavsim {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string &message, std::size_t line, std::size_t column);

  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Throws ParseError for syntax errors and for semantic errors such as
/// undeclared modes; messages end with ", line N, column C".
[[nodiscard]] CircuitSpec parseCircuitFile(std::string_view text);

/// Text that parses back to `circuit`.
[[nodiscard]] std::string emitCircuitFile(const CircuitSpec &circuit);

}  // namespace cavsim
