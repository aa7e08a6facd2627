// Copyright 2026 The IntSat Authors
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


// Line-oriented instance format and solution output.
//
//   # comment
//   var <name> int [<lb>, <ub>]
//   min: <term> (+|- <term>)*
//   <term> (+|- <term>)* (<=|>=|=) <number>
//
// A term is `<number>? *? <name>` or a bare number. Numbers are decimals with
// at most three fraction digits. Each row is scaled by the least power of 10
// that makes it integral, then normalised.

#ifndef INTSAT_IO_H_
#define INTSAT_IO_H_

#include <stdexcept>
#include <string>
#include <string_view>

#include "intsat/model.h"
#include "intsat/solver.h"

namespace intsat {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

Problem Parse(std::string_view text);
Problem ParseFile(const std::string& path);

// Renders an internal objective value in input units.
std::string FormatObjective(Int value, const Problem& problem);

// Status line ("OPTIMAL <v>", "FEASIBLE [<v>]", "INFEASIBLE", "UNKNOWN")
// followed by "name = value" lines when a solution is known.
std::string WriteSolution(const SolveOutcome& outcome, const Problem& problem);

// The problem in the instance format; Parse(WriteProblem(p)) has the same
// solutions and objective.
std::string WriteProblem(const Problem& problem);

}  // namespace intsat

#endif  // INTSAT_IO_H_
