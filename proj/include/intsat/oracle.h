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


// Exhaustive enumeration over the variable box, used to cross-check the
// solver. It only relies on Evaluate() from the model.

#ifndef INTSAT_ORACLE_H_
#define INTSAT_ORACLE_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "intsat/model.h"
#include "intsat/solver.h"

namespace intsat {

inline constexpr int64_t kOracleGuard = 10'000'000;

class SearchSpaceTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Number of points in the box; throws SearchSpaceTooLarge above the guard.
int64_t OracleSpaceSize(const Problem& problem);

// Feasible, Optimal (with the lexicographically first optimal point in
// enumeration order) or Infeasible.
SolveOutcome OracleSolveSerial(const Problem& problem);
// Same answer computed with OpenMP threads; `threads` <= 0 uses the default.
SolveOutcome OracleSolveParallel(const Problem& problem, int threads = 0);
inline SolveOutcome OracleSolve(const Problem& problem) {
  return OracleSolveParallel(problem);
}

// Every solution, in enumeration order.
std::vector<Solution> EnumerateSolutions(const Problem& problem);

}  // namespace intsat

#endif  // INTSAT_ORACLE_H_
