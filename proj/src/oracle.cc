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


#include "intsat/oracle.h"

#include <omp.h>

#include <limits>

namespace intsat {
namespace {

struct Best {
  bool found = false;
  Wide value = 0;
  int64_t index = std::numeric_limits<int64_t>::max();

  // Smaller objective first, then earlier enumeration index.
  void Offer(Wide v, int64_t i) {
    if (!found || v < value || (v == value && i < index)) {
      found = true;
      value = v;
      index = i;
    }
  }
  void Merge(const Best& o) {
    if (o.found) Offer(o.value, o.index);
  }
};

// Point with mixed-radix index `idx`, the last variable varying fastest.
void Decode(const Problem& p, int64_t idx, Solution& out) {
  for (int v = p.num_vars() - 1; v >= 0; --v) {
    const int64_t size = p.ub[v] - p.lb[v] + 1;
    out[v] = p.lb[v] + idx % size;
    idx /= size;
  }
}

// Advances to the next point; the last variable varies fastest.
void Next(const Problem& p, Solution& point) {
  for (int v = p.num_vars() - 1; v >= 0; --v) {
    if (point[v] < p.ub[v]) {
      ++point[v];
      return;
    }
    point[v] = p.lb[v];
  }
}

bool Feasible(const Problem& p, const Solution& point) {
  for (const Constraint& c : p.constraints) {
    if (!Evaluate(c, point)) return false;
  }
  return true;
}

Wide ObjectiveValue(const Problem& p, const Solution& point) {
  return p.objective ? p.objective->Value(point) : 0;
}

SolveOutcome MakeOutcome(const Problem& p, const Best& best) {
  SolveOutcome out;
  if (!best.found) {
    out.status = SolveStatus::kInfeasible;
    return out;
  }
  Solution sol(p.num_vars());
  Decode(p, best.index, sol);
  out.solution = sol;
  if (p.objective) {
    out.status = SolveStatus::kOptimal;
    out.objective = static_cast<Int>(best.value);
  } else {
    out.status = SolveStatus::kFeasible;
  }
  return out;
}

}  // namespace

int64_t OracleSpaceSize(const Problem& problem) {
  int64_t size = 1;
  for (int v = 0; v < problem.num_vars(); ++v) {
    const Wide width = static_cast<Wide>(problem.ub[v]) - problem.lb[v] + 1;
    if (width <= 0) return 0;
    if (static_cast<Wide>(size) * width > kOracleGuard) {
      throw SearchSpaceTooLarge("search space exceeds 10^7 points");
    }
    size *= static_cast<int64_t>(width);
  }
  return size;
}

SolveOutcome OracleSolveSerial(const Problem& problem) {
  const int64_t size = OracleSpaceSize(problem);
  Best best;
  if (size > 0) {
    Solution point(problem.lb.begin(), problem.lb.end());
    for (int64_t i = 0; i < size; ++i, Next(problem, point)) {
      if (!Feasible(problem, point)) continue;
      best.Offer(ObjectiveValue(problem, point), i);
      if (!problem.objective) break;
    }
  }
  return MakeOutcome(problem, best);
}

SolveOutcome OracleSolveParallel(const Problem& problem, int threads) {
  const int64_t size = OracleSpaceSize(problem);
  Best best;
  if (size > 0) {
    const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel num_threads(nthreads)
    {
      Best local;
      Solution point(problem.num_vars());
      const int64_t tid = omp_get_thread_num();
      const int64_t nt = omp_get_num_threads();
      const int64_t begin = size * tid / nt;
      const int64_t end = size * (tid + 1) / nt;
      if (begin < end) Decode(problem, begin, point);
      for (int64_t i = begin; i < end; ++i, Next(problem, point)) {
        if (!Feasible(problem, point)) continue;
        local.Offer(ObjectiveValue(problem, point), i);
        if (!problem.objective) break;
      }
#pragma omp critical
      best.Merge(local);
    }
  }
  return MakeOutcome(problem, best);
}

std::vector<Solution> EnumerateSolutions(const Problem& problem) {
  const int64_t size = OracleSpaceSize(problem);
  std::vector<Solution> out;
  if (size == 0) return out;
  Solution point(problem.lb.begin(), problem.lb.end());
  for (int64_t i = 0; i < size; ++i, Next(problem, point)) {
    if (Feasible(problem, point)) out.push_back(point);
  }
  return out;
}

}  // namespace intsat
