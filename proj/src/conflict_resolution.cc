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


#include "intsat/conflict_resolution.h"

#include <algorithm>
#include <cassert>

namespace intsat {

ConflictingSet::ConflictingSet(std::span<const int32_t> heights,
                               const Trail& trail, std::vector<VarId>* bumped)
    : trail_(trail), bumped_(bumped), seen_(trail.num_vars(), 0) {
  for (int32_t h : heights) Insert(h);
}

void ConflictingSet::Insert(int32_t h) {
  heights_.insert(h);
  const VarId v = trail_.At(h).bound.var;
  if (!seen_[v.index()]) {
    seen_[v.index()] = 1;
    bumped_->push_back(v);
  }
}

int ConflictingSet::CountAtOrAbove(int height) const {
  return static_cast<int>(
      std::distance(heights_.lower_bound(height), heights_.end()));
}

int32_t ConflictingSet::RewriteTop() {
  const int32_t top = Top();
  heights_.erase(top);
  for (int32_t r : trail_.At(top).info.reason_set) Insert(r);
  return top;
}

int BackjumpTarget(std::span<const int32_t> cs, int32_t top,
                   const Trail& trail) {
  int level = 0;
  for (int32_t h : cs) {
    if (h != top) level = std::max(level, trail.DecisionLevelOf(h));
  }
  return trail.LevelStart(level + 1);
}

std::optional<Constraint> ClauseToConstraint(std::span<const Bound> lits,
                                             const Problem& problem) {
  std::vector<VarId> pos;  // literal 1 <= x
  std::vector<VarId> neg;  // literal y <= 0
  std::optional<Bound> general;
  for (const Bound& lit : lits) {
    const int v = lit.var.index();
    const Int lb = problem.lb[v];
    const Int ub = problem.ub[v];
    if (lit.is_lower() ? lit.value > ub : lit.value < lb) continue;
    if (lit.is_lower() ? lit.value <= lb : lit.value >= ub) {
      return std::nullopt;  // tautology
    }
    if (problem.IsBinary(lit.var)) {
      auto& mine = lit.is_lower() ? pos : neg;
      auto& other = lit.is_lower() ? neg : pos;
      if (std::find(other.begin(), other.end(), lit.var) != other.end()) {
        return std::nullopt;  // x or not x
      }
      if (std::find(mine.begin(), mine.end(), lit.var) == mine.end()) {
        mine.push_back(lit.var);
      }
      continue;
    }
    if (general) return std::nullopt;
    general = lit;
  }
  // P = sum x + sum (1 - y) counts the true binary literals.
  const Int n_neg = static_cast<Int>(neg.size());
  std::vector<Monomial> terms;
  if (!general) {
    // P >= 1
    for (VarId x : pos) terms.push_back({x, -1});
    for (VarId y : neg) terms.push_back({y, 1});
    return Normalize(std::move(terms), n_neg - 1);
  }
  const VarId z = general->var;
  const Int k = general->value;
  Int factor;
  Int rhs;
  if (general->is_lower()) {
    // k - (k - lb) P <= z
    factor = k - problem.lb[z.index()];
    terms.push_back({z, -1});
    rhs = -k + factor * n_neg;
  } else {
    // z <= k + (ub - k) P
    factor = problem.ub[z.index()] - k;
    terms.push_back({z, 1});
    rhs = k + factor * n_neg;
  }
  if (factor > kCoeffCap) return std::nullopt;
  for (VarId x : pos) terms.push_back({x, -factor});
  for (VarId y : neg) terms.push_back({y, factor});
  return Normalize(std::move(terms), rhs);
}

AnalysisResult AnalyzeResolution(const Conflict& conflict,
                                 const AnalysisInput& in) {
  const Trail& trail = in.trail;
  assert(trail.DecisionLevel() > 0);
  AnalysisResult result;
  result.used_constraints.push_back(conflict.constraint);
  ConflictingSet cs(conflict.cs, trail, &result.bumped_vars);
  const int last_decision = trail.LevelStart(trail.DecisionLevel());
  while (true) {
    if (in.record_history) result.cs_history.push_back(cs.Heights());
    if (cs.CountAtOrAbove(last_decision) <= 1) break;
    const int32_t top = cs.RewriteTop();
    const int32_t rc = trail.At(top).info.reason_constraint;
    if (rc >= 0) result.used_constraints.push_back(rc);
  }
  const int32_t top = cs.Top();
  const std::vector<int32_t> heights = cs.Heights();
  result.new_height = BackjumpTarget(heights, top, trail);
  result.bound = NegateBound(trail.At(top).bound);
  for (int32_t h : heights) {
    if (h != top) result.info.reason_set.push_back(h);
  }
  std::vector<Bound> clause;
  clause.reserve(heights.size());
  for (int32_t h : heights) clause.push_back(NegateBound(trail.At(h).bound));
  result.learned = ClauseToConstraint(clause, in.problem);
  return result;
}

}  // namespace intsat
