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


// Resolution-based conflict analysis: the conflicting set is rewritten by
// replacing its topmost bound with that bound's reason set until a single
// bound remains at or above the last decision. The negation of that bound is
// pushed after backjumping, and the clause made of the negated conflicting
// set is learned when it has an equivalent linear form.

#ifndef INTSAT_CONFLICT_RESOLUTION_H_
#define INTSAT_CONFLICT_RESOLUTION_H_

#include <optional>
#include <set>
#include <span>
#include <vector>

#include "intsat/model.h"
#include "intsat/propagation.h"
#include "intsat/trail.h"

namespace intsat {

enum class AnalysisMode { kResolution, kCut };

// Reason constraint placeholder for "the constraint learned by this analysis".
inline constexpr int32_t kLearnedReason = -2;

struct AnalysisResult {
  // S was proved infeasible during analysis.
  bool infeasible = false;
  // Pop the trail to this height, then push `bound` with `info`.
  int new_height = 0;
  Bound bound;
  ReasonInfo info;
  std::optional<Constraint> learned;
  bool early_backjump = false;
  std::vector<VarId> bumped_vars;        // distinct
  std::vector<int32_t> used_constraints;  // conflict and reason constraints
  // Filled only when requested: every conflicting set (sorted heights) and,
  // in cut mode, every conflicting constraint seen during analysis.
  std::vector<std::vector<int32_t>> cs_history;
  std::vector<Constraint> cc_history;
};

struct AnalysisInput {
  const Problem& problem;
  const Trail& trail;
  const ConstraintStore& store;
  bool record_history = false;
};

// Conflicting set as trail heights. Every variable whose bound enters the
// set is recorded once in `bumped`.
class ConflictingSet {
 public:
  ConflictingSet(std::span<const int32_t> heights, const Trail& trail,
                 std::vector<VarId>* bumped);

  int CountAtOrAbove(int height) const;
  int32_t Top() const { return *heights_.rbegin(); }
  bool empty() const { return heights_.empty(); }
  // Replaces the topmost bound by its reason set; returns its height.
  int32_t RewriteTop();
  std::vector<int32_t> Heights() const {
    return {heights_.begin(), heights_.end()};
  }

 private:
  void Insert(int32_t h);

  const Trail& trail_;
  std::set<int32_t> heights_;
  std::vector<VarId>* bumped_;
  std::vector<uint8_t> seen_;
};

// Requires a decision on the trail and a conflicting set reaching the
// current decision level. Does not modify the trail.
AnalysisResult AnalyzeResolution(const Conflict& conflict,
                                 const AnalysisInput& in);

// Height to pop to: the start of level l + 1 where l is the highest level of
// the conflicting set once `top` is removed.
int BackjumpTarget(std::span<const int32_t> cs, int32_t top,
                   const Trail& trail);

// Equivalent linear form of a disjunction of bounds over the problem's box.
// Literals false on the whole box are dropped. Absent unless at most one
// non-binary variable occurs, and it occurs once.
std::optional<Constraint> ClauseToConstraint(std::span<const Bound> lits,
                                             const Problem& problem);

}  // namespace intsat

#endif  // INTSAT_CONFLICT_RESOLUTION_H_
