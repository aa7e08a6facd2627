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


#include "intsat/conflict_cut.h"

#include <cassert>
#include <set>

namespace intsat {

bool CutSkipCheck(const Constraint& cc, const Constraint& rc, VarId x) {
  const auto& a = cc.terms();
  const auto& b = rc.terms();
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].var < b[j].var) {
      ++i;
    } else if (b[j].var < a[i].var) {
      ++j;
    } else {
      if (a[i].var != x) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

ScanResult EarlyBackjumpScan(const Constraint& cc, const Trail& trail,
                             int top_level) {
  ScanResult result;
  std::set<int> levels = {0};
  for (const Monomial& m : cc.terms()) {
    for (int h = MinSideHeight(m.coeff, m.var, trail); h >= 0;
         h = trail.At(h).pos) {
      const int level = trail.DecisionLevelOf(h);
      if (level < top_level) levels.insert(level);
    }
  }
  for (int level : levels) {
    if (level >= top_level) break;
    PrefixView view(trail, trail.LevelStart(level + 1));
    if (IsConflict(cc, view)) {
      if (level == 0) result.kind = ScanResult::kFalseAtRoot;
      return result;
    }
    std::vector<Propagation> props = PropagateConstraint(cc, view);
    if (!props.empty()) {
      result.kind = ScanResult::kPropagates;
      result.level = level;
      result.bound = props.front().bound;
      result.reason_set = std::move(props.front().reason_set);
      return result;
    }
  }
  return result;
}

AnalysisResult AnalyzeHybrid(const Conflict& conflict,
                             const AnalysisInput& in) {
  const Trail& trail = in.trail;
  assert(trail.DecisionLevel() > 0);
  AnalysisResult result;
  result.used_constraints.push_back(conflict.constraint);
  ConflictingSet cs(conflict.cs, trail, &result.bumped_vars);
  Constraint cc = in.store.constraint(conflict.constraint);
  // Id of cc while it is still an existing stored constraint.
  int32_t cc_id = conflict.constraint;
  const int last_decision = trail.LevelStart(trail.DecisionLevel());
  while (true) {
    if (in.record_history) {
      result.cs_history.push_back(cs.Heights());
      result.cc_history.push_back(cc);
    }
    if (cs.CountAtOrAbove(last_decision) <= 1) break;
    const int32_t top = cs.RewriteTop();
    const TrailEntry& entry = trail.At(top);
    const int32_t rc_id = entry.info.reason_constraint;
    if (rc_id < 0 || !in.store.alive(rc_id)) continue;
    result.used_constraints.push_back(rc_id);
    const Constraint& rc = in.store.constraint(rc_id);
    std::optional<Constraint> cut = Cut(cc, rc, entry.bound.var);
    if (!cut) continue;
    const bool skip = CutSkipCheck(cc, rc, entry.bound.var);
    cc = std::move(*cut);
    cc_id = -1;
    if (cc.IsContradiction()) {
      result.infeasible = true;
      return result;
    }
    if (skip) continue;
    ScanResult scan = EarlyBackjumpScan(cc, trail, trail.DecisionLevel());
    if (scan.kind == ScanResult::kFalseAtRoot) {
      result.infeasible = true;
      return result;
    }
    if (scan.kind == ScanResult::kPropagates) {
      if (in.record_history) {
        result.cs_history.push_back(cs.Heights());
        result.cc_history.push_back(cc);
      }
      result.early_backjump = true;
      result.new_height = trail.LevelStart(scan.level + 1);
      result.bound = scan.bound;
      result.info.reason_set = std::move(scan.reason_set);
      result.info.reason_constraint = kLearnedReason;
      result.learned = std::move(cc);
      return result;
    }
  }
  const int32_t top = cs.Top();
  const std::vector<int32_t> heights = cs.Heights();
  result.new_height = BackjumpTarget(heights, top, trail);
  result.bound = NegateBound(trail.At(top).bound);
  for (int32_t h : heights) {
    if (h != top) result.info.reason_set.push_back(h);
  }
  if (cc_id >= 0) {
    result.info.reason_constraint = cc_id;
  } else {
    result.info.reason_constraint = kLearnedReason;
    result.learned = std::move(cc);
  }
  return result;
}

}  // namespace intsat
