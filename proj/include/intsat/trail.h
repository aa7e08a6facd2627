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


// The assignment stack. Every pushed bound records the height of the previous
// bound of the same kind on the same variable, which gives both O(1) undo of
// the per-variable bounds vector and a full bound history per (var, kind).

#ifndef INTSAT_TRAIL_H_
#define INTSAT_TRAIL_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "intsat/model.h"

namespace intsat {

// Values reported for a missing bound.
inline constexpr Int kMinusInf = -(Int{1} << 62);
inline constexpr Int kPlusInf = Int{1} << 62;

struct ReasonInfo {
  std::vector<int32_t> reason_set;  // trail heights, all below the entry
  int32_t reason_constraint = -1;   // constraint store id, -1 if none
  bool is_decision = false;

  static ReasonInfo Decision() {
    ReasonInfo r;
    r.is_decision = true;
    return r;
  }
};

struct TrailEntry {
  Bound bound;
  int32_t pos = -1;
  ReasonInfo info;
};

class Trail;

class TrailListener {
 public:
  virtual ~TrailListener() = default;
  virtual void OnPush(const Trail& trail, int height) = 0;
  // Called before the entry at `height` is removed.
  virtual void OnPop(const Trail& trail, int height) = 0;
};

class Trail {
 public:
  // Variables without a bound on the trail are unbounded.
  explicit Trail(int num_vars);
  // Variables without a bound on the trail fall back to lb/ub.
  Trail(std::vector<Int> lb, std::vector<Int> ub);

  int num_vars() const { return static_cast<int>(lower_.size()); }
  int Height() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  const TrailEntry& At(int height) const { return entries_[height]; }
  const TrailEntry& Top() const { return entries_.back(); }

  // Returns the height of the new entry. The bound must be fresh.
  int Push(const Bound& b, ReasonInfo info);
  Bound Pop();
  void PopTo(int height);
  // Drops the reason constraint of an entry (its constraint was deleted).
  void ClearReasonConstraint(int height) {
    entries_[height].info.reason_constraint = -1;
  }

  Int Lb(VarId v) const;
  Int Ub(VarId v) const;
  int LowerHeight(VarId v) const { return lower_[v.index()]; }
  int UpperHeight(VarId v) const { return upper_[v.index()]; }
  int HeightOf(VarId v, BoundKind kind) const {
    return kind == BoundKind::kLower ? LowerHeight(v) : UpperHeight(v);
  }
  Int FallbackLb(VarId v) const;
  Int FallbackUb(VarId v) const;
  bool IsFixed(VarId v) const { return Lb(v) == Ub(v); }

  // Strictly tightens the current interval and keeps it non-empty.
  bool IsFresh(const Bound& b) const;
  // The bound already holds (redundant).
  bool IsTrue(const Bound& b) const;
  // The bound contradicts the current interval.
  bool IsFalse(const Bound& b) const;

  int DecisionLevel() const { return static_cast<int>(decisions_.size()); }
  int DecisionLevelOf(int height) const;
  // Height at which `level` starts; level 0 starts at 0. Throws
  // std::out_of_range for levels outside [0, DecisionLevel()].
  int LevelStart(int level) const;
  const std::vector<int>& decision_heights() const { return decisions_; }

  // <v(A_0), ..., v(A_m)> where A_i is the prefix made of levels 0..i, v is
  // the total domain size, and m = sum(ub - lb) over the given box. Missing
  // bounds use the box.
  std::vector<Int> TerminationMeasure(std::span<const Int> lb,
                                      std::span<const Int> ub) const;

  void AddListener(TrailListener* listener);
  void RemoveListener(TrailListener* listener);

  // One line per entry:
  // "height kind var value level reason={h,..}|decision constraint=<id|none>"
  std::string Dump(const Problem* problem = nullptr) const;

 private:
  std::vector<TrailEntry> entries_;
  std::vector<int32_t> lower_;
  std::vector<int32_t> upper_;
  std::vector<Int> fallback_lb_;
  std::vector<Int> fallback_ub_;
  std::vector<int> decisions_;
  std::vector<TrailListener*> listeners_;
};

// True iff `a` is lexicographically smaller than `b`.
bool LexLess(std::span<const Int> a, std::span<const Int> b);

// Read-only view of the trail restricted to heights below `limit`, resolved
// through the pos chains.
class PrefixView {
 public:
  PrefixView(const Trail& trail, int limit) : trail_(trail), limit_(limit) {}

  int LowerHeight(VarId v) const { return Resolve(trail_.LowerHeight(v)); }
  int UpperHeight(VarId v) const { return Resolve(trail_.UpperHeight(v)); }
  Int Lb(VarId v) const {
    int h = LowerHeight(v);
    return h < 0 ? trail_.FallbackLb(v) : trail_.At(h).bound.value;
  }
  Int Ub(VarId v) const {
    int h = UpperHeight(v);
    return h < 0 ? trail_.FallbackUb(v) : trail_.At(h).bound.value;
  }

 private:
  int Resolve(int h) const {
    while (h >= limit_) h = trail_.At(h).pos;
    return h;
  }

  const Trail& trail_;
  int limit_;
};

// Plain box with no trail heights, for evaluating constraints on fixed
// intervals.
class BoxView {
 public:
  BoxView(std::span<const Int> lb, std::span<const Int> ub)
      : lb_(lb), ub_(ub) {}
  int LowerHeight(VarId) const { return -1; }
  int UpperHeight(VarId) const { return -1; }
  Int Lb(VarId v) const { return lb_[v.index()]; }
  Int Ub(VarId v) const { return ub_[v.index()]; }

 private:
  std::span<const Int> lb_;
  std::span<const Int> ub_;
};

}  // namespace intsat

#endif  // INTSAT_TRAIL_H_
