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


// Decision heuristics and restart schedules.

#ifndef INTSAT_HEURISTICS_H_
#define INTSAT_HEURISTICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "intsat/model.h"

namespace intsat {

// Max-heap of variables by activity; ties favour the lower index.
class ActivityQueue {
 public:
  explicit ActivityQueue(int num_vars, double bump_factor = 1.05,
                         double rescale_cap = 1e100);

  bool Contains(VarId v) const { return index_[v.index()] >= 0; }
  bool empty() const { return heap_.empty(); }
  void Insert(VarId v);
  VarId Top() const { return VarId(heap_.front()); }
  VarId PopTop();

  double Activity(VarId v) const { return activity_[v.index()]; }
  double increment() const { return increment_; }
  // Adds the current increment to each variable (callers pass distinct
  // variables).
  void Bump(const std::vector<VarId>& vars);
  // Multiplies the increment by the bump factor.
  void Decay();
  // Sets a starting activity (before search).
  void SetActivity(VarId v, double a);

 private:
  bool Before(int a, int b) const;
  void SiftUp(int pos);
  void SiftDown(int pos);
  void Rescale();

  std::vector<double> activity_;
  std::vector<int> heap_;
  std::vector<int> index_;
  double increment_ = 1.0;
  double bump_factor_;
  double rescale_cap_;
};

struct DecisionContext {
  // Objective coefficient of the variable, 0 if none.
  Int objective_coeff = 0;
  std::optional<Int> last_value;
  std::optional<Int> last_solution_value;
  std::optional<Int> hint_value;
};

// Domain middle point, rounded toward minus infinity.
Int Midpoint(Int l, Int u);

// Bound realising value strategy 1..11 on a variable with domain [l, u],
// l < u, or nullopt when the strategy does not apply.
std::optional<Bound> StrategyBound(int strategy, VarId var, Int l, Int u,
                                   const DecisionContext& ctx);

// First applicable strategy along `order`.
Bound DecideBound(const std::vector<int>& order, VarId var, Int l, Int u,
                  const DecisionContext& ctx);

// Strategies 1..4 apply to any variable with a non-singleton domain.
bool IsTotalStrategy(int strategy);

// Luby sequence, 1-based: 1 1 2 1 1 2 4 1 1 2 ...
int64_t Luby(int64_t i);

class RestartSchedule {
 public:
  enum class Kind { kNone, kLuby, kInnerOuter };

  static RestartSchedule None();
  static RestartSchedule Luby(int64_t unit);
  static RestartSchedule InnerOuter(double inner, double outer, double factor);

  Kind kind() const { return kind_; }
  // Conflicts allowed before the next restart.
  int64_t threshold() const { return threshold_; }
  // Moves to the next threshold.
  void Advance();

  int64_t unit() const { return unit_; }
  double inner0() const { return inner0_; }
  double outer0() const { return outer0_; }
  double factor() const { return factor_; }

 private:
  Kind kind_ = Kind::kNone;
  int64_t threshold_ = INT64_MAX;
  int64_t unit_ = 0;
  int64_t index_ = 1;
  double inner0_ = 0, outer0_ = 0, factor_ = 1;
  double inner_ = 0, outer_ = 0;
};

}  // namespace intsat

#endif  // INTSAT_HEURISTICS_H_
