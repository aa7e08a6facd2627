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


#include "intsat/heuristics.h"

#include <cmath>
#include <stdexcept>

namespace intsat {

ActivityQueue::ActivityQueue(int num_vars, double bump_factor,
                             double rescale_cap)
    : activity_(num_vars, 0.0),
      index_(num_vars, -1),
      bump_factor_(bump_factor),
      rescale_cap_(rescale_cap) {
  for (int v = 0; v < num_vars; ++v) Insert(VarId(v));
}

bool ActivityQueue::Before(int a, int b) const {
  if (activity_[a] != activity_[b]) return activity_[a] > activity_[b];
  return a < b;
}

void ActivityQueue::SiftUp(int pos) {
  const int v = heap_[pos];
  while (pos > 0) {
    const int parent = (pos - 1) / 2;
    if (!Before(v, heap_[parent])) break;
    heap_[pos] = heap_[parent];
    index_[heap_[pos]] = pos;
    pos = parent;
  }
  heap_[pos] = v;
  index_[v] = pos;
}

void ActivityQueue::SiftDown(int pos) {
  const int v = heap_[pos];
  const int n = static_cast<int>(heap_.size());
  while (true) {
    int child = 2 * pos + 1;
    if (child >= n) break;
    if (child + 1 < n && Before(heap_[child + 1], heap_[child])) ++child;
    if (!Before(heap_[child], v)) break;
    heap_[pos] = heap_[child];
    index_[heap_[pos]] = pos;
    pos = child;
  }
  heap_[pos] = v;
  index_[v] = pos;
}

void ActivityQueue::Insert(VarId v) {
  if (Contains(v)) return;
  heap_.push_back(v.index());
  index_[v.index()] = static_cast<int>(heap_.size() - 1);
  SiftUp(index_[v.index()]);
}

VarId ActivityQueue::PopTop() {
  const int top = heap_.front();
  index_[top] = -1;
  const int last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    index_[last] = 0;
    SiftDown(0);
  }
  return VarId(top);
}

void ActivityQueue::SetActivity(VarId v, double a) {
  activity_[v.index()] = a;
  if (Contains(v)) {
    SiftUp(index_[v.index()]);
    SiftDown(index_[v.index()]);
  }
}

void ActivityQueue::Bump(const std::vector<VarId>& vars) {
  for (VarId v : vars) {
    activity_[v.index()] += increment_;
    if (Contains(v)) SiftUp(index_[v.index()]);
    if (activity_[v.index()] > rescale_cap_) Rescale();
  }
}

void ActivityQueue::Decay() {
  increment_ *= bump_factor_;
  if (increment_ > rescale_cap_) Rescale();
}

void ActivityQueue::Rescale() {
  const double scale = 1.0 / rescale_cap_;
  for (double& a : activity_) a *= scale;
  increment_ *= scale;
}

Int Midpoint(Int l, Int u) { return FloorDiv(l + u, Int{2}); }

bool IsTotalStrategy(int strategy) { return strategy >= 1 && strategy <= 4; }

namespace {

// Domain [lo, hi] where either lo == l or hi is the current upper bound.
Bound ReduceTo(VarId x, Int l, Int lo, Int hi) {
  return lo == l ? Bound::Upper(x, hi) : Bound::Lower(x, lo);
}

Bound Rule7(VarId x, Int l, Int u, Int v) {
  const Int m = Midpoint(l, u);
  return v <= m ? ReduceTo(x, l, l, m) : ReduceTo(x, l, m + 1, u);
}

Bound Rule8(VarId x, Int l, Int u, Int v) {
  const Int m = Midpoint(l, u);
  return v <= m ? Bound::Upper(x, l) : Bound::Lower(x, u);
}

std::optional<Bound> Rule9(VarId x, Int l, Int u, Int v) {
  if (v < l || v > u) return std::nullopt;
  if (v == l) return Bound::Upper(x, l);
  if (v == u) return Bound::Lower(x, u);
  if (v - l < u - v) return Bound::Upper(x, v);
  return Bound::Lower(x, v);
}

}  // namespace

std::optional<Bound> StrategyBound(int strategy, VarId x, Int l, Int u,
                                   const DecisionContext& ctx) {
  const Int m = Midpoint(l, u);
  switch (strategy) {
    case 1:
      return Bound::Lower(x, m + 1);
    case 2:
      return Bound::Lower(x, u);
    case 3:
      return Bound::Upper(x, m);
    case 4:
      return Bound::Upper(x, l);
    case 5:
    case 6: {
      if (ctx.objective_coeff == 0) return std::nullopt;
      const Int v = ctx.objective_coeff > 0 ? l : u;
      if (strategy == 6) {
        return v == l ? Bound::Upper(x, l) : Bound::Lower(x, u);
      }
      return v == l ? Bound::Upper(x, m) : Bound::Lower(x, m + 1);
    }
    case 7:
      if (!ctx.last_value) return std::nullopt;
      return Rule7(x, l, u, *ctx.last_value);
    case 8:
      if (!ctx.last_value) return std::nullopt;
      return Rule8(x, l, u, *ctx.last_value);
    case 9:
      if (!ctx.last_value) return std::nullopt;
      return Rule9(x, l, u, *ctx.last_value);
    case 10:
    case 11: {
      const std::optional<Int>& ref =
          strategy == 10 ? ctx.last_solution_value : ctx.hint_value;
      if (!ref) return std::nullopt;
      if (auto b = Rule9(x, l, u, *ref)) return b;
      return Rule7(x, l, u, *ref);
    }
    default:
      throw std::invalid_argument("unknown value strategy " +
                                  std::to_string(strategy));
  }
}

Bound DecideBound(const std::vector<int>& order, VarId var, Int l, Int u,
                  const DecisionContext& ctx) {
  for (int s : order) {
    if (auto b = StrategyBound(s, var, l, u, ctx)) return *b;
  }
  return Bound::Lower(var, Midpoint(l, u) + 1);
}

int64_t Luby(int64_t i) {
  // Find the finite subsequence containing index i and its size 2^k - 1.
  int64_t size = 1;
  int k = 1;
  while (size < i) {
    size = 2 * size + 1;
    ++k;
  }
  while (size != i) {
    size = (size - 1) / 2;
    --k;
    if (i > size) i -= size;
  }
  return int64_t{1} << (k - 1);
}

RestartSchedule RestartSchedule::None() { return RestartSchedule(); }

RestartSchedule RestartSchedule::Luby(int64_t unit) {
  if (unit <= 0) throw std::invalid_argument("luby unit must be positive");
  RestartSchedule s;
  s.kind_ = Kind::kLuby;
  s.unit_ = unit;
  s.index_ = 1;
  s.threshold_ = unit * intsat::Luby(1);
  return s;
}

RestartSchedule RestartSchedule::InnerOuter(double inner, double outer,
                                            double factor) {
  if (inner <= 0 || outer < inner || factor <= 1.0) {
    throw std::invalid_argument(
        "inner-outer restarts need 0 < inner <= outer and factor > 1");
  }
  RestartSchedule s;
  s.kind_ = Kind::kInnerOuter;
  s.inner0_ = inner;
  s.outer0_ = outer;
  s.factor_ = factor;
  s.inner_ = inner;
  s.outer_ = outer;
  s.threshold_ = static_cast<int64_t>(std::llround(inner));
  return s;
}

void RestartSchedule::Advance() {
  switch (kind_) {
    case Kind::kNone:
      return;
    case Kind::kLuby:
      ++index_;
      threshold_ = unit_ * intsat::Luby(index_);
      return;
    case Kind::kInnerOuter:
      inner_ *= factor_;
      if (inner_ > outer_) {
        inner_ = inner0_;
        outer_ *= factor_;
      }
      threshold_ = static_cast<int64_t>(std::llround(inner_));
      return;
  }
}

}  // namespace intsat
