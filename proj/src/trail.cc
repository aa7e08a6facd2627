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


#include "intsat/trail.h"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>

namespace intsat {

Trail::Trail(int num_vars)
    : lower_(num_vars, -1),
      upper_(num_vars, -1),
      fallback_lb_(num_vars, kMinusInf),
      fallback_ub_(num_vars, kPlusInf) {}

Trail::Trail(std::vector<Int> lb, std::vector<Int> ub)
    : lower_(lb.size(), -1),
      upper_(lb.size(), -1),
      fallback_lb_(std::move(lb)),
      fallback_ub_(std::move(ub)) {}

Int Trail::FallbackLb(VarId v) const { return fallback_lb_[v.index()]; }
Int Trail::FallbackUb(VarId v) const { return fallback_ub_[v.index()]; }

Int Trail::Lb(VarId v) const {
  int h = lower_[v.index()];
  return h < 0 ? fallback_lb_[v.index()] : entries_[h].bound.value;
}

Int Trail::Ub(VarId v) const {
  int h = upper_[v.index()];
  return h < 0 ? fallback_ub_[v.index()] : entries_[h].bound.value;
}

bool Trail::IsFresh(const Bound& b) const {
  if (b.is_lower()) return Lb(b.var) < b.value && b.value <= Ub(b.var);
  return Lb(b.var) <= b.value && b.value < Ub(b.var);
}

bool Trail::IsTrue(const Bound& b) const {
  return b.is_lower() ? b.value <= Lb(b.var) : Ub(b.var) <= b.value;
}

bool Trail::IsFalse(const Bound& b) const {
  return b.is_lower() ? b.value > Ub(b.var) : b.value < Lb(b.var);
}

int Trail::Push(const Bound& b, ReasonInfo info) {
  assert(IsFresh(b));
  assert(!info.is_decision ||
         (info.reason_set.empty() && info.reason_constraint < 0));
  const int height = Height();
  int32_t& slot = b.is_lower() ? lower_[b.var.index()] : upper_[b.var.index()];
  if (info.is_decision) decisions_.push_back(height);
  entries_.push_back(TrailEntry{b, slot, std::move(info)});
  slot = height;
  for (TrailListener* l : listeners_) l->OnPush(*this, height);
  return height;
}

Bound Trail::Pop() {
  assert(!entries_.empty());
  const int height = Height() - 1;
  for (TrailListener* l : listeners_) l->OnPop(*this, height);
  const TrailEntry& e = entries_.back();
  int32_t& slot = e.bound.is_lower() ? lower_[e.bound.var.index()]
                                     : upper_[e.bound.var.index()];
  slot = e.pos;
  if (e.info.is_decision) decisions_.pop_back();
  Bound b = e.bound;
  entries_.pop_back();
  return b;
}

void Trail::PopTo(int height) {
  while (Height() > height) Pop();
}

int Trail::DecisionLevelOf(int height) const {
  if (height < 0 || height >= Height()) {
    throw std::out_of_range("trail height out of range");
  }
  return static_cast<int>(
      std::upper_bound(decisions_.begin(), decisions_.end(), height) -
      decisions_.begin());
}

int Trail::LevelStart(int level) const {
  if (level < 0 || level > DecisionLevel()) {
    throw std::out_of_range("decision level out of range");
  }
  return level == 0 ? 0 : decisions_[level - 1];
}

std::vector<Int> Trail::TerminationMeasure(std::span<const Int> lb,
                                           std::span<const Int> ub) const {
  Int m = 0;
  Int total = 0;
  std::vector<Int> cur_lb(lb.begin(), lb.end());
  std::vector<Int> cur_ub(ub.begin(), ub.end());
  for (size_t i = 0; i < lb.size(); ++i) {
    m += ub[i] - lb[i];
    total += ub[i] - lb[i] + 1;
  }
  std::vector<Int> out;
  out.reserve(m + 1);
  for (const TrailEntry& e : entries_) {
    if (e.info.is_decision) out.push_back(total);
    const int v = e.bound.var.index();
    const Int before = cur_ub[v] - cur_lb[v] + 1;
    if (e.bound.is_lower()) {
      cur_lb[v] = std::max(cur_lb[v], e.bound.value);
    } else {
      cur_ub[v] = std::min(cur_ub[v], e.bound.value);
    }
    total += (cur_ub[v] - cur_lb[v] + 1) - before;
  }
  while (static_cast<Int>(out.size()) < m + 1) out.push_back(total);
  return out;
}

void Trail::AddListener(TrailListener* listener) {
  listeners_.push_back(listener);
}

void Trail::RemoveListener(TrailListener* listener) {
  std::erase(listeners_, listener);
}

std::string Trail::Dump(const Problem* problem) const {
  std::ostringstream os;
  for (int h = 0; h < Height(); ++h) {
    const TrailEntry& e = entries_[h];
    os << h << ' ' << (e.bound.is_lower() ? "lower" : "upper") << ' ';
    if (problem != nullptr) {
      os << problem->NameOf(e.bound.var);
    } else {
      os << 'x' << e.bound.var.index();
    }
    os << ' ' << e.bound.value << ' ' << DecisionLevelOf(h) << ' ';
    if (e.info.is_decision) {
      os << "decision";
    } else {
      os << "reason={";
      for (size_t i = 0; i < e.info.reason_set.size(); ++i) {
        if (i > 0) os << ',';
        os << e.info.reason_set[i];
      }
      os << '}';
    }
    os << " constraint=";
    if (e.info.reason_constraint < 0) {
      os << "none";
    } else {
      os << e.info.reason_constraint;
    }
    os << '\n';
  }
  return os.str();
}

bool LexLess(std::span<const Int> a, std::span<const Int> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace intsat
