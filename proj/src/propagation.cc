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


#include "intsat/propagation.h"

#include <cassert>

namespace intsat {
namespace {

Int Saturate(Wide v) {
  if (v > kPlusInf) return kPlusInf;
  if (v < -kPlusInf) return -kPlusInf;
  return static_cast<Int>(v);
}

int64_t Footprint(const Constraint& c) {
  return static_cast<int64_t>(sizeof(StoredConstraint) +
                              c.size() * sizeof(Monomial));
}

}  // namespace

int32_t ConstraintStore::Add(Constraint c, bool initial, Tier tier) {
  bytes_ += Footprint(c);
  if (!initial) ++learned_alive_;
  items_.push_back(StoredConstraint{std::move(c), tier, true, initial});
  return static_cast<int32_t>(items_.size() - 1);
}

void ConstraintStore::Remove(int32_t id) {
  StoredConstraint& s = items_[id];
  if (!s.alive) return;
  bytes_ -= Footprint(s.constraint);
  if (!s.initial) --learned_alive_;
  s.alive = false;
  s.constraint = Constraint();
}

bool IsClauseShaped(const Constraint& c, const Problem& problem) {
  if (c.empty()) return false;
  Int positives = 0;
  for (const Monomial& m : c.terms()) {
    if (m.coeff != 1 && m.coeff != -1) return false;
    if (!problem.IsBinary(m.var)) return false;
    if (m.coeff > 0) ++positives;
  }
  return c.rhs() == positives - 1;
}

Tier TierFor(const Constraint& c, const Problem& problem) {
  if (c.size() < 2 || !IsClauseShaped(c, problem)) return Tier::kGeneral;
  return c.size() == 2 ? Tier::kBinary : Tier::kClause;
}

Propagator::Propagator(const Problem& problem, Trail& trail,
                       ConstraintStore& store)
    : problem_(problem), trail_(trail), store_(store) {
  const int n = trail.num_vars();
  pos_occ_.resize(n);
  neg_occ_.resize(n);
  implications_.resize(2 * n);
  watches_.resize(2 * n);
  implicit_.resize(n);
  trail_.AddListener(this);
  Rebuild();
}

Propagator::~Propagator() { trail_.RemoveListener(this); }

void Propagator::EnsureCapacity(int32_t id) {
  if (id < static_cast<int32_t>(filter_.size())) return;
  filter_.resize(id + 1, 0);
  in_queue_.resize(id + 1, 0);
  clause_lits_.resize(id + 1);
}

void Propagator::Enqueue(int32_t id) {
  if (in_queue_[id]) return;
  in_queue_[id] = 1;
  queue_.push_back(id);
}

void Propagator::Attach(int32_t id) {
  EnsureCapacity(id);
  const StoredConstraint& s = store_.at(id);
  const Constraint& c = s.constraint;
  switch (s.tier) {
    case Tier::kBinary: {
      const Bound l1 = TermLiteral(c.terms()[0]);
      const Bound l2 = TermLiteral(c.terms()[1]);
      implications_[LitCode(Complement(l1))].push_back({l2, id});
      implications_[LitCode(Complement(l2))].push_back({l1, id});
      break;
    }
    case Tier::kClause: {
      std::vector<Bound>& lits = clause_lits_[id];
      lits.clear();
      for (const Monomial& m : c.terms()) lits.push_back(TermLiteral(m));
      std::stable_partition(lits.begin(), lits.end(), [&](const Bound& l) {
        return !trail_.IsFalse(l);
      });
      watches_[LitCode(Complement(lits[0]))].push_back(id);
      watches_[LitCode(Complement(lits[1]))].push_back(id);
      break;
    }
    case Tier::kGeneral: {
      for (const Monomial& m : c.terms()) {
        auto& list = m.coeff > 0 ? pos_occ_[m.var.index()]
                                 : neg_occ_[m.var.index()];
        list.push_back({id, m.coeff});
      }
      const Int old = filter_[id];
      filter_[id] = Saturate(ExactFilter(c, trail_));
      undo_.push_back({trail_.Height() - 1, id, old, true});
      if (filter_[id] > 0) Enqueue(id);
      break;
    }
  }
}

void Propagator::Rebuild() {
  for (auto& l : pos_occ_) l.clear();
  for (auto& l : neg_occ_) l.clear();
  for (auto& l : implications_) l.clear();
  for (auto& l : watches_) l.clear();
  for (auto& l : implicit_) l.clear();
  queue_.clear();
  std::fill(in_queue_.begin(), in_queue_.end(), 0);
  undo_.clear();
  pending_.clear();
  for (int32_t id = 0; id < store_.size(); ++id) {
    if (store_.alive(id)) Attach(id);
  }
  undo_.clear();
  binary_cursor_ = 0;
  clause_cursor_ = 0;
}

void Propagator::CompactUndoLog() {
  if (trail_.DecisionLevel() == 0) undo_.clear();
}

bool Propagator::HasPendingWork() const {
  return binary_cursor_ < trail_.Height() ||
         clause_cursor_ < trail_.Height() || !queue_.empty() ||
         !pending_.empty();
}

void Propagator::ApplyFilterUpdates(int height) {
  const TrailEntry& e = trail_.At(height);
  const VarId v = e.bound.var;
  const Int k = e.bound.value;
  if (e.bound.is_lower()) {
    const Int prev = e.pos >= 0 ? trail_.At(e.pos).bound.value
                                : trail_.FallbackLb(v);
    for (const Occurrence& o : pos_occ_[v.index()]) {
      const Wide delta = prev <= kMinusInf
                             ? static_cast<Wide>(kPlusInf)
                             : static_cast<Wide>(o.coeff) * (k - prev);
      undo_.push_back({height, o.id, filter_[o.id], false});
      filter_[o.id] = Saturate(filter_[o.id] + delta);
      if (filter_[o.id] > 0) Enqueue(o.id);
    }
  } else {
    const Int prev = e.pos >= 0 ? trail_.At(e.pos).bound.value
                                : trail_.FallbackUb(v);
    for (const Occurrence& o : neg_occ_[v.index()]) {
      const Wide delta = prev >= kPlusInf
                             ? static_cast<Wide>(kPlusInf)
                             : static_cast<Wide>(-o.coeff) * (prev - k);
      undo_.push_back({height, o.id, filter_[o.id], false});
      filter_[o.id] = Saturate(filter_[o.id] + delta);
      if (filter_[o.id] > 0) Enqueue(o.id);
    }
  }
}

void Propagator::OnPush(const Trail&, int height) {
  ApplyFilterUpdates(height);
}

void Propagator::OnPop(const Trail&, int height) {
  while (!undo_.empty() && undo_.back().tag >= height) {
    const UndoRecord& r = undo_.back();
    if (r.created) {
      filter_[r.id] = kPlusInf;
      pending_.push_back(r.id);
    } else {
      filter_[r.id] = r.old_value;
    }
    undo_.pop_back();
  }
  binary_cursor_ = std::min(binary_cursor_, height);
  clause_cursor_ = std::min(clause_cursor_, height);
}

std::optional<Conflict> Propagator::VisitGeneral(int32_t id,
                                                 int64_t* counter) {
  ++stats_.visits;
  const Constraint& c = store_.constraint(id);
  if (auto cs = IsConflict(c, trail_)) {
    return Conflict{id, std::move(*cs)};
  }
  for (Propagation& p : PropagateConstraint(c, trail_)) {
    if (!trail_.IsFresh(p.bound)) continue;
    ReasonInfo info;
    info.reason_set = std::move(p.reason_set);
    info.reason_constraint = id;
    trail_.Push(p.bound, std::move(info));
    ++*counter;
  }
  const Int old = filter_[id];
  filter_[id] = Saturate(ExactFilter(c, trail_));
  undo_.push_back({trail_.Height() - 1, id, old, false});
  return std::nullopt;
}

std::optional<Conflict> Propagator::ProcessBinary(int height) {
  const Bound b = trail_.At(height).bound;
  if (!problem_.IsBinary(b.var) || !IsLiteral(b)) return std::nullopt;
  for (const Implication& imp : implications_[LitCode(b)]) {
    if (!store_.alive(imp.id) || trail_.IsTrue(imp.implied)) continue;
    const Constraint& c = store_.constraint(imp.id);
    if (trail_.IsFalse(imp.implied)) {
      return Conflict{imp.id, MinSideHeights(c, trail_)};
    }
    ReasonInfo info;
    info.reason_set = MinSideHeights(c, trail_, imp.implied.var);
    info.reason_constraint = imp.id;
    trail_.Push(imp.implied, std::move(info));
    ++stats_.binary;
  }
  if (use_implicit_ && b.is_lower()) {
    for (int32_t id : implicit_[b.var.index()]) {
      if (!store_.alive(id)) continue;
      if (auto conflict = VisitGeneral(id, &stats_.implicit_binary)) {
        return conflict;
      }
    }
  }
  return std::nullopt;
}

std::optional<Conflict> Propagator::ProcessClauses(int height) {
  const Bound b = trail_.At(height).bound;
  if (!problem_.IsBinary(b.var) || !IsLiteral(b)) return std::nullopt;
  std::vector<int32_t>& list = watches_[LitCode(b)];
  const Bound falsified = Complement(b);
  size_t keep = 0;
  std::optional<Conflict> conflict;
  size_t i = 0;
  for (; i < list.size(); ++i) {
    const int32_t id = list[i];
    if (!store_.alive(id)) continue;
    std::vector<Bound>& lits = clause_lits_[id];
    if (lits[0] == falsified) std::swap(lits[0], lits[1]);
    if (lits[1] != falsified) continue;  // stale watch
    if (trail_.IsTrue(lits[0])) {
      list[keep++] = id;
      continue;
    }
    bool moved = false;
    for (size_t k = 2; k < lits.size(); ++k) {
      if (!trail_.IsFalse(lits[k])) {
        std::swap(lits[1], lits[k]);
        watches_[LitCode(Complement(lits[1]))].push_back(id);
        moved = true;
        break;
      }
    }
    if (moved) continue;
    list[keep++] = id;
    const Constraint& c = store_.constraint(id);
    if (trail_.IsFalse(lits[0])) {
      conflict = Conflict{id, MinSideHeights(c, trail_)};
      ++i;
      break;
    }
    ReasonInfo info;
    info.reason_set = MinSideHeights(c, trail_, lits[0].var);
    info.reason_constraint = id;
    trail_.Push(lits[0], std::move(info));
    ++stats_.clause;
  }
  for (; i < list.size(); ++i) list[keep++] = list[i];
  list.resize(keep);
  return conflict;
}

std::optional<Conflict> Propagator::PropagateFixpoint() {
  while (true) {
    if (!pending_.empty()) {
      for (int32_t id : pending_) {
        if (store_.alive(id)) Enqueue(id);
      }
      pending_.clear();
    }
    const int height = trail_.Height();
    if (binary_cursor_ < height) {
      if (auto c = ProcessBinary(binary_cursor_++)) return c;
      continue;
    }
    if (clause_cursor_ < height) {
      if (auto c = ProcessClauses(clause_cursor_++)) return c;
      continue;
    }
    if (!queue_.empty()) {
      const int32_t id = queue_.front();
      queue_.pop_front();
      in_queue_[id] = 0;
      if (!store_.alive(id) || store_.at(id).tier != Tier::kGeneral) continue;
      if (auto c = VisitGeneral(id, &stats_.general)) return c;
      continue;
    }
    return std::nullopt;
  }
}

int Propagator::DetectImplicitBinaries() {
  for (auto& l : implicit_) l.clear();
  int count = 0;
  for (int32_t id = 0; id < store_.size(); ++id) {
    const StoredConstraint& s = store_.at(id);
    if (!s.alive || s.tier != Tier::kGeneral) continue;
    const Constraint& c = s.constraint;
    Wide min_sum = 0;
    bool finite = true;
    for (const Monomial& m : c.terms()) {
      auto mc = MinContribution(m.coeff, m.var, trail_);
      if (!mc) {
        finite = false;
        break;
      }
      min_sum += *mc;
    }
    if (!finite) continue;
    const Wide slack = static_cast<Wide>(c.rhs()) - min_sum;
    std::vector<Monomial> cands;
    for (const Monomial& m : c.terms()) {
      if (m.coeff > 0 && problem_.IsBinary(m.var) &&
          trail_.Lb(m.var) == 0 && trail_.Ub(m.var) == 1) {
        cands.push_back(m);
      }
    }
    if (cands.size() < 2) continue;
    std::sort(cands.begin(), cands.end(),
              [](const Monomial& a, const Monomial& b) {
                return a.coeff > b.coeff;
              });
    if (static_cast<Wide>(cands[0].coeff) + cands[1].coeff <= slack) continue;
    ++count;
    for (size_t i = 0; i < cands.size(); ++i) {
      const Int other = i == 0 ? cands[1].coeff : cands[0].coeff;
      if (static_cast<Wide>(cands[i].coeff) + other > slack) {
        implicit_[cands[i].var.index()].push_back(id);
      }
    }
  }
  return count;
}

}  // namespace intsat
