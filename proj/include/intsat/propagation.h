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


// Bound propagation. The free functions evaluate one constraint against any
// bounds view (the live trail, a trail prefix, or a plain box). Propagator
// runs the three-tier fixpoint on a live trail: binary clauses through the
// binary graph, longer clauses through two watched literals, and general
// constraints through occurs lists guarded by filters.

#ifndef INTSAT_PROPAGATION_H_
#define INTSAT_PROPAGATION_H_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "intsat/model.h"
#include "intsat/trail.h"

namespace intsat {

template <class View>
concept BoundsView = requires(const View& v, VarId x) {
  { v.Lb(x) } -> std::convertible_to<Int>;
  { v.Ub(x) } -> std::convertible_to<Int>;
  { v.LowerHeight(x) } -> std::convertible_to<int>;
  { v.UpperHeight(x) } -> std::convertible_to<int>;
};

// min over the current box of a*x; nullopt stands for minus infinity.
template <BoundsView View>
std::optional<Wide> MinContribution(Int a, VarId x, const View& view) {
  if (a > 0) {
    Int lb = view.Lb(x);
    if (lb <= kMinusInf) return std::nullopt;
    return static_cast<Wide>(a) * lb;
  }
  Int ub = view.Ub(x);
  if (ub >= kPlusInf) return std::nullopt;
  return static_cast<Wide>(a) * ub;
}

// Height of the bound giving the min-side of a*x, -1 if not on the trail.
template <BoundsView View>
int MinSideHeight(Int a, VarId x, const View& view) {
  return a > 0 ? view.LowerHeight(x) : view.UpperHeight(x);
}

struct Conflict {
  int32_t constraint = -1;
  std::vector<int32_t> cs;  // sorted trail heights
};

// Heights of the min-side bounds of every variable of c except `skip`.
template <BoundsView View>
std::vector<int32_t> MinSideHeights(const Constraint& c, const View& view,
                                    VarId skip = VarId()) {
  std::vector<int32_t> out;
  out.reserve(c.size());
  for (const Monomial& m : c.terms()) {
    if (m.var == skip) continue;
    int h = MinSideHeight(m.coeff, m.var, view);
    if (h >= 0) out.push_back(h);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// c is false under the view iff the sum of min contributions exceeds rhs.
// The conflicting set is the min-side bounds of all variables.
template <BoundsView View>
std::optional<std::vector<int32_t>> IsConflict(const Constraint& c,
                                               const View& view) {
  Wide sum = 0;
  for (const Monomial& m : c.terms()) {
    std::optional<Wide> mc = MinContribution(m.coeff, m.var, view);
    if (!mc) return std::nullopt;
    sum += *mc;
  }
  if (sum <= c.rhs()) return std::nullopt;
  return MinSideHeights(c, view);
}

struct Propagation {
  Bound bound;
  std::vector<int32_t> reason_set;
};

// Fresh bounds propagated by c, in variable order. Requires that c is not a
// conflict under the view.
template <BoundsView View>
std::vector<Propagation> PropagateConstraint(const Constraint& c,
                                             const View& view) {
  std::vector<Propagation> out;
  Wide finite_sum = 0;
  int infinite = 0;
  std::vector<std::optional<Wide>> mins;
  mins.reserve(c.size());
  for (const Monomial& m : c.terms()) {
    mins.push_back(MinContribution(m.coeff, m.var, view));
    if (mins.back()) {
      finite_sum += *mins.back();
    } else {
      ++infinite;
    }
  }
  if (infinite > 1) return out;
  for (size_t j = 0; j < c.size(); ++j) {
    const Monomial& m = c.terms()[j];
    if (infinite == 1 && mins[j]) continue;
    const Wide rest = mins[j] ? finite_sum - *mins[j] : finite_sum;
    const Wide e = static_cast<Wide>(c.rhs()) - rest;
    const Int lb = view.Lb(m.var);
    const Int ub = view.Ub(m.var);
    if (m.coeff > 0) {
      const Wide k = FloorDiv(e, static_cast<Wide>(m.coeff));
      if (k >= ub || k < lb) continue;
      out.push_back({Bound::Upper(m.var, static_cast<Int>(k)),
                     MinSideHeights(c, view, m.var)});
    } else {
      const Wide k = CeilDiv(e, static_cast<Wide>(m.coeff));
      if (k <= lb || k > ub) continue;
      out.push_back({Bound::Lower(m.var, static_cast<Int>(k)),
                     MinSideHeights(c, view, m.var)});
    }
  }
  return out;
}

// F' = -a0 + max_j |a_j| (ub_j - lb_j) + sum_i min(a_i x_i). Saturates to
// kPlusInf when some bound is missing.
template <BoundsView View>
Wide ExactFilter(const Constraint& c, const View& view) {
  Wide sum = -static_cast<Wide>(c.rhs());
  Wide widest = 0;
  for (const Monomial& m : c.terms()) {
    const Int lb = view.Lb(m.var);
    const Int ub = view.Ub(m.var);
    if (lb <= kMinusInf || ub >= kPlusInf) return kPlusInf;
    const Wide a = m.coeff < 0 ? -static_cast<Wide>(m.coeff) : m.coeff;
    widest = std::max(widest, a * (static_cast<Wide>(ub) - lb));
    sum += m.coeff > 0 ? a * lb : -a * ub;
  }
  return sum + widest;
}

// c propagates a non-redundant bound (or is a conflict) iff F' > 0.
template <BoundsView View>
bool WouldPropagate(const Constraint& c, const View& view) {
  return ExactFilter(c, view) > 0;
}

enum class Tier : uint8_t { kGeneral, kClause, kBinary };

struct StoredConstraint {
  Constraint constraint;
  Tier tier = Tier::kGeneral;
  bool alive = true;
  bool initial = true;
  // Replaced objective bound; removed at the next level-0 point.
  bool retired = false;
  int64_t activity = 0;
};

class ConstraintStore {
 public:
  int32_t Add(Constraint c, bool initial, Tier tier);
  void Remove(int32_t id);

  int32_t size() const { return static_cast<int32_t>(items_.size()); }
  const StoredConstraint& at(int32_t id) const { return items_[id]; }
  StoredConstraint& at(int32_t id) { return items_[id]; }
  const Constraint& constraint(int32_t id) const {
    return items_[id].constraint;
  }
  bool alive(int32_t id) const { return items_[id].alive; }
  int64_t NumLearnedAlive() const { return learned_alive_; }
  // Rough footprint of alive constraints, in bytes.
  int64_t MemoryBytes() const { return bytes_; }

 private:
  std::vector<StoredConstraint> items_;
  int64_t learned_alive_ = 0;
  int64_t bytes_ = 0;
};

// Constraint shape accepted by the clause tiers: every variable binary,
// coefficients +-1 and rhs = (#positive coefficients) - 1, i.e. the
// disjunction of x <= 0 for positive and 1 <= y for negative terms.
bool IsClauseShaped(const Constraint& c, const Problem& problem);

// Binary tier for two-literal clauses, clause tier for longer ones,
// general otherwise.
Tier TierFor(const Constraint& c, const Problem& problem);

struct PropagationStats {
  int64_t binary = 0;
  int64_t implicit_binary = 0;
  int64_t clause = 0;
  int64_t general = 0;
  int64_t visits = 0;
};

class Propagator : public TrailListener {
 public:
  // The trail must already hold the initial bounds; filters are computed
  // exactly from it.
  Propagator(const Problem& problem, Trail& trail, ConstraintStore& store);
  ~Propagator() override;
  Propagator(const Propagator&) = delete;
  Propagator& operator=(const Propagator&) = delete;

  // Registers a stored constraint with its tier's data structures.
  void Attach(int32_t id);
  // Rebuilds every index from the alive constraints. Level 0 only.
  void Rebuild();

  std::optional<Conflict> PropagateFixpoint();

  // Lists, per binary variable, the general constraints that imply a binary
  // clause with the negation of that variable. Returns the number of
  // constraints involved.
  int DetectImplicitBinaries();
  void set_use_implicit_binaries(bool on) { use_implicit_ = on; }

  // Current filter value of a general constraint (for tests).
  Int Filter(int32_t id) const { return filter_[id]; }
  bool HasPendingWork() const;
  const PropagationStats& stats() const { return stats_; }
  // Drops undo records once the trail is back at level 0.
  void CompactUndoLog();

  void OnPush(const Trail& trail, int height) override;
  void OnPop(const Trail& trail, int height) override;

 private:
  struct Occurrence {
    int32_t id;
    Int coeff;
  };
  struct Implication {
    Bound implied;
    int32_t id;
  };
  struct UndoRecord {
    int32_t tag;
    int32_t id;
    Int old_value;
    bool created;
  };

  static int LitCode(const Bound& b) {
    return 2 * b.var.index() + (b.is_lower() ? 0 : 1);
  }
  // The literal of a clause-shaped term.
  static Bound TermLiteral(const Monomial& m) {
    return m.coeff > 0 ? Bound::Upper(m.var, 0) : Bound::Lower(m.var, 1);
  }
  static Bound Complement(const Bound& lit) { return NegateBound(lit); }

  static bool IsLiteral(const Bound& b) {
    return b.is_lower() ? b.value == 1 : b.value == 0;
  }

  void EnsureCapacity(int32_t id);
  void ApplyFilterUpdates(int height);
  std::optional<Conflict> VisitGeneral(int32_t id, int64_t* counter);
  std::optional<Conflict> ProcessBinary(int height);
  std::optional<Conflict> ProcessClauses(int height);
  void Enqueue(int32_t id);

  const Problem& problem_;
  Trail& trail_;
  ConstraintStore& store_;

  std::vector<std::vector<Occurrence>> pos_occ_;
  std::vector<std::vector<Occurrence>> neg_occ_;
  std::vector<Int> filter_;
  std::vector<uint8_t> in_queue_;
  std::deque<int32_t> queue_;
  std::vector<UndoRecord> undo_;
  std::vector<int32_t> pending_;

  // Indexed by the literal code of the bound that became true.
  std::vector<std::vector<Implication>> implications_;
  std::vector<std::vector<int32_t>> watches_;
  std::vector<std::vector<Bound>> clause_lits_;
  std::vector<std::vector<int32_t>> implicit_;
  bool use_implicit_ = true;

  // The general tier has no cursor of its own: filters are updated as soon as
  // a bound is pushed and the queue holds the constraints to visit.
  int binary_cursor_ = 0;
  int clause_cursor_ = 0;
  PropagationStats stats_;
};

}  // namespace intsat

#endif  // INTSAT_PROPAGATION_H_
