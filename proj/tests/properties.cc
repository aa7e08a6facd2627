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


#include "properties.h"

#include <algorithm>
#include <random>
#include <sstream>

#include "intsat/conflict_cut.h"
#include "intsat/oracle.h"
#include "intsat/propagation.h"
#include "test_support.h"

namespace intsat::testing {

void SuiteResult::Fail(std::string message) {
  ++failures;
  if (messages.size() < 5) messages.push_back(std::move(message));
}

void SuiteResult::Merge(const SuiteResult& other) {
  cases += other.cases;
  failures += other.failures;
  for (const std::string& m : other.messages) {
    if (messages.size() < 5) messages.push_back(m);
  }
}

namespace {

constexpr int kMaxAttempts = 100;

Int BoxMin(Int a, Int lb, Int ub) { return a > 0 ? a * lb : a * ub; }

Int SumMin(const Constraint& c, std::span<const Int> lb,
           std::span<const Int> ub) {
  Int s = 0;
  for (const Monomial& m : c.terms()) {
    s += BoxMin(m.coeff, lb[m.var.index()], ub[m.var.index()]);
  }
  return s;
}

// Whether c and the box bounds propagate a bound on `var` that is not
// implied by the box (contradictory bounds included), straight from the
// definition of bound propagation.
bool PropagatesOn(const Constraint& c, std::span<const Int> lb,
                  std::span<const Int> ub, VarId var) {
  const Int a = c.CoeffOf(var);
  if (a == 0) return false;
  const int j = var.index();
  const Int rest = SumMin(c, lb, ub) - BoxMin(a, lb[j], ub[j]);
  const Int num = c.rhs() - rest;
  if (a > 0) return FloorDiv(num, a) < ub[j];
  return CeilDiv(num, a) > lb[j];
}

bool PropagatesAny(const Constraint& c, std::span<const Int> lb,
                   std::span<const Int> ub) {
  for (const Monomial& m : c.terms()) {
    if (PropagatesOn(c, lb, ub, m.var)) return true;
  }
  return false;
}

std::string Describe(const Constraint& c, std::span<const Int> lb,
                     std::span<const Int> ub) {
  std::ostringstream os;
  os << ToString(c) << " box";
  for (size_t i = 0; i < lb.size(); ++i) {
    os << " [" << lb[i] << "," << ub[i] << "]";
  }
  return os.str();
}

void RandomBox(std::mt19937_64& rng, int n, Int lo, Int hi,
               std::vector<Int>* lb, std::vector<Int>* ub) {
  lb->assign(n, 0);
  ub->assign(n, 0);
  for (int i = 0; i < n; ++i) {
    (*lb)[i] = Uniform(rng, lo, hi);
    (*ub)[i] = Uniform(rng, (*lb)[i], hi);
  }
}

// Trail with the box as level-0 entries followed by a few random
// tightenings (some of them decisions).
Trail RandomTrail(std::mt19937_64& rng, std::span<const Int> lb,
                  std::span<const Int> ub) {
  const int n = static_cast<int>(lb.size());
  Trail t(n);
  for (int v = 0; v < n; ++v) {
    t.Push(Bound::Lower(VarId(v), lb[v]), ReasonInfo());
    t.Push(Bound::Upper(VarId(v), ub[v]), ReasonInfo());
  }
  const int extra = static_cast<int>(Uniform(rng, 0, 4));
  for (int k = 0; k < extra; ++k) {
    VarId v(static_cast<int32_t>(Uniform(rng, 0, n - 1)));
    if (t.IsFixed(v)) continue;
    Bound b = Uniform(rng, 0, 1)
                  ? Bound::Lower(v, Uniform(rng, t.Lb(v) + 1, t.Ub(v)))
                  : Bound::Upper(v, Uniform(rng, t.Lb(v), t.Ub(v) - 1));
    t.Push(b, Uniform(rng, 0, 1) ? ReasonInfo::Decision() : ReasonInfo());
  }
  return t;
}

void CurrentBox(const Trail& t, std::vector<Int>* lb, std::vector<Int>* ub) {
  lb->resize(t.num_vars());
  ub->resize(t.num_vars());
  for (int v = 0; v < t.num_vars(); ++v) {
    (*lb)[v] = t.Lb(VarId(v));
    (*ub)[v] = t.Ub(VarId(v));
  }
}

Constraint ConstraintOf(const Trail& trail, const ConstraintStore& store,
                        int h, const std::optional<Constraint>& learned) {
  const int32_t rc = trail.At(h).info.reason_constraint;
  if (rc == kLearnedReason && learned) return *learned;
  return store.constraint(rc);
}

}  // namespace

SuiteResult CheckConflictPredicate(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  std::vector<Int> lb, ub, clb, cub;
  for (int i = 0; i < cases; ++i) {
    const int n = static_cast<int>(Uniform(rng, 1, 4));
    RandomBox(rng, n, -4, 4, &lb, &ub);
    Trail t = RandomTrail(rng, lb, ub);
    CurrentBox(t, &clb, &cub);
    Constraint c = Normalize(RandomTerms(rng, n, 5), Uniform(rng, -15, 15));
    ++r.cases;
    for (const Monomial& m : c.terms()) {
      Int best = kPlusInf;
      for (Int v = clb[m.var.index()]; v <= cub[m.var.index()]; ++v) {
        best = std::min(best, m.coeff * v);
      }
      std::optional<Wide> mc = MinContribution(m.coeff, m.var, t);
      if (!mc || *mc != best) r.Fail("min formula: " + Describe(c, clb, cub));
    }
    std::vector<Constraint> cs = {c};
    const bool unsat = !Satisfiable(clb, cub, cs, {});
    std::optional<std::vector<int32_t>> conflict = IsConflict(c, t);
    if (unsat != conflict.has_value()) {
      r.Fail("conflict predicate: " + Describe(c, clb, cub));
      continue;
    }
    if (conflict) {
      // The min-side bounds alone already rule out c.
      std::vector<Int> wlb(n, -12), wub(n, 12);
      if (Satisfiable(wlb, wub, cs, BoundsAt(t, *conflict))) {
        r.Fail("conflicting set too weak: " + Describe(c, clb, cub));
      }
    }
  }
  return r;
}

SuiteResult CheckPropagationEntailed(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  std::vector<Int> lb, ub, clb, cub;
  // Single constraints against random trails.
  for (int i = 0, attempts = 0; i < cases && attempts < cases * kMaxAttempts;
       ++attempts) {
    const int n = static_cast<int>(Uniform(rng, 1, 3));
    RandomBox(rng, n, -4, 4, &lb, &ub);
    Trail t = RandomTrail(rng, lb, ub);
    CurrentBox(t, &clb, &cub);
    Constraint c = Normalize(RandomTerms(rng, n, 5), Uniform(rng, -12, 12));
    if (IsConflict(c, t)) continue;
    std::vector<Propagation> props = PropagateConstraint(c, t);
    for (const Monomial& m : c.terms()) {
      const bool fresh_expected = PropagatesOn(c, clb, cub, m.var);
      const bool found = std::any_of(
          props.begin(), props.end(),
          [&](const Propagation& p) { return p.bound.var == m.var; });
      if (fresh_expected != found) {
        r.Fail("propagation set: " + Describe(c, clb, cub));
      }
    }
    if (props.empty()) continue;
    ++i;
    ++r.cases;
    for (const Propagation& p : props) {
      if (!t.IsFresh(p.bound)) {
        r.Fail("not fresh: " + ToString(p.bound) + " from " +
               Describe(c, clb, cub));
      }
      std::vector<Int> wlb(n, -10), wub(n, 10);
      std::vector<Constraint> cs = {c};
      if (!Entails(wlb, wub, cs, BoundsAt(t, p.reason_set),
                   BoundAsConstraint(p.bound))) {
        r.Fail("not entailed: " + ToString(p.bound) + " from " +
               Describe(c, clb, cub));
      }
    }
  }
  // Every entry the propagator pushes during random descents.
  RandomSpec spec;
  spec.max_vars = 3;
  for (int i = 0; i < cases; ++i) {
    Problem p = RandomProblem(rng, false, spec);
    Trail t = InitialTrail(p);
    ConstraintStore store = StoreFor(p);
    Propagator prop(p, t, store);
    prop.DetectImplicitBinaries();
    const int n = p.num_vars();
    std::vector<Int> wlb(p.lb), wub(p.ub);
    for (int v = 0; v < n; ++v) {
      wlb[v] -= 6;
      wub[v] += 6;
    }
    ++r.cases;
    int checked = 0;
    while (true) {
      std::optional<Conflict> conflict = prop.PropagateFixpoint();
      for (int h = checked; h < t.Height(); ++h) {
        const TrailEntry& e = t.At(h);
        if (e.info.is_decision || e.info.reason_constraint < 0) continue;
        std::vector<Constraint> cs = {store.constraint(e.info.reason_constraint)};
        bool below = std::all_of(e.info.reason_set.begin(),
                                 e.info.reason_set.end(),
                                 [h](int32_t x) { return x < h; });
        if (!below || !Entails(wlb, wub, cs, BoundsAt(t, e.info.reason_set),
                               BoundAsConstraint(e.bound))) {
          r.Fail("propagator entry not entailed: " + ToString(e.bound) +
                 " via " + ToString(cs[0]));
        }
      }
      checked = t.Height();
      if (conflict) {
        std::vector<Constraint> cs = {store.constraint(conflict->constraint)};
        if (Satisfiable(wlb, wub, cs, BoundsAt(t, conflict->cs))) {
          r.Fail("reported conflict is satisfiable: " + ToString(cs[0]));
        }
        break;
      }
      std::vector<int> open;
      for (int v = 0; v < n; ++v) {
        if (!t.IsFixed(VarId(v))) open.push_back(v);
      }
      if (open.empty()) break;
      VarId v(open[Uniform(rng, 0, static_cast<Int>(open.size()) - 1)]);
      Int value = Uniform(rng, t.Lb(v), t.Ub(v));
      t.Push(value > t.Lb(v) ? Bound::Lower(v, value) : Bound::Upper(v, value),
             ReasonInfo::Decision());
    }
  }
  return r;
}

SuiteResult CheckNoRoundingFalsity(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  std::vector<Int> lb, ub;
  for (int i = 0, attempts = 0; i < cases && attempts < cases * kMaxAttempts;
       ++attempts) {
    const int n = static_cast<int>(Uniform(rng, 2, 4));
    RandomBox(rng, n, -4, 4, &lb, &ub);
    const VarId xj(static_cast<int32_t>(Uniform(rng, 0, n - 1)));
    if (lb[xj.index()] == ub[xj.index()]) continue;
    Trail t = RandomTrail(rng, lb, ub);
    if (t.IsFixed(xj)) continue;
    // upper: reason coefficient > 0 propagates xj <= e; lower is symmetric.
    const bool upper = Uniform(rng, 0, 1) == 1;
    std::vector<Monomial> rterms = RandomTerms(rng, n, 5);
    std::erase_if(rterms, [&](const Monomial& m) { return m.var == xj; });
    const Int bj = Uniform(rng, 1, 5);
    rterms.push_back({xj, upper ? bj : -bj});
    Constraint rest = MakeRaw(rterms, 0);
    Int rest_min = 0;
    for (const Monomial& m : rest.terms()) {
      if (m.var == xj) continue;
      rest_min += static_cast<Int>(*MinContribution(m.coeff, m.var, t));
    }
    const Int e = upper ? Uniform(rng, t.Lb(xj), t.Ub(xj) - 1)
                        : Uniform(rng, t.Lb(xj) + 1, t.Ub(xj));
    const Constraint reason = MakeRaw(rterms, rest_min + rest.CoeffOf(xj) * e);
    std::vector<Propagation> props = PropagateConstraint(reason, t);
    auto it = std::find_if(props.begin(), props.end(),
                           [&](const Propagation& p) { return p.bound.var == xj; });
    const Bound expect = upper ? Bound::Upper(xj, e) : Bound::Lower(xj, e);
    if (it == props.end() || !(it->bound == expect)) {
      r.Fail("constructed propagation missing: " + ToString(reason));
      continue;
    }
    const int before = t.Height();
    ReasonInfo info;
    info.reason_set = it->reason_set;
    t.Push(expect, std::move(info));
    std::vector<Monomial> cterms = RandomTerms(rng, n, 5);
    std::erase_if(cterms, [&](const Monomial& m) { return m.var == xj; });
    const Int aj = Uniform(rng, 1, 5);
    cterms.push_back({xj, upper ? -aj : aj});
    Constraint conflict = MakeRaw(cterms, 0);
    Int cmin = 0;
    for (const Monomial& m : conflict.terms()) {
      cmin += static_cast<Int>(*MinContribution(m.coeff, m.var, t));
    }
    conflict = MakeRaw(cterms, cmin - 1 - Uniform(rng, 0, 3));
    if (!IsConflict(conflict, t)) {
      r.Fail("constructed conflict not false");
      continue;
    }
    ++i;
    ++r.cases;
    std::optional<Constraint> cut = Cut(conflict, reason, xj);
    if (!cut) {
      r.Fail("cut absent: " + ToString(conflict) + " / " + ToString(reason));
      continue;
    }
    if (!IsConflict(*cut, PrefixView(t, before))) {
      r.Fail("cut not false: " + ToString(*cut) + " from " +
             ToString(conflict) + " / " + ToString(reason));
    }
  }
  return r;
}

SuiteResult CheckFilterExactness(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  std::vector<Int> lb, ub, clb, cub;
  for (int i = 0; i < cases; ++i) {
    const int n = static_cast<int>(Uniform(rng, 1, 4));
    RandomBox(rng, n, -4, 4, &lb, &ub);
    Trail t = RandomTrail(rng, lb, ub);
    CurrentBox(t, &clb, &cub);
    Constraint c = Normalize(RandomTerms(rng, n, 5), Uniform(rng, -15, 15));
    ++r.cases;
    const Int sum_min = SumMin(c, clb, cub);
    for (const Monomial& m : c.terms()) {
      const int j = m.var.index();
      const bool formula =
          -c.rhs() + std::abs(m.coeff) * (cub[j] - clb[j]) + sum_min > 0;
      if (formula != PropagatesOn(c, clb, cub, m.var)) {
        r.Fail("per-variable filter: " + Describe(c, clb, cub));
      }
    }
    const Wide f = ExactFilter(c, t);
    if ((f > 0) != PropagatesAny(c, clb, cub)) {
      r.Fail("exact filter: " + Describe(c, clb, cub));
    }
    if (f <= 0 && (IsConflict(c, t) || !PropagateConstraint(c, t).empty())) {
      r.Fail("non-positive filter but propagates: " + Describe(c, clb, cub));
    }
  }
  // Incremental filters along random descents and backjumps.
  for (int i = 0; i < cases; ++i) {
    Problem p = RandomProblem(rng, false);
    Trail t = InitialTrail(p);
    ConstraintStore store = StoreFor(p);
    Propagator prop(p, t, store);
    ++r.cases;
    auto check_filters = [&](const char* where) {
      for (int32_t id = 0; id < store.size(); ++id) {
        if (!store.alive(id) || store.at(id).tier != Tier::kGeneral) continue;
        if (prop.Filter(id) < ExactFilter(store.constraint(id), t)) {
          r.Fail(std::string("filter below exact value ") + where + ": " +
                 ToString(store.constraint(id)));
        }
      }
    };
    for (int step = 0; step < 40; ++step) {
      std::optional<Conflict> conflict = prop.PropagateFixpoint();
      check_filters("after fixpoint");
      if (!conflict) {
        for (int32_t id = 0; id < store.size(); ++id) {
          if (store.alive(id) && ExactFilter(store.constraint(id), t) > 0) {
            r.Fail("fixpoint leaves a propagating constraint: " +
                   ToString(store.constraint(id)));
          }
        }
      }
      if (conflict || Uniform(rng, 0, 4) == 0) {
        if (t.DecisionLevel() == 0) break;
        t.PopTo(t.LevelStart(
            static_cast<int>(Uniform(rng, 1, t.DecisionLevel()))));
        check_filters("after backjump");
        continue;
      }
      std::vector<int> open;
      for (int v = 0; v < p.num_vars(); ++v) {
        if (!t.IsFixed(VarId(v))) open.push_back(v);
      }
      if (open.empty()) break;
      VarId v(open[Uniform(rng, 0, static_cast<Int>(open.size()) - 1)]);
      Int value = Uniform(rng, t.Lb(v), t.Ub(v));
      t.Push(value > t.Lb(v) ? Bound::Lower(v, value) : Bound::Upper(v, value),
             ReasonInfo::Decision());
      check_filters("after decision");
    }
  }
  return r;
}

SuiteResult CheckDivisionNoStronger(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  std::vector<Int> lb, ub;
  for (int i = 0; i < cases; ++i) {
    const int n = static_cast<int>(Uniform(rng, 1, 4));
    RandomBox(rng, n, -4, 4, &lb, &ub);
    std::vector<Monomial> terms = RandomTerms(rng, n, 5);
    const Int c = Uniform(rng, 2, 5);
    std::vector<Monomial> scaled = terms;
    for (Monomial& m : scaled) m.coeff *= c;
    const Constraint base = MakeRaw(terms, 0);
    const VarId xj = base.terms()[Uniform(rng, 0, base.size() - 1)].var;
    const int j = xj.index();
    // Smallest rhs at which the scaled constraint stops propagating on xj,
    // plus a little slack.
    const Int threshold = c * SumMin(base, lb, ub) +
                          std::abs(c * base.CoeffOf(xj)) * (ub[j] - lb[j]);
    const Int rhs = threshold + Uniform(rng, 0, 2 * c);
    const Constraint c1 = MakeRaw(scaled, rhs);
    const Constraint c2 = MakeRaw(terms, FloorDiv(rhs, c));
    ++r.cases;
    if (PropagatesOn(c1, lb, ub, xj)) {
      r.Fail("construction: " + Describe(c1, lb, ub));
      continue;
    }
    if (PropagatesOn(c2, lb, ub, xj)) {
      r.Fail("divided constraint propagates: " + Describe(c2, lb, ub));
    }
    const Constraint normalized = Normalize(scaled, rhs);
    if (PropagatesOn(normalized, lb, ub, xj)) {
      r.Fail("normalised constraint propagates: " + Describe(normalized, lb, ub));
    }
  }
  return r;
}

SuiteResult CheckDisjointCut(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  std::vector<Int> lb, ub;
  for (int i = 0; i < cases; ++i) {
    const int ny = static_cast<int>(Uniform(rng, 0, 2));
    const int nz = static_cast<int>(Uniform(rng, 0, 2));
    const int n = 1 + ny + nz;
    RandomBox(rng, n, 0, 3, &lb, &ub);
    const VarId x(0);
    std::vector<Monomial> t1 = {{x, Uniform(rng, 1, 5)}};
    std::vector<Monomial> t2 = {{x, -Uniform(rng, 1, 5)}};
    for (int k = 1; k <= ny; ++k) t1.push_back({VarId(k), NonZero(rng, 5)});
    for (int k = ny + 1; k < n; ++k) t2.push_back({VarId(k), NonZero(rng, 5)});
    auto quiet = [&](const std::vector<Monomial>& terms) {
      Constraint c = MakeRaw(terms, 0);
      Int widest = 0;
      for (const Monomial& m : c.terms()) {
        const int v = m.var.index();
        widest = std::max(widest, std::abs(m.coeff) * (ub[v] - lb[v]));
      }
      return Normalize(terms, SumMin(c, lb, ub) + widest + Uniform(rng, 0, 3));
    };
    const Constraint c1 = quiet(t1);
    const Constraint c2 = quiet(t2);
    ++r.cases;
    if (PropagatesAny(c1, lb, ub) || PropagatesAny(c2, lb, ub)) {
      r.Fail("construction: " + Describe(c1, lb, ub));
      continue;
    }
    if (!CutSkipCheck(c1, c2, x)) {
      r.Fail("skip check rejects disjoint pair: " + ToString(c1) + " / " +
             ToString(c2));
    }
    std::optional<Constraint> cut = Cut(c1, c2, x);
    if (!cut) continue;
    if (cut->IsContradiction() || PropagatesAny(*cut, lb, ub)) {
      r.Fail("cut propagates: " + Describe(*cut, lb, ub));
    }
    // Sharing a second variable disables the skip.
    if (ny > 0 && nz > 0) {
      std::vector<Monomial> shared = t2;
      shared.push_back({VarId(1), 1});
      Constraint c3 = Normalize(shared, 100);
      if (c3.Contains(VarId(1)) && CutSkipCheck(c1, c3, x)) {
        r.Fail("skip check accepts shared variable");
      }
    }
  }
  return r;
}

SuiteResult CheckClauseConversion(int cases, uint64_t seed) {
  std::mt19937_64 rng(seed);
  SuiteResult r;
  for (int i = 0; i < cases; ++i) {
    Problem p;
    const int nb = static_cast<int>(Uniform(rng, 0, 4));
    const bool general = nb == 0 || Uniform(rng, 0, 1) == 1;
    std::vector<Bound> lits;
    for (int k = 0; k < nb; ++k) {
      VarId v = p.AddVar("b" + std::to_string(k), 0, 1);
      lits.push_back(Uniform(rng, 0, 1) ? Bound::Lower(v, 1)
                                        : Bound::Upper(v, 0));
    }
    if (general) {
      const Int lo = Uniform(rng, 0, 9);
      const Int hi = Uniform(rng, lo + 1, 10);
      VarId z = p.AddVar("z", lo, hi);
      lits.push_back(Uniform(rng, 0, 1) ? Bound::Lower(z, Uniform(rng, lo + 1, hi))
                                        : Bound::Upper(z, Uniform(rng, lo, hi - 1)));
    }
    std::shuffle(lits.begin(), lits.end(), rng);
    ++r.cases;
    std::optional<Constraint> c = ClauseToConstraint(lits, p);
    std::ostringstream clause;
    for (const Bound& b : lits) clause << ToString(b, &p) << " | ";
    if (!c) {
      r.Fail("not converted: " + clause.str());
      continue;
    }
    ForEachPoint(p.lb, p.ub, [&](std::span<const Int> x) {
      const bool any = std::any_of(lits.begin(), lits.end(),
                                   [&](const Bound& b) { return Satisfies(x, b); });
      if (any != Evaluate(*c, x)) {
        r.Fail("disagree: " + clause.str() + " vs " + ToString(*c, &p));
        return false;
      }
      return true;
    });
  }
  return r;
}

namespace {

SolverConfig CorpusConfig(AnalysisMode mode, const CorpusOptions& options) {
  SolverConfig cfg;
  cfg.mode = mode;
  cfg.max_conflicts = options.max_conflicts;
  return cfg;
}

const char* ModeName(AnalysisMode mode) {
  return mode == AnalysisMode::kCut ? "cut" : "resolution";
}

std::string Label(int index, AnalysisMode mode) {
  return "problem " + std::to_string(index) + " (" + ModeName(mode) + ")";
}

}  // namespace

SuiteResult CheckOracleEquivalence(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  SuiteResult r;
  for (int i = 0; i < options.problems; ++i) {
    Problem p = RandomProblem(rng, i % 2 == 1, options.spec);
    const SolveOutcome want = OracleSolve(p);
    for (AnalysisMode mode : {AnalysisMode::kResolution, AnalysisMode::kCut}) {
      ++r.cases;
      Solver solver(p, CorpusConfig(mode, options));
      const SolveOutcome got = solver.Solve();
      const std::string label = Label(i, mode);
      if (want.status == SolveStatus::kInfeasible) {
        if (got.status != SolveStatus::kInfeasible) {
          r.Fail(label + ": expected infeasible, got " + ToString(got.status));
        }
        continue;
      }
      const SolveStatus expect =
          p.objective ? SolveStatus::kOptimal : SolveStatus::kFeasible;
      if (got.status != expect) {
        r.Fail(label + ": expected " + ToString(expect) + ", got " +
               ToString(got.status));
        continue;
      }
      if (!got.solution || !p.IsSolution(*got.solution)) {
        r.Fail(label + ": returned point is not a solution");
        continue;
      }
      if (p.objective && got.objective != want.objective) {
        r.Fail(label + ": optimum " + std::to_string(*got.objective) +
               " vs oracle " + std::to_string(*want.objective));
      }
    }
  }
  return r;
}

namespace {

class ValidityObserver : public SolverObserver {
 public:
  ValidityObserver(const Problem& p, const Solver& solver, SuiteResult* out,
                   std::string label)
      : p_(p), solver_(solver), out_(out), label_(std::move(label)) {}

  void OnAnalysis(const Trail& trail, const Conflict& conflict,
                  const AnalysisResult& result,
                  const Constraint* objective_bound) override {
    std::vector<Constraint> s = p_.constraints;
    if (objective_bound != nullptr) s.push_back(*objective_bound);
    auto fail = [&](const std::string& what) {
      out_->Fail(label_ + ": " + what + "\n" + trail.Dump(&p_));
    };
    {
      std::vector<Constraint> cs = {
          solver_.store().constraint(conflict.constraint)};
      if (Satisfiable(p_.lb, p_.ub, cs, BoundsAt(trail, conflict.cs))) {
        fail("conflict is not a conflict");
      }
    }
    for (const std::vector<int32_t>& cs : result.cs_history) {
      if (Satisfiable(p_.lb, p_.ub, s, BoundsAt(trail, cs))) {
        fail("S with the conflicting set is satisfiable");
      }
    }
    for (const Constraint& cc : result.cc_history) {
      if (!Entails(p_.lb, p_.ub, s, {}, cc)) {
        fail("conflicting constraint not entailed: " + ToString(cc, &p_));
      }
    }
    if (result.infeasible) {
      if (Satisfiable(p_.lb, p_.ub, s, {})) fail("claims infeasible");
      return;
    }
    if (result.learned && !Entails(p_.lb, p_.ub, s, {}, *result.learned)) {
      fail("learned constraint not entailed: " + ToString(*result.learned, &p_));
    }
    const int n = result.new_height;
    bool level_start = false;
    for (int l = 1; l <= trail.DecisionLevel(); ++l) {
      level_start |= trail.LevelStart(l) == n;
    }
    if (!level_start) fail("backjump height is not a level start");
    const PrefixView view(trail, n);
    const Bound& b = result.bound;
    const bool fresh = b.is_lower()
                           ? view.Lb(b.var) < b.value && b.value <= view.Ub(b.var)
                           : view.Lb(b.var) <= b.value && b.value < view.Ub(b.var);
    if (!fresh) fail("pushed bound not fresh: " + ToString(b, &p_));
    for (int32_t h : result.info.reason_set) {
      if (h >= n) fail("reason above the pushed bound");
    }
    const std::vector<Bound> rs = BoundsAt(trail, result.info.reason_set);
    if (!Entails(p_.lb, p_.ub, s, rs, BoundAsConstraint(b))) {
      fail("S and the reason set do not entail " + ToString(b, &p_));
    }
    // The reason constraint need not propagate the bound on its own (a cut
    // may lose rounding), but it must be a consequence of S.
    const int32_t rc = result.info.reason_constraint;
    if (rc == kLearnedReason && !result.learned) {
      fail("learned reason without a learned constraint");
    } else if (rc >= 0 &&
               !Entails(p_.lb, p_.ub, s, {}, solver_.store().constraint(rc))) {
      fail("reason constraint not entailed");
    }
    ++analyses;
  }

  int64_t analyses = 0;

 private:
  const Problem& p_;
  const Solver& solver_;
  SuiteResult* out_;
  std::string label_;
};

class TerminationObserver : public SolverObserver {
 public:
  TerminationObserver(const Problem& p, SuiteResult* out, std::string label)
      : p_(p), out_(out), label_(std::move(label)) {}

  void OnTransition(Transition t, const Trail& trail) override {
    if (t == Transition::kRestart) {
      last_.clear();
      return;
    }
    std::vector<Int> m = trail.TerminationMeasure(p_.lb, p_.ub);
    if (!last_.empty() && !LexLess(m, last_)) {
      out_->Fail(label_ + ": measure did not decrease\n" + trail.Dump(&p_));
    }
    last_ = std::move(m);
    ++transitions;
  }

  int64_t transitions = 0;

 private:
  const Problem& p_;
  SuiteResult* out_;
  std::string label_;
  std::vector<Int> last_;
};

class IncumbentObserver : public SolverObserver {
 public:
  void OnIncumbent(Int value, const Solution&) override {
    values.push_back(value);
  }
  std::vector<Int> values;
};

}  // namespace

SuiteResult CheckValidity(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  SuiteResult r;
  for (int i = 0; i < options.problems; ++i) {
    Problem p = RandomProblem(rng, i % 2 == 1, options.spec);
    for (AnalysisMode mode : {AnalysisMode::kResolution, AnalysisMode::kCut}) {
      SolverConfig cfg = CorpusConfig(mode, options);
      cfg.record_history = true;
      Solver solver(p, cfg);
      ValidityObserver obs(p, solver, &r, Label(i, mode));
      solver.set_observer(&obs);
      try {
        solver.Solve();
      } catch (const std::exception& e) {
        r.Fail(Label(i, mode) + ": " + e.what());
      }
      r.cases += static_cast<int>(obs.analyses);
    }
  }
  return r;
}

SuiteResult CheckTermination(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  SuiteResult r;
  for (int i = 0; i < options.problems; ++i) {
    Problem p = RandomProblem(rng, i % 2 == 1, options.spec);
    for (AnalysisMode mode : {AnalysisMode::kResolution, AnalysisMode::kCut}) {
      ++r.cases;
      Solver solver(p, CorpusConfig(mode, options));
      TerminationObserver obs(p, &r, Label(i, mode));
      solver.set_observer(&obs);
      const SolveOutcome out = solver.Solve();
      if (out.status == SolveStatus::kTimeLimit) {
        r.Fail(Label(i, mode) + ": hit the conflict ceiling");
      }
    }
  }
  return r;
}

SuiteResult CheckObjectiveStrengthening(const CorpusOptions& options) {
  std::mt19937_64 rng(options.seed);
  SuiteResult r;
  for (int i = 0; i < options.problems; ++i) {
    Problem p = RandomProblem(rng, true, options.spec);
    const SolveOutcome want = OracleSolve(p);
    for (AnalysisMode mode : {AnalysisMode::kResolution, AnalysisMode::kCut}) {
      ++r.cases;
      Solver solver(p, CorpusConfig(mode, options));
      IncumbentObserver obs;
      solver.set_observer(&obs);
      const SolveOutcome got = solver.Solve();
      const std::string label = Label(i, mode);
      for (size_t k = 1; k < obs.values.size(); ++k) {
        if (obs.values[k] >= obs.values[k - 1]) {
          r.Fail(label + ": incumbents not strictly decreasing");
        }
      }
      if (want.status == SolveStatus::kInfeasible) {
        if (!obs.values.empty()) r.Fail(label + ": incumbent on infeasible");
        continue;
      }
      if (obs.values.empty() || obs.values.back() != *want.objective ||
          got.objective != want.objective) {
        r.Fail(label + ": final incumbent differs from the optimum");
      }
    }
  }
  return r;
}

Problem PigeonHole(int pigeons, int holes) {
  Problem p;
  for (int i = 0; i < pigeons; ++i) {
    for (int j = 0; j < holes; ++j) {
      p.AddVar("p" + std::to_string(i) + "h" + std::to_string(j), 0, 1);
    }
  }
  auto var = [&](int i, int j) { return VarId(i * holes + j); };
  for (int i = 0; i < pigeons; ++i) {
    std::vector<Monomial> row;
    for (int j = 0; j < holes; ++j) row.push_back({var(i, j), -1});
    p.AddConstraint(row, -1);
  }
  for (int j = 0; j < holes; ++j) {
    std::vector<Monomial> row;
    for (int i = 0; i < pigeons; ++i) row.push_back({var(i, j), 1});
    p.AddConstraint(row, 1);
  }
  return p;
}

}  // namespace intsat::testing
