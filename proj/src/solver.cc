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


#include "intsat/solver.h"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "intsat/conflict_cut.h"

namespace intsat {

std::string ToString(SolveStatus s) {
  switch (s) {
    case SolveStatus::kFeasible:
      return "FEASIBLE";
    case SolveStatus::kInfeasible:
      return "INFEASIBLE";
    case SolveStatus::kOptimal:
      return "OPTIMAL";
    case SolveStatus::kBounded:
      return "BOUNDED";
    case SolveStatus::kTimeLimit:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

void SolverConfig::Validate(int num_vars) const {
  if (strategy_order.empty()) {
    throw std::invalid_argument("strategy order is empty");
  }
  for (int s : strategy_order) {
    if (s < 1 || s > 11) {
      throw std::invalid_argument("value strategies are numbered 1 to 11");
    }
  }
  if (!IsTotalStrategy(strategy_order.back())) {
    throw std::invalid_argument(
        "strategy order must end with one of 1, 2, 3 or 4");
  }
  if (bump_factor < 1.0) {
    throw std::invalid_argument("bump factor must be at least 1");
  }
  if (!hint.empty() && static_cast<int>(hint.size()) != num_vars) {
    throw std::invalid_argument("hint must give one value per variable");
  }
  if (time_limit < 0 || max_conflicts < 0) {
    throw std::invalid_argument("limits must be non-negative");
  }
}

Solver::Solver(Problem problem, SolverConfig config)
    : problem_(std::move(problem)),
      config_(std::move(config)),
      trail_(problem_.num_vars()),
      heap_(problem_.num_vars(), config_.bump_factor, config_.rescale_cap),
      last_value_(problem_.num_vars()) {
  problem_.Validate();
  config_.Validate(problem_.num_vars());
}

Solver::~Solver() { trail_.RemoveListener(this); }

void Solver::OnPush(const Trail& trail, int height) {
  const VarId v = trail.At(height).bound.var;
  if (trail.IsFixed(v)) last_value_[v.index()] = trail.Lb(v);
}

void Solver::OnPop(const Trail& trail, int height) {
  heap_.Insert(trail.At(height).bound.var);
}

bool Solver::Setup() {
  setup_done_ = true;
  for (int v = 0; v < problem_.num_vars(); ++v) {
    trail_.Push(Bound::Lower(VarId(v), problem_.lb[v]), ReasonInfo());
    trail_.Push(Bound::Upper(VarId(v), problem_.ub[v]), ReasonInfo());
  }
  trail_.AddListener(this);
  for (const Constraint& c : problem_.constraints) {
    if (c.IsContradiction()) return false;
    if (c.IsTautology()) continue;
    store_.Add(c, true, TierFor(c, problem_));
  }
  prop_ = std::make_unique<Propagator>(problem_, trail_, store_);
  prop_->set_use_implicit_binaries(config_.implicit_binaries);
  if (config_.seed != 0) {
    std::mt19937_64 rng(config_.seed);
    std::uniform_real_distribution<double> noise(0.0, 1e-3);
    for (int v = 0; v < problem_.num_vars(); ++v) {
      heap_.SetActivity(VarId(v), noise(rng));
    }
  }
  const int before = trail_.Height();
  if (prop_->PropagateFixpoint()) return false;
  TracePropagations(before);
  if (config_.implicit_binaries) {
    stats_.implicit_binary_constraints = prop_->DetectImplicitBinaries();
  }
  prop_->CompactUndoLog();
  return true;
}

double Solver::Elapsed() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start_)
      .count();
}

bool Solver::OutOfBudget() const {
  if (cancel_ != nullptr && cancel_->load(std::memory_order_relaxed)) {
    return true;
  }
  if (config_.max_conflicts > 0 && stats_.conflicts >= config_.max_conflicts) {
    return true;
  }
  return config_.time_limit > 0 && Elapsed() >= config_.time_limit;
}

void Solver::SyncStats() {
  if (!prop_) return;
  const PropagationStats& p = prop_->stats();
  stats_.propagations_binary = p.binary;
  stats_.propagations_implicit = p.implicit_binary;
  stats_.propagations_clause = p.clause;
  stats_.propagations_general = p.general;
}

SolveOutcome Solver::Finish(SolveStatus status) {
  SyncStats();
  SolveOutcome out;
  if (status == SolveStatus::kTimeLimit && best_) {
    status = problem_.objective ? SolveStatus::kBounded
                                : SolveStatus::kFeasible;
  }
  out.status = status;
  if (status != SolveStatus::kInfeasible) {
    out.solution = best_;
    if (best_ && problem_.objective) out.objective = best_value_;
  }
  return out;
}

void Solver::Notify(Transition t) {
  if (observer_ != nullptr) observer_->OnTransition(t, trail_);
}

SolveOutcome Solver::Solve() {
  start_ = std::chrono::steady_clock::now();
  if (setup_done_) throw std::logic_error("Solve() may be called once");
  if (!Setup()) return Finish(SolveStatus::kInfeasible);
  if (OutOfBudget()) return Finish(SolveStatus::kTimeLimit);
  int64_t decisions_since_check = 0;
  while (true) {
    const int before = trail_.Height();
    std::optional<Conflict> conflict = prop_->PropagateFixpoint();
    if (trail_.Height() != before) {
      TracePropagations(before);
      Notify(Transition::kPropagate);
    }
    if (conflict) {
      ++stats_.conflicts;
      if (std::optional<SolveStatus> done = HandleConflict(*conflict)) {
        return Finish(*done);
      }
      Notify(Transition::kConflict);
      if (OutOfBudget()) return Finish(SolveStatus::kTimeLimit);
      const bool cleanup_due =
          store_.NumLearnedAlive() >= config_.cleanup_learned ||
          store_.MemoryBytes() >= config_.cleanup_bytes;
      if (conflicts_since_restart_ >= config_.restart.threshold() ||
          cleanup_due) {
        Restart();
        config_.restart.Advance();
        if (cleanup_due) Cleanup();
        if (OutOfBudget()) return Finish(SolveStatus::kTimeLimit);
      }
      continue;
    }
    while (!heap_.empty() && trail_.IsFixed(heap_.Top())) heap_.PopTop();
    if (heap_.empty()) {
      Solution sol(problem_.num_vars());
      for (int v = 0; v < problem_.num_vars(); ++v) {
        if (!trail_.IsFixed(VarId(v))) {
          throw std::logic_error("decision heap lost an open variable");
        }
        sol[v] = trail_.Lb(VarId(v));
      }
      if (!problem_.IsSolution(sol)) {
        throw std::logic_error("search produced a non-solution");
      }
      ++stats_.solutions;
      best_ = sol;
      if (!problem_.objective) return Finish(SolveStatus::kFeasible);
      const Int value = static_cast<Int>(problem_.objective->Value(sol));
      best_value_ = value;
      if (trace_ != nullptr) *trace_ << "incumbent " << value << '\n';
      if (observer_ != nullptr) observer_->OnIncumbent(value, sol);
      if (progress_) progress_(Elapsed(), value, stats_.conflicts);
      if (!Strengthen(value)) return Finish(SolveStatus::kOptimal);
      continue;
    }
    if (++decisions_since_check >= 1024) {
      decisions_since_check = 0;
      if (OutOfBudget()) return Finish(SolveStatus::kTimeLimit);
    }
    Decide(heap_.PopTop());
  }
}

void Solver::Decide(VarId var) {
  DecisionContext ctx;
  if (problem_.objective) ctx.objective_coeff = problem_.objective->CoeffOf(var);
  ctx.last_value = last_value_[var.index()];
  if (best_) ctx.last_solution_value = (*best_)[var.index()];
  if (!config_.hint.empty()) ctx.hint_value = config_.hint[var.index()];
  const Bound b = DecideBound(config_.strategy_order, var, trail_.Lb(var),
                              trail_.Ub(var), ctx);
  ++stats_.decisions;
  trail_.Push(b, ReasonInfo::Decision());
  if (!trail_.IsFixed(var)) heap_.Insert(var);
  if (trace_ != nullptr) {
    *trace_ << "decide " << ToString(b, &problem_) << " level "
            << trail_.DecisionLevel() << '\n';
  }
  Notify(Transition::kDecide);
}

std::optional<SolveStatus> Solver::HandleConflict(const Conflict& conflict) {
  int level = 0;
  for (int32_t h : conflict.cs) {
    level = std::max(level, trail_.DecisionLevelOf(h));
  }
  if (trace_ != nullptr) {
    *trace_ << "conflict constraint=" << conflict.constraint << " level "
            << level << '\n';
  }
  if (level == 0) return ClosedStatus();
  if (level < trail_.DecisionLevel()) trail_.PopTo(trail_.LevelStart(level + 1));

  const AnalysisInput in{problem_, trail_, store_,
                         config_.record_history || trace_ != nullptr};
  AnalysisResult result = config_.mode == AnalysisMode::kCut
                              ? AnalyzeHybrid(conflict, in)
                              : AnalyzeResolution(conflict, in);
  if (observer_ != nullptr) {
    observer_->OnAnalysis(
        trail_, conflict, result,
        objective_id_ >= 0 ? &store_.constraint(objective_id_) : nullptr);
  }
  if (trace_ != nullptr) TraceAnalysis(conflict, result);
  if (result.infeasible) return ClosedStatus();

  heap_.Bump(result.bumped_vars);
  heap_.Decay();
  for (int32_t id : result.used_constraints) {
    if (id >= 0 && store_.alive(id)) ++store_.at(id).activity;
  }
  trail_.PopTo(result.new_height);
  int32_t learned_id = -1;
  if (result.learned) {
    if (result.learned->IsContradiction()) return ClosedStatus();
    if (!result.learned->IsTautology()) {
      learned_id = store_.Add(std::move(*result.learned), false,
                              Tier::kGeneral);
      prop_->Attach(learned_id);
      ++stats_.learned;
    }
  }
  ReasonInfo info = std::move(result.info);
  if (info.reason_constraint == kLearnedReason) {
    info.reason_constraint = learned_id;
  }
  if (!trail_.IsFresh(result.bound)) {
    throw std::logic_error("conflict analysis produced a non-fresh bound");
  }
  trail_.Push(result.bound, std::move(info));
  if (result.early_backjump) ++stats_.early_backjumps;
  ++conflicts_since_restart_;
  return std::nullopt;
}

void Solver::Restart() {
  if (trail_.DecisionLevel() > 0) trail_.PopTo(trail_.LevelStart(1));
  ++stats_.restarts;
  conflicts_since_restart_ = 0;
  if (trace_ != nullptr) *trace_ << "restart\n";
  Notify(Transition::kRestart);
  LevelZeroMaintenance();
}

void Solver::LevelZeroMaintenance() {
  if (!retired_.empty()) {
    for (int32_t id : retired_) store_.Remove(id);
    retired_.clear();
    for (int h = 0; h < trail_.Height(); ++h) {
      const int32_t rc = trail_.At(h).info.reason_constraint;
      if (rc >= 0 && !store_.alive(rc)) trail_.ClearReasonConstraint(h);
    }
    prop_->Rebuild();
    if (config_.implicit_binaries) prop_->DetectImplicitBinaries();
  }
  prop_->CompactUndoLog();
}

void Solver::Cleanup() {
  ++stats_.cleanups;
  for (int32_t id = 0; id < store_.size(); ++id) {
    StoredConstraint& s = store_.at(id);
    if (!s.alive) continue;
    if (!s.initial && s.constraint.size() > 2 && s.activity == 0) {
      store_.Remove(id);
      ++stats_.removed;
      continue;
    }
    s.activity /= 2;
  }
  for (int h = 0; h < trail_.Height(); ++h) {
    const int32_t rc = trail_.At(h).info.reason_constraint;
    if (rc >= 0 && !store_.alive(rc)) trail_.ClearReasonConstraint(h);
  }
  prop_->Rebuild();
  if (config_.implicit_binaries) prop_->DetectImplicitBinaries();
  prop_->CompactUndoLog();
}

bool Solver::Strengthen(Int value) {
  Constraint c = Normalize(problem_.objective->terms, value - 1);
  if (c.IsContradiction()) return false;
  if (objective_id_ >= 0) {
    store_.at(objective_id_).retired = true;
    retired_.push_back(objective_id_);
  }
  objective_id_ = store_.Add(std::move(c), true, Tier::kGeneral);
  prop_->Attach(objective_id_);
  return true;
}

void Solver::TracePropagations(int from) {
  if (trace_ == nullptr) return;
  for (int h = from; h < trail_.Height(); ++h) {
    const TrailEntry& e = trail_.At(h);
    *trace_ << "propagate " << ToString(e.bound, &problem_) << " reason=";
    if (e.info.reason_constraint < 0) {
      *trace_ << "none";
    } else {
      *trace_ << e.info.reason_constraint;
    }
    *trace_ << " set={";
    for (size_t i = 0; i < e.info.reason_set.size(); ++i) {
      *trace_ << (i ? "," : "") << e.info.reason_set[i];
    }
    *trace_ << "}\n";
  }
}

void Solver::TraceAnalysis(const Conflict& conflict,
                           const AnalysisResult& result) {
  (void)conflict;
  for (size_t i = 1; i < result.cs_history.size(); ++i) {
    const auto& prev = result.cs_history[i - 1];
    const auto& next = result.cs_history[i];
    std::vector<int32_t> dropped, added;
    std::set_difference(prev.begin(), prev.end(), next.begin(), next.end(),
                        std::back_inserter(dropped));
    std::set_difference(next.begin(), next.end(), prev.begin(), prev.end(),
                        std::back_inserter(added));
    *trace_ << "analyze step: drop";
    for (int32_t h : dropped) {
      *trace_ << ' ' << ToString(trail_.At(h).bound, &problem_);
    }
    *trace_ << " add {";
    for (size_t j = 0; j < added.size(); ++j) {
      *trace_ << (j ? ", " : "") << ToString(trail_.At(added[j]).bound,
                                             &problem_);
    }
    *trace_ << "}\n";
    if (i < result.cc_history.size() &&
        !(result.cc_history[i] == result.cc_history[i - 1])) {
      *trace_ << "cut -> " << ToString(result.cc_history[i], &problem_)
              << '\n';
    }
  }
  if (result.infeasible) {
    *trace_ << "analysis proved infeasibility\n";
    return;
  }
  if (result.early_backjump) {
    *trace_ << "early-backjump k=" << trail_.Height() - result.new_height
            << " push " << ToString(result.bound, &problem_) << '\n';
  } else {
    *trace_ << "backjump k=" << trail_.Height() - result.new_height
            << " push " << ToString(result.bound, &problem_) << '\n';
  }
  if (result.learned) {
    *trace_ << "learn " << ToString(*result.learned, &problem_) << '\n';
  }
}

}  // namespace intsat
