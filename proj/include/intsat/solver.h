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


// The search loop: propagate to fixpoint, decide, analyse conflicts and
// backjump, with restarts, learned-constraint cleanup and optimisation by
// objective strengthening.

#ifndef INTSAT_SOLVER_H_
#define INTSAT_SOLVER_H_

#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "intsat/conflict_resolution.h"
#include "intsat/heuristics.h"
#include "intsat/model.h"
#include "intsat/propagation.h"
#include "intsat/trail.h"

namespace intsat {

struct SolverConfig {
  AnalysisMode mode = AnalysisMode::kCut;
  std::vector<int> strategy_order = {7, 5, 1};
  RestartSchedule restart = RestartSchedule::InnerOuter(100, 1000, 1.1);
  int64_t cleanup_learned = 10000;
  int64_t cleanup_bytes = int64_t{64} << 20;
  double bump_factor = 1.05;
  double rescale_cap = 1e100;
  double time_limit = 0;      // seconds, 0 for none
  int64_t max_conflicts = 0;  // 0 for none
  uint64_t seed = 0;          // 0 keeps the initial order untouched
  bool implicit_binaries = true;
  std::vector<Int> hint;      // value per variable for strategy 11
  bool record_history = false;

  // Throws std::invalid_argument on an unusable configuration.
  void Validate(int num_vars) const;
};

struct SolverStats {
  int64_t conflicts = 0;
  int64_t decisions = 0;
  int64_t propagations_binary = 0;
  int64_t propagations_implicit = 0;
  int64_t propagations_clause = 0;
  int64_t propagations_general = 0;
  int64_t restarts = 0;
  int64_t cleanups = 0;
  int64_t learned = 0;
  int64_t removed = 0;
  int64_t early_backjumps = 0;
  int64_t solutions = 0;
  int64_t implicit_binary_constraints = 0;
};

enum class SolveStatus { kFeasible, kInfeasible, kOptimal, kBounded, kTimeLimit };

std::string ToString(SolveStatus s);

struct SolveOutcome {
  SolveStatus status = SolveStatus::kTimeLimit;
  std::optional<Solution> solution;
  // Objective value of `solution` in internal integer units.
  std::optional<Int> objective;
};

enum class Transition { kPropagate, kDecide, kConflict, kRestart };

class SolverObserver {
 public:
  virtual ~SolverObserver() = default;
  // Called with the trail analysis ran on, before the result is applied.
  // `objective_bound` is the objective constraint in force, if any.
  virtual void OnAnalysis(const Trail& /*trail*/, const Conflict& /*conflict*/,
                          const AnalysisResult& /*result*/,
                          const Constraint* /*objective_bound*/) {}
  virtual void OnTransition(Transition /*t*/, const Trail& /*trail*/) {}
  virtual void OnIncumbent(Int /*value*/, const Solution& /*solution*/) {}
};

class Solver : private TrailListener {
 public:
  Solver(Problem problem, SolverConfig config);
  ~Solver() override;
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // Optimises when the problem has an objective.
  SolveOutcome Solve();

  void set_observer(SolverObserver* observer) { observer_ = observer; }
  void set_cancel_flag(const std::atomic<bool>* flag) { cancel_ = flag; }
  void set_trace(std::ostream* trace) { trace_ = trace; }
  using ProgressCallback =
      std::function<void(double elapsed, Int value, int64_t conflicts)>;
  void set_progress_callback(ProgressCallback cb) {
    progress_ = std::move(cb);
  }

  const SolverStats& stats() const { return stats_; }
  const Problem& problem() const { return problem_; }
  const Trail& trail() const { return trail_; }
  const ConstraintStore& store() const { return store_; }

 private:
  void OnPush(const Trail& trail, int height) override;
  void OnPop(const Trail& trail, int height) override;

  // Returns false when the input is infeasible before search.
  bool Setup();
  // Terminal status if the conflict ends the search.
  std::optional<SolveStatus> HandleConflict(const Conflict& conflict);
  SolveStatus ClosedStatus() const {
    return best_ ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
  }
  void Decide(VarId var);
  void Restart();
  void LevelZeroMaintenance();
  void Cleanup();
  // Adds sum c x <= value - 1; false when that is already contradictory.
  bool Strengthen(Int value);
  bool OutOfBudget() const;
  double Elapsed() const;
  SolveOutcome Finish(SolveStatus status);
  void Notify(Transition t);
  void TracePropagations(int from);
  void TraceAnalysis(const Conflict& conflict, const AnalysisResult& result);
  void SyncStats();

  Problem problem_;
  SolverConfig config_;
  Trail trail_;
  ConstraintStore store_;
  std::unique_ptr<Propagator> prop_;
  ActivityQueue heap_;
  std::vector<std::optional<Int>> last_value_;
  std::optional<Solution> best_;
  Int best_value_ = 0;
  int32_t objective_id_ = -1;
  std::vector<int32_t> retired_;
  int64_t conflicts_since_restart_ = 0;
  bool setup_done_ = false;
  bool trivially_infeasible_ = false;

  SolverObserver* observer_ = nullptr;
  const std::atomic<bool>* cancel_ = nullptr;
  std::ostream* trace_ = nullptr;
  ProgressCallback progress_;
  std::chrono::steady_clock::time_point start_;
  SolverStats stats_;
};

}  // namespace intsat

#endif  // INTSAT_SOLVER_H_
