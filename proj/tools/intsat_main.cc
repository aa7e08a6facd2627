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


// Command-line driver: intsat <instance> [options]

#include <atomic>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "intsat/io.h"
#include "intsat/oracle.h"
#include "intsat/solver.h"

namespace {

constexpr int kExitAnswered = 0;
constexpr int kExitUnknown = 1;
constexpr int kExitInputError = 2;
constexpr int kExitVerifyMismatch = 3;

intsat::RestartSchedule ParseRestart(const std::string& spec) {
  if (spec == "none") return intsat::RestartSchedule::None();
  if (spec.rfind("luby:", 0) == 0) {
    return intsat::RestartSchedule::Luby(std::stoll(spec.substr(5)));
  }
  if (spec.rfind("inout:", 0) == 0) {
    std::vector<double> v;
    std::stringstream ss(spec.substr(6));
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    if (v.size() != 3) {
      throw std::invalid_argument("inout restarts take <inner>,<outer>,<factor>");
    }
    return intsat::RestartSchedule::InnerOuter(v[0], v[1], v[2]);
  }
  throw std::invalid_argument("restart must be luby:<unit>, inout:<i>,<o>,<f> "
                              "or none");
}

std::vector<int> ParseStrategies(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

// Sets `flag` once `seconds` have elapsed unless stopped first.
class Watchdog {
 public:
  Watchdog(double seconds, std::atomic<bool>& flag) {
    if (seconds <= 0) return;
    thread_ = std::thread([this, seconds, &flag] {
      std::unique_lock<std::mutex> lock(mu_);
      if (!cv_.wait_for(lock, std::chrono::duration<double>(seconds),
                        [this] { return stopped_; })) {
        flag.store(true);
      }
    });
  }
  ~Watchdog() {
    {
      std::lock_guard<std::mutex> lock(mu_);
      stopped_ = true;
    }
    cv_.notify_all();
    if (thread_.joinable()) thread_.join();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  bool stopped_ = false;
  std::thread thread_;
};

// Empty when the solver answer agrees with the oracle.
std::string CompareWithOracle(const intsat::SolveOutcome& got,
                              const intsat::SolveOutcome& want,
                              const intsat::Problem& problem) {
  using intsat::SolveStatus;
  const bool want_feasible = want.status != SolveStatus::kInfeasible;
  std::ostringstream os;
  switch (got.status) {
    case SolveStatus::kInfeasible:
      if (want_feasible) os << "solver says infeasible, oracle found a solution";
      break;
    case SolveStatus::kFeasible:
    case SolveStatus::kBounded:
      if (!want_feasible) os << "solver found a point, oracle says infeasible";
      else if (!got.solution || !problem.IsSolution(*got.solution))
        os << "solver point violates the instance";
      break;
    case SolveStatus::kOptimal:
      if (!want_feasible) {
        os << "solver says optimal, oracle says infeasible";
      } else if (got.objective != want.objective) {
        os << "solver optimum " << intsat::FormatObjective(*got.objective, problem)
           << ", oracle optimum "
           << intsat::FormatObjective(*want.objective, problem);
      }
      break;
    case SolveStatus::kTimeLimit:
      break;
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IntSat: conflict-driven constraint learning for ILP"};
  std::string input;
  std::string mode = "cut";
  double time_limit = 0;
  std::string restart = "inout:100,1000,1.1";
  std::string strategies = "7,5,1";
  uint64_t seed = 0;
  bool verify = false;
  std::string trace_path;
  bool print_stats = false;
  app.add_option("input", input, "Instance file")->required();
  app.add_option("--mode", mode, "Conflict analysis: resolution or cut")
      ->check(CLI::IsMember({"resolution", "cut"}));
  app.add_option("--time-limit", time_limit, "Wall-clock limit in seconds")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--restart", restart,
                 "luby:<unit>, inout:<inner>,<outer>,<factor> or none");
  app.add_option("--strategies", strategies,
                 "Value strategy order, e.g. 7,5,1 (ends with 1-4)");
  app.add_option("--seed", seed, "Activity noise seed (0 = none)");
  app.add_flag("--verify", verify, "Cross-check with exhaustive enumeration");
  app.add_option("--trace", trace_path, "Write a propagation/analysis trace");
  app.add_flag("--stats", print_stats, "Print search statistics");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  intsat::Problem problem;
  intsat::SolverConfig config;
  try {
    problem = intsat::ParseFile(input);
    config.mode = mode == "cut" ? intsat::AnalysisMode::kCut
                                : intsat::AnalysisMode::kResolution;
    config.restart = ParseRestart(restart);
    config.strategy_order = ParseStrategies(strategies);
    config.seed = seed;
    config.time_limit = time_limit;
    config.Validate(problem.num_vars());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInputError;
  }

  std::ofstream trace;
  if (!trace_path.empty()) {
    trace.open(trace_path);
    if (!trace) {
      std::cerr << "error: cannot write " << trace_path << '\n';
      return kExitInputError;
    }
  }

  std::atomic<bool> cancel{false};
  intsat::Solver solver(problem, config);
  solver.set_cancel_flag(&cancel);
  if (trace.is_open()) solver.set_trace(&trace);
  solver.set_progress_callback([&](double elapsed, intsat::Int value, int64_t) {
    std::cout << "t=" << std::fixed << std::setprecision(3) << elapsed
              << " obj=" << intsat::FormatObjective(value, problem) << std::endl;
  });
  intsat::SolveOutcome outcome;
  {
    Watchdog watchdog(time_limit, cancel);
    outcome = solver.Solve();
  }
  std::cout << intsat::WriteSolution(outcome, problem);

  if (print_stats) {
    const intsat::SolverStats& s = solver.stats();
    std::cout << "c conflicts=" << s.conflicts << '\n'
              << "c decisions=" << s.decisions << '\n'
              << "c propagations_binary=" << s.propagations_binary << '\n'
              << "c propagations_implicit=" << s.propagations_implicit << '\n'
              << "c propagations_clause=" << s.propagations_clause << '\n'
              << "c propagations_general=" << s.propagations_general << '\n'
              << "c restarts=" << s.restarts << '\n'
              << "c cleanups=" << s.cleanups << '\n'
              << "c learned=" << s.learned << '\n'
              << "c removed=" << s.removed << '\n'
              << "c early_backjumps=" << s.early_backjumps << '\n'
              << "c solutions=" << s.solutions << '\n';
  }
  std::cout.flush();

  if (verify) {
    try {
      intsat::SolveOutcome want = intsat::OracleSolve(problem);
      std::string diff = CompareWithOracle(outcome, want, problem);
      if (!diff.empty()) {
        std::cout << "c verify mismatch: " << diff << '\n';
        std::cout << "c oracle: " << intsat::WriteSolution(want, problem);
        return kExitVerifyMismatch;
      }
      std::cout << "c verify ok\n";
    } catch (const intsat::SearchSpaceTooLarge& e) {
      std::cout << "c verify skipped: " << e.what() << '\n';
    }
  }
  return outcome.status == intsat::SolveStatus::kTimeLimit ? kExitUnknown
                                                           : kExitAnswered;
}
