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


// Hybrid analysis: the conflicting set is rewritten as in resolution mode
// while a conflicting constraint is cut against the reason constraints. As
// soon as the conflicting constraint propagates a fresh bound at a lower
// decision level the analysis jumps there directly.

#ifndef INTSAT_CONFLICT_CUT_H_
#define INTSAT_CONFLICT_CUT_H_

#include <vector>

#include "intsat/conflict_resolution.h"

namespace intsat {

struct ScanResult {
  enum Kind { kNone, kPropagates, kFalseAtRoot };
  Kind kind = kNone;
  int level = 0;
  Bound bound;
  std::vector<int32_t> reason_set;
};

// Lowest decision level below `top_level` at which `cc` propagates a fresh
// bound, looking only at levels where the bounds of cc's variables change.
// Stops early when cc is false at some level.
ScanResult EarlyBackjumpScan(const Constraint& cc, const Trail& trail,
                             int top_level);

// True when x is the only variable shared by cc and rc; the cut between them
// then cannot propagate anything new.
bool CutSkipCheck(const Constraint& cc, const Constraint& rc, VarId x);

AnalysisResult AnalyzeHybrid(const Conflict& conflict,
                             const AnalysisInput& in);

}  // namespace intsat

#endif  // INTSAT_CONFLICT_CUT_H_
