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

// Core value types of the solver: variables, bounds, linear constraints,
// objectives and problems, together with the arithmetic rules shared by every
// other module (normalisation, the cut rule and bound negation).

#ifndef INTSAT_MODEL_H_
#define INTSAT_MODEL_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace intsat {

using Int = int64_t;
// Wide accumulator for sums of products; every product of a capped
// coefficient and a bound value fits comfortably.
using Wide = __int128;

// Magnitude cap for coefficients (and right-hand sides of stored
// constraints). Cuts that would exceed it are not performed.
inline constexpr Int kCoeffCap = Int{1} << 30;

struct VarId {
  int32_t value = -1;

  constexpr VarId() = default;
  constexpr explicit VarId(int32_t v) : value(v) {}
  constexpr int32_t index() const { return value; }
  constexpr auto operator<=>(const VarId&) const = default;
};

struct Monomial {
  VarId var;
  Int coeff = 0;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// a_1 x_1 + ... + a_n x_n <= rhs, with monomials sorted by variable, no
// duplicates and no zero coefficients. Instances built through Normalize()
// additionally have gcd(a_i) == 1. A constraint with no monomials is the
// degenerate "0 <= rhs", canonicalised to rhs 0 (tautology) or -1
// (contradiction).
class Constraint {
 public:
  Constraint() = default;

  const std::vector<Monomial>& terms() const { return terms_; }
  Int rhs() const { return rhs_; }
  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  bool IsTautology() const { return terms_.empty() && rhs_ >= 0; }
  bool IsContradiction() const { return terms_.empty() && rhs_ < 0; }

  // Coefficient of `var`, 0 when absent.
  Int CoeffOf(VarId var) const;
  bool Contains(VarId var) const { return CoeffOf(var) != 0; }

  // Largest coefficient magnitude (0 for the degenerate constraint).
  Int MaxAbsCoeff() const;

  friend bool operator==(const Constraint&, const Constraint&) = default;

 private:
  friend Constraint Normalize(std::vector<Monomial> terms, Int rhs);
  friend Constraint MakeRaw(std::vector<Monomial> terms, Int rhs);

  std::vector<Monomial> terms_;
  Int rhs_ = 0;
};

// Merges duplicate variables, drops zero coefficients, divides by the gcd of
// the coefficients and floors the right-hand side.
Constraint Normalize(std::vector<Monomial> terms, Int rhs);

// Same canonical ordering as Normalize() but without dividing by the gcd.
// Used where an unnormalised constraint is needed (tests of the rounding
// lemmas).
Constraint MakeRaw(std::vector<Monomial> terms, Int rhs);

// Cut eliminating `var` between c1 and c2 with the minimal multiplier pair.
// Absent when `var` does not occur with opposite signs or when any
// coefficient (before or after normalisation) or the normalised rhs would
// exceed kCoeffCap.
std::optional<Constraint> Cut(const Constraint& c1, const Constraint& c2,
                              VarId var);

// Same combination without the final normalisation, and without the cap.
std::optional<Constraint> RawCut(const Constraint& c1, const Constraint& c2,
                                 VarId var);

enum class BoundKind : uint8_t { kLower, kUpper };

// `value <= var` (kLower) or `var <= value` (kUpper).
struct Bound {
  VarId var;
  BoundKind kind = BoundKind::kLower;
  Int value = 0;

  static constexpr Bound Lower(VarId v, Int value) {
    return Bound{v, BoundKind::kLower, value};
  }
  static constexpr Bound Upper(VarId v, Int value) {
    return Bound{v, BoundKind::kUpper, value};
  }

  bool is_lower() const { return kind == BoundKind::kLower; }
  bool is_upper() const { return kind == BoundKind::kUpper; }
  bool SatisfiedBy(Int v) const { return is_lower() ? value <= v : v <= value; }

  friend bool operator==(const Bound&, const Bound&) = default;
};

// Integer negation: not(k <= x) is x <= k-1, not(x <= k) is k+1 <= x.
Bound NegateBound(const Bound& b);

// The bound written as a constraint (single monomial).
Constraint BoundAsConstraint(const Bound& b);

using Solution = std::vector<Int>;

// True iff sum a_i * sol[x_i] <= rhs.
bool Evaluate(const Constraint& c, std::span<const Int> sol);
bool Satisfies(std::span<const Int> sol, const Bound& b);

struct Objective {
  std::vector<Monomial> terms;  // sorted by variable, non-zero coefficients

  Wide Value(std::span<const Int> sol) const;
  Int CoeffOf(VarId var) const;
};

struct Problem {
  std::vector<std::string> names;
  std::vector<Int> lb;
  std::vector<Int> ub;
  std::vector<Constraint> constraints;
  std::optional<Objective> objective;
  // Input objective values are reported as
  // (value + objective_offset) / objective_scale.
  Int objective_scale = 1;
  Int objective_offset = 0;

  int num_vars() const { return static_cast<int>(lb.size()); }
  VarId AddVar(std::string name, Int lower, Int upper);
  // Normalises and appends; tautologies are dropped.
  void AddConstraint(std::vector<Monomial> terms, Int rhs);
  void SetObjective(std::vector<Monomial> terms);

  bool IsBinary(VarId v) const {
    return lb[v.index()] == 0 && ub[v.index()] == 1;
  }
  const std::string& NameOf(VarId v) const;

  // Throws std::invalid_argument when some variable has lb > ub or a
  // constraint mentions an unknown variable.
  void Validate() const;

  // Every bound and constraint (input box included) holds.
  bool IsSolution(std::span<const Int> sol) const;
};

std::string ToString(const Bound& b, const Problem* problem = nullptr);
std::string ToString(const Constraint& c, const Problem* problem = nullptr);

Int FloorDiv(Int a, Int b);
Int CeilDiv(Int a, Int b);
Wide FloorDiv(Wide a, Wide b);
Wide CeilDiv(Wide a, Wide b);

}  // namespace intsat

#endif  // INTSAT_MODEL_H_
