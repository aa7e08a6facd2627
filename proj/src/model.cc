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


#include "intsat/model.h"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace intsat {
namespace {

Int Gcd(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

Wide AbsWide(Wide v) { return v < 0 ? -v : v; }

// Sorts by variable and merges duplicates; zero coefficients are dropped.
std::vector<Monomial> Canonical(std::vector<Monomial> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return a.var < b.var; });
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (const Monomial& m : terms) {
    if (!out.empty() && out.back().var == m.var) {
      out.back().coeff += m.coeff;
    } else {
      out.push_back(m);
    }
  }
  std::erase_if(out, [](const Monomial& m) { return m.coeff == 0; });
  return out;
}

std::string VarName(VarId v, const Problem* problem) {
  if (problem != nullptr && v.index() >= 0 &&
      v.index() < static_cast<int>(problem->names.size())) {
    return problem->names[v.index()];
  }
  return "x" + std::to_string(v.index());
}

}  // namespace

Int FloorDiv(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Int CeilDiv(Int a, Int b) { return -FloorDiv(-a, b); }

Wide FloorDiv(Wide a, Wide b) {
  Wide q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

Wide CeilDiv(Wide a, Wide b) { return -FloorDiv(-a, b); }

Int Constraint::CoeffOf(VarId var) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), var,
      [](const Monomial& m, VarId v) { return m.var < v; });
  return (it != terms_.end() && it->var == var) ? it->coeff : 0;
}

Int Constraint::MaxAbsCoeff() const {
  Int best = 0;
  for (const Monomial& m : terms_) best = std::max(best, std::abs(m.coeff));
  return best;
}

Constraint Normalize(std::vector<Monomial> terms, Int rhs) {
  Constraint c;
  c.terms_ = Canonical(std::move(terms));
  if (c.terms_.empty()) {
    c.rhs_ = rhs >= 0 ? 0 : -1;
    return c;
  }
  Int g = 0;
  for (const Monomial& m : c.terms_) g = Gcd(g, m.coeff);
  if (g > 1) {
    for (Monomial& m : c.terms_) m.coeff /= g;
    rhs = FloorDiv(rhs, g);
  }
  c.rhs_ = rhs;
  return c;
}

Constraint MakeRaw(std::vector<Monomial> terms, Int rhs) {
  Constraint c;
  c.terms_ = Canonical(std::move(terms));
  c.rhs_ = c.terms_.empty() ? (rhs >= 0 ? 0 : -1) : rhs;
  return c;
}

namespace {

struct Combination {
  std::vector<std::pair<VarId, Wide>> terms;
  Wide rhs = 0;
};

std::optional<Combination> Combine(const Constraint& c1, const Constraint& c2,
                                   VarId var) {
  const Int a = c1.CoeffOf(var);
  const Int b = c2.CoeffOf(var);
  if (a == 0 || b == 0 || (a > 0) == (b > 0)) return std::nullopt;
  const Int g = Gcd(a, b);
  const Wide m1 = std::abs(b) / g;
  const Wide m2 = std::abs(a) / g;
  Combination out;
  const auto& t1 = c1.terms();
  const auto& t2 = c2.terms();
  size_t i = 0, j = 0;
  while (i < t1.size() || j < t2.size()) {
    VarId v;
    Wide sum = 0;
    if (j == t2.size() || (i < t1.size() && t1[i].var < t2[j].var)) {
      v = t1[i].var;
      sum = m1 * t1[i++].coeff;
    } else if (i == t1.size() || t2[j].var < t1[i].var) {
      v = t2[j].var;
      sum = m2 * t2[j++].coeff;
    } else {
      v = t1[i].var;
      sum = m1 * t1[i++].coeff + m2 * t2[j++].coeff;
    }
    if (sum != 0) out.terms.emplace_back(v, sum);
  }
  out.rhs = m1 * c1.rhs() + m2 * c2.rhs();
  return out;
}

}  // namespace

std::optional<Constraint> Cut(const Constraint& c1, const Constraint& c2,
                              VarId var) {
  std::optional<Combination> comb = Combine(c1, c2, var);
  if (!comb) return std::nullopt;
  Wide g = 0;
  for (const auto& [v, coeff] : comb->terms) {
    if (AbsWide(coeff) > kCoeffCap) return std::nullopt;
    g = std::gcd(static_cast<Int>(g), static_cast<Int>(AbsWide(coeff)));
  }
  if (comb->terms.empty()) {
    return MakeRaw({}, comb->rhs >= 0 ? 0 : -1);
  }
  const Wide rhs = FloorDiv(comb->rhs, g);
  if (AbsWide(rhs) > kCoeffCap) return std::nullopt;
  std::vector<Monomial> terms;
  terms.reserve(comb->terms.size());
  for (const auto& [v, coeff] : comb->terms) {
    terms.push_back({v, static_cast<Int>(coeff / g)});
  }
  return MakeRaw(std::move(terms), static_cast<Int>(rhs));
}

std::optional<Constraint> RawCut(const Constraint& c1, const Constraint& c2,
                                 VarId var) {
  std::optional<Combination> comb = Combine(c1, c2, var);
  if (!comb) return std::nullopt;
  std::vector<Monomial> terms;
  for (const auto& [v, coeff] : comb->terms) {
    terms.push_back({v, static_cast<Int>(coeff)});
  }
  return MakeRaw(std::move(terms), static_cast<Int>(comb->rhs));
}

Bound NegateBound(const Bound& b) {
  return b.is_lower() ? Bound::Upper(b.var, b.value - 1)
                      : Bound::Lower(b.var, b.value + 1);
}

Constraint BoundAsConstraint(const Bound& b) {
  return b.is_lower() ? MakeRaw({{b.var, -1}}, -b.value)
                      : MakeRaw({{b.var, 1}}, b.value);
}

bool Evaluate(const Constraint& c, std::span<const Int> sol) {
  Wide sum = 0;
  for (const Monomial& m : c.terms()) {
    sum += static_cast<Wide>(m.coeff) * sol[m.var.index()];
  }
  return sum <= c.rhs();
}

bool Satisfies(std::span<const Int> sol, const Bound& b) {
  return b.SatisfiedBy(sol[b.var.index()]);
}

Wide Objective::Value(std::span<const Int> sol) const {
  Wide sum = 0;
  for (const Monomial& m : terms) {
    sum += static_cast<Wide>(m.coeff) * sol[m.var.index()];
  }
  return sum;
}

Int Objective::CoeffOf(VarId var) const {
  for (const Monomial& m : terms) {
    if (m.var == var) return m.coeff;
  }
  return 0;
}

VarId Problem::AddVar(std::string name, Int lower, Int upper) {
  names.push_back(std::move(name));
  lb.push_back(lower);
  ub.push_back(upper);
  return VarId(static_cast<int32_t>(lb.size() - 1));
}

void Problem::AddConstraint(std::vector<Monomial> terms, Int rhs) {
  Constraint c = Normalize(std::move(terms), rhs);
  if (c.IsTautology()) return;
  constraints.push_back(std::move(c));
}

void Problem::SetObjective(std::vector<Monomial> terms) {
  objective = Objective{Canonical(std::move(terms))};
}

const std::string& Problem::NameOf(VarId v) const { return names[v.index()]; }

void Problem::Validate() const {
  if (ub.size() != lb.size()) {
    throw std::invalid_argument("bound vectors differ in size");
  }
  for (int i = 0; i < num_vars(); ++i) {
    if (lb[i] > ub[i]) {
      throw std::invalid_argument("variable " + std::to_string(i) +
                                  " has an empty domain");
    }
  }
  auto check_terms = [&](const std::vector<Monomial>& terms) {
    for (const Monomial& m : terms) {
      if (m.var.index() < 0 || m.var.index() >= num_vars()) {
        throw std::invalid_argument("unknown variable index " +
                                    std::to_string(m.var.index()));
      }
    }
  };
  for (const Constraint& c : constraints) check_terms(c.terms());
  if (objective) check_terms(objective->terms);
}

bool Problem::IsSolution(std::span<const Int> sol) const {
  if (static_cast<int>(sol.size()) != num_vars()) return false;
  for (int i = 0; i < num_vars(); ++i) {
    if (sol[i] < lb[i] || sol[i] > ub[i]) return false;
  }
  return std::all_of(constraints.begin(), constraints.end(),
                     [&](const Constraint& c) { return Evaluate(c, sol); });
}

std::string ToString(const Bound& b, const Problem* problem) {
  std::ostringstream os;
  if (b.is_lower()) {
    os << b.value << " <= " << VarName(b.var, problem);
  } else {
    os << VarName(b.var, problem) << " <= " << b.value;
  }
  return os.str();
}

std::string ToString(const Constraint& c, const Problem* problem) {
  std::ostringstream os;
  bool first = true;
  for (const Monomial& m : c.terms()) {
    Int a = m.coeff;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    a = std::abs(a);
    if (a != 1) os << a << "*";
    os << VarName(m.var, problem);
    first = false;
  }
  if (first) os << "0";
  os << " <= " << c.rhs();
  return os.str();
}

}  // namespace intsat
