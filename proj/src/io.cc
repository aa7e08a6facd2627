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


#include "intsat/io.h"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

namespace intsat {
namespace {

constexpr int kMaxDecimals = 3;
constexpr Int kPow10[] = {1, 10, 100, 1000};

// A decimal number mantissa / 10^decimals.
struct Decimal {
  Int mantissa = 0;
  int decimals = 0;
};

struct RawTerm {
  Decimal coeff;
  std::string name;  // empty for a constant
};

enum class Relation { kLe, kGe, kEq };

class LineParser {
 public:
  LineParser(std::string_view text, int line) : s_(text), line_(line) {}

  void SkipSpace() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  bool AtEnd() {
    SkipSpace();
    return i_ >= s_.size();
  }
  char Peek() {
    SkipSpace();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  bool Accept(std::string_view tok) {
    SkipSpace();
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void Expect(std::string_view tok) {
    if (!Accept(tok)) Fail("expected '" + std::string(tok) + "'");
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError(line_, msg);
  }

  bool AtName() {
    char c = Peek();
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }
  bool AtNumber() {
    char c = Peek();
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  }

  std::string Name() {
    SkipSpace();
    size_t start = i_;
    if (!AtName()) Fail("expected a variable name");
    while (i_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
            s_[i_] == '_' || s_[i_] == '.' || s_[i_] == '[' ||
            s_[i_] == ']')) {
      ++i_;
    }
    return std::string(s_.substr(start, i_ - start));
  }

  // Unsigned decimal.
  Decimal Number() {
    SkipSpace();
    Decimal d;
    bool digits = false;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      d.mantissa = Mul10(d.mantissa) + (s_[i_++] - '0');
      digits = true;
    }
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      while (i_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[i_]))) {
        if (++d.decimals > kMaxDecimals) {
          Fail("numbers may have at most 3 fraction digits");
        }
        d.mantissa = Mul10(d.mantissa) + (s_[i_++] - '0');
        digits = true;
      }
    }
    if (!digits) Fail("expected a number");
    return d;
  }

  Int SignedInteger() {
    bool neg = false;
    if (Accept("-")) {
      neg = true;
    } else {
      Accept("+");
    }
    SkipSpace();
    if (Accept("inf")) Fail("unbounded variables are not supported");
    Decimal d = Number();
    if (d.decimals > 0) Fail("variable bounds must be integers");
    return neg ? -d.mantissa : d.mantissa;
  }

  // term (+|- term)*
  std::vector<RawTerm> Terms() {
    std::vector<RawTerm> out;
    bool first = true;
    while (true) {
      bool neg = false;
      if (Accept("+")) {
      } else if (Accept("-")) {
        neg = true;
      } else if (!first) {
        break;
      }
      RawTerm t;
      if (AtNumber()) {
        t.coeff = Number();
        Accept("*");
        if (AtName()) t.name = Name();
      } else if (AtName()) {
        t.coeff = Decimal{1, 0};
        t.name = Name();
      } else {
        Fail("expected a term");
      }
      if (neg) t.coeff.mantissa = -t.coeff.mantissa;
      out.push_back(std::move(t));
      first = false;
    }
    return out;
  }

 private:
  Int Mul10(Int v) const {
    if (v > (Int{1} << 58)) Fail("number too large");
    return v * 10;
  }

  std::string_view s_;
  size_t i_ = 0;
  int line_;
};

struct Row {
  std::vector<RawTerm> lhs;
  Relation rel = Relation::kLe;
  Decimal rhs;
  int line = 0;
};

std::string_view StripComment(std::string_view line) {
  size_t hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

Int Scale(const Decimal& d, int decimals, int line) {
  const Wide v = static_cast<Wide>(d.mantissa) * kPow10[decimals - d.decimals];
  if (v > kPlusInf || v < -kPlusInf) throw ParseError(line, "number too large");
  return static_cast<Int>(v);
}

}  // namespace

Problem Parse(std::string_view text) {
  Problem problem;
  std::unordered_map<std::string, int> index;
  std::vector<Row> rows;
  std::optional<std::pair<std::vector<RawTerm>, int>> objective;

  std::vector<std::string_view> lines;
  for (size_t start = 0; start <= text.size();) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }

  // First pass: declarations.
  for (size_t n = 0; n < lines.size(); ++n) {
    const int line = static_cast<int>(n + 1);
    std::string_view body = StripComment(lines[n]);
    LineParser p(body, line);
    if (p.AtEnd()) continue;
    if (!p.Accept("var ")) continue;
    std::string name = p.Name();
    if (index.count(name)) p.Fail("variable '" + name + "' declared twice");
    p.Expect("int");
    if (p.AtEnd() || p.Peek() != '[') {
      p.Fail("variable '" + name +
             "' has no bounds; unbounded variables are not supported");
    }
    p.Expect("[");
    Int lb = p.SignedInteger();
    p.Expect(",");
    Int ub = p.SignedInteger();
    p.Expect("]");
    if (!p.AtEnd()) p.Fail("unexpected text after declaration");
    if (std::abs(lb) > kCoeffCap || std::abs(ub) > kCoeffCap) {
      p.Fail("bounds of '" + name + "' exceed 2^30 in magnitude");
    }
    if (lb > ub) p.Fail("variable '" + name + "' has an empty domain");
    index[name] = problem.num_vars();
    problem.AddVar(name, lb, ub);
  }

  // Second pass: objective and constraints.
  for (size_t n = 0; n < lines.size(); ++n) {
    const int line = static_cast<int>(n + 1);
    std::string_view body = StripComment(lines[n]);
    LineParser p(body, line);
    if (p.AtEnd() || p.Accept("var ")) continue;
    if (p.Accept("min:")) {
      if (objective) p.Fail("more than one objective");
      std::vector<RawTerm> terms = p.Terms();
      if (!p.AtEnd()) p.Fail("unexpected text after objective");
      objective.emplace(std::move(terms), line);
      continue;
    }
    Row row;
    row.line = line;
    row.lhs = p.Terms();
    if (p.Accept("<=")) {
      row.rel = Relation::kLe;
    } else if (p.Accept(">=")) {
      row.rel = Relation::kGe;
    } else if (p.Accept("=")) {
      row.rel = Relation::kEq;
    } else {
      p.Fail("expected <=, >= or =");
    }
    bool neg = false;
    if (p.Accept("-")) {
      neg = true;
    } else {
      p.Accept("+");
    }
    row.rhs = p.Number();
    if (neg) row.rhs.mantissa = -row.rhs.mantissa;
    if (!p.AtEnd()) p.Fail("unexpected text after constraint");
    rows.push_back(std::move(row));
  }

  auto resolve = [&](const std::string& name, int line) {
    auto it = index.find(name);
    if (it == index.end()) {
      throw ParseError(line, "undeclared variable '" + name + "'");
    }
    return VarId(it->second);
  };

  for (const Row& row : rows) {
    int decimals = row.rhs.decimals;
    for (const RawTerm& t : row.lhs) decimals = std::max(decimals, t.coeff.decimals);
    std::map<int, Wide> coeffs;
    Wide rhs = Scale(row.rhs, decimals, row.line);
    for (const RawTerm& t : row.lhs) {
      const Int v = Scale(t.coeff, decimals, row.line);
      if (t.name.empty()) {
        rhs -= v;
      } else {
        coeffs[resolve(t.name, row.line).index()] += v;
      }
    }
    std::vector<Monomial> terms;
    for (const auto& [var, a] : coeffs) {
      if (a == 0) continue;
      if (a > kCoeffCap || a < -kCoeffCap) {
        throw ParseError(row.line, "coefficient exceeds 2^30 after scaling");
      }
      terms.push_back({VarId(var), static_cast<Int>(a)});
    }
    if (rhs > kPlusInf || rhs < -kPlusInf) {
      throw ParseError(row.line, "right-hand side too large");
    }
    const Int r = static_cast<Int>(rhs);
    std::vector<Monomial> negated = terms;
    for (Monomial& m : negated) m.coeff = -m.coeff;
    if (row.rel != Relation::kGe) problem.AddConstraint(terms, r);
    if (row.rel != Relation::kLe) problem.AddConstraint(negated, -r);
  }

  if (objective) {
    const auto& [terms, line] = *objective;
    int decimals = 0;
    for (const RawTerm& t : terms) decimals = std::max(decimals, t.coeff.decimals);
    std::map<int, Wide> coeffs;
    Wide offset = 0;
    for (const RawTerm& t : terms) {
      const Int v = Scale(t.coeff, decimals, line);
      if (t.name.empty()) {
        offset += v;
      } else {
        coeffs[resolve(t.name, line).index()] += v;
      }
    }
    std::vector<Monomial> mono;
    for (const auto& [var, a] : coeffs) {
      if (a == 0) continue;
      if (a > kCoeffCap || a < -kCoeffCap) {
        throw ParseError(line, "objective coefficient exceeds 2^30");
      }
      mono.push_back({VarId(var), static_cast<Int>(a)});
    }
    problem.SetObjective(std::move(mono));
    problem.objective_scale = kPow10[decimals];
    problem.objective_offset = static_cast<Int>(offset);
  }
  return problem;
}

Problem ParseFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return Parse(ss.str());
}

std::string FormatObjective(Int value, const Problem& problem) {
  const Int v = value + problem.objective_offset;
  const Int scale = problem.objective_scale;
  if (scale == 1) return std::to_string(v);
  std::string digits = std::to_string(v < 0 ? -v : v);
  int frac = 0;
  for (Int s = scale; s > 1; s /= 10) ++frac;
  while (static_cast<int>(digits.size()) <= frac) digits.insert(0, "0");
  std::string out = digits.substr(0, digits.size() - frac) + "." +
                    digits.substr(digits.size() - frac);
  while (out.back() == '0') out.pop_back();
  if (out.back() == '.') out.pop_back();
  return (v < 0 ? "-" : "") + out;
}

std::string WriteSolution(const SolveOutcome& outcome, const Problem& problem) {
  std::ostringstream os;
  switch (outcome.status) {
    case SolveStatus::kInfeasible:
      os << "INFEASIBLE\n";
      return os.str();
    case SolveStatus::kTimeLimit:
      os << "UNKNOWN\n";
      return os.str();
    case SolveStatus::kOptimal:
      os << "OPTIMAL";
      break;
    case SolveStatus::kFeasible:
    case SolveStatus::kBounded:
      os << "FEASIBLE";
      break;
  }
  if (outcome.objective) {
    os << ' ' << FormatObjective(*outcome.objective, problem);
  }
  os << '\n';
  if (outcome.solution) {
    for (int v = 0; v < problem.num_vars(); ++v) {
      os << problem.names[v] << " = " << (*outcome.solution)[v] << '\n';
    }
  }
  return os.str();
}

std::string WriteProblem(const Problem& problem) {
  std::ostringstream os;
  for (int v = 0; v < problem.num_vars(); ++v) {
    os << "var " << problem.names[v] << " int [" << problem.lb[v] << ", "
       << problem.ub[v] << "]\n";
  }
  auto write_terms = [&](const std::vector<Monomial>& terms, Int scale) {
    bool first = true;
    for (const Monomial& m : terms) {
      const Int a = m.coeff;
      os << (first ? (a < 0 ? "-" : "") : (a < 0 ? " - " : " + "));
      Problem unit;
      unit.objective_scale = scale;
      os << FormatObjective(a < 0 ? -a : a, unit) << " " << problem.names[m.var.index()];
      first = false;
    }
    if (first) os << "0";
  };
  if (problem.objective) {
    os << "min: ";
    write_terms(problem.objective->terms, problem.objective_scale);
    if (problem.objective_offset != 0) {
      Problem unit;
      unit.objective_scale = problem.objective_scale;
      const Int off = problem.objective_offset;
      os << (off < 0 ? " - " : " + ") << FormatObjective(off < 0 ? -off : off, unit);
    }
    os << '\n';
  }
  for (const Constraint& c : problem.constraints) {
    write_terms(c.terms(), 1);
    os << " <= " << c.rhs() << '\n';
  }
  return os.str();
}

}  // namespace intsat
