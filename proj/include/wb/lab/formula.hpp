#pragma once

#include <cctype>
#include <map>
#include <memory>
#include <sstream>

#include "wb/lab/algebra.hpp"

namespace wb::lab {

// ---------------------------------------------------------------------------
// Propositional formulas: variables A..Z, & | -> ~ and parentheses.

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  enum class K { Var, And, Or, Imp, Not };
  K k;
  char var = 0;
  FormulaPtr a, b;

  static FormulaPtr mkVar(char v) {
    return std::make_shared<Formula>(Formula{K::Var, v, nullptr, nullptr});
  }
  static FormulaPtr mk(K k, FormulaPtr x, FormulaPtr y = nullptr) {
    return std::make_shared<Formula>(Formula{k, 0, std::move(x), std::move(y)});
  }

  void collectVars(std::vector<char>& out) const {
    if (k == K::Var) {
      if (std::find(out.begin(), out.end(), var) == out.end()) out.push_back(var);
      return;
    }
    if (a) a->collectVars(out);
    if (b) b->collectVars(out);
  }

  std::string render() const {
    switch (k) {
      case K::Var: return std::string(1, var);
      case K::Not: return "~" + a->render();
      case K::And: return "(" + a->render() + " & " + b->render() + ")";
      case K::Or: return "(" + a->render() + " | " + b->render() + ")";
      case K::Imp: return "(" + a->render() + " -> " + b->render() + ")";
    }
    return "?";
  }
};

class FormulaParseError : public std::runtime_error {
 public:
  FormulaParseError(const std::string& m, std::size_t p)
      : std::runtime_error(m + " at position " + std::to_string(p)), pos(p) {}
  std::size_t pos;
};

namespace detail {

// Precedence: ~  >  &  >  |  >  ->  (implication right-associative).
class FormulaParser {
 public:
  explicit FormulaParser(std::string_view s) : s_(s) {}
  FormulaPtr parse() {
    FormulaPtr f = imp();
    skip();
    if (pos_ != s_.size()) throw FormulaParseError("trailing input", pos_);
    return f;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  bool eatArrow() {
    skip();
    if (pos_ + 1 < s_.size() && s_[pos_] == '-' && s_[pos_ + 1] == '>') {
      pos_ += 2;
      return true;
    }
    return false;
  }
  FormulaPtr imp() {
    FormulaPtr l = disj();
    if (eatArrow()) return Formula::mk(Formula::K::Imp, std::move(l), imp());
    return l;
  }
  FormulaPtr disj() {
    FormulaPtr l = conj();
    while (eat('|')) l = Formula::mk(Formula::K::Or, std::move(l), conj());
    return l;
  }
  FormulaPtr conj() {
    FormulaPtr l = unary();
    while (eat('&')) l = Formula::mk(Formula::K::And, std::move(l), unary());
    return l;
  }
  FormulaPtr unary() {
    skip();
    if (eat('~')) return Formula::mk(Formula::K::Not, unary());
    if (eat('(')) {
      FormulaPtr f = imp();
      if (!eat(')')) throw FormulaParseError("expected ')'", pos_);
      return f;
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] >= 'A' && s_[pos_] <= 'Z')
      return Formula::mkVar(s_[pos_++]);
    throw FormulaParseError("expected variable A..Z", pos_);
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline FormulaPtr parseFormula(std::string_view text) {
  return detail::FormulaParser(text).parse();
}

// ---------------------------------------------------------------------------
// Valuations (section 8 semantics, with the paper's swap)

using Valuation = std::map<char, int>;

/// Recursive evaluation with the paper's assignment:
///   v(A | B) = lattice meet, v(A & B) = lattice join,
///   v(A -> B) = imp(v(A), v(B)), v(~A) = imp(v(A), top).
inline int evaluate(const FiniteAlgebra& A, const Valuation& v,
                    const FormulaPtr& f) {
  if (!A.imp) throw std::invalid_argument("evaluate: algebra has no implication");
  auto idx = [](int a) { return static_cast<std::size_t>(a); };
  switch (f->k) {
    case Formula::K::Var: {
      auto it = v.find(f->var);
      if (it == v.end())
        throw std::invalid_argument(std::string("unbound variable ") + f->var);
      return it->second;
    }
    case Formula::K::Or:
      return A.lat.meet[idx(evaluate(A, v, f->a))][idx(evaluate(A, v, f->b))];
    case Formula::K::And:
      return A.lat.join[idx(evaluate(A, v, f->a))][idx(evaluate(A, v, f->b))];
    case Formula::K::Imp:
      return (*A.imp)[idx(evaluate(A, v, f->a))][idx(evaluate(A, v, f->b))];
    case Formula::K::Not:
      return (*A.imp)[idx(evaluate(A, v, f->a))][idx(A.lat.top)];
  }
  return -1;
}

struct ValidityResult {
  bool valid = true;
  Valuation countervaluation;  // populated when invalid
  int value = -1;              // value of the countervaluation
};

struct ValidityBounds {
  int maxVariables = 4;
  int maxCarrier = 32;
};

/// Enumerates all |carrier|^|vars| valuations; the formula is valid iff every
/// evaluation equals the algebra unit 1 (the lattice bottom, in the Brouwer
/// orientation).
inline ValidityResult isValid(const FiniteAlgebra& A, const FormulaPtr& f,
                              ValidityBounds bounds = {}) {
  std::vector<char> vars;
  f->collectVars(vars);
  std::sort(vars.begin(), vars.end());
  if (static_cast<int>(vars.size()) > bounds.maxVariables)
    throw std::invalid_argument("isValid: variable bound exceeded");
  if (A.n() > bounds.maxCarrier)
    throw std::invalid_argument("isValid: carrier bound exceeded");

  std::vector<int> assign(vars.size(), 0);
  for (;;) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = assign[i];
    int val = evaluate(A, v, f);
    if (val != A.one) return {false, v, val};
    std::size_t i = 0;
    for (; i < assign.size(); ++i) {
      if (++assign[i] < A.n()) break;
      assign[i] = 0;
    }
    if (i == assign.size()) break;
    if (vars.empty()) break;
  }
  return {};
}

/// The weak excluded middle ~~A | ~A, the Jankov axiom.
inline FormulaPtr jankovAxiom() { return parseFormula("~~A | ~A"); }

inline bool theoryIncludesJankov(const FiniteAlgebra& A,
                                 ValidityBounds bounds = {}) {
  return isValid(A, jankovAxiom(), bounds).valid;
}

// ---------------------------------------------------------------------------
// Algebra file format
//
//   carrier a b c
//   leq 1 1 1            (one row per element)
//   leq 0 1 1
//   leq 0 0 1
//   dot join             (optional: "join" or explicit rows of names)
//   one a                (optional; defaults to the lattice bottom)

inline FiniteAlgebra loadAlgebra(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;
  std::vector<std::vector<std::string>> dotRows;
  bool dotJoin = false;
  std::optional<std::string> oneName;

  std::size_t pos = 0, lineNo = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineNo;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream in(line);
    std::string word;
    if (!(in >> word)) continue;
    if (word == "carrier") {
      std::string nm;
      while (in >> nm) names.push_back(nm);
    } else if (word == "leq") {
      std::vector<bool> row;
      int b;
      while (in >> b) row.push_back(b != 0);
      leq.push_back(std::move(row));
    } else if (word == "dot") {
      std::string tok;
      std::vector<std::string> row;
      while (in >> tok) row.push_back(tok);
      if (row.size() == 1 && row[0] == "join")
        dotJoin = true;
      else
        dotRows.push_back(std::move(row));
    } else if (word == "one") {
      std::string nm;
      in >> nm;
      oneName = nm;
    } else {
      throw std::invalid_argument("algebra file line " + std::to_string(lineNo) +
                                  ": unknown field '" + word + "'");
    }
  }
  if (names.empty()) throw std::invalid_argument("algebra file: no carrier");
  if (leq.size() != names.size())
    throw std::invalid_argument("algebra file: leq row count mismatch");

  auto elem = [&](const std::string& nm) {
    auto it = std::find(names.begin(), names.end(), nm);
    if (it == names.end())
      throw std::invalid_argument("algebra file: unknown element '" + nm + "'");
    return static_cast<int>(it - names.begin());
  };

  FiniteLattice L = FiniteLattice::fromOrder(FinitePreorder(leq, names));
  FiniteAlgebra A;
  A.lat = std::move(L);
  if (dotRows.empty() || dotJoin) {
    A.dot = A.lat.join;
  } else {
    if (dotRows.size() != names.size())
      throw std::invalid_argument("algebra file: dot row count mismatch");
    A.dot.assign(names.size(), std::vector<int>(names.size(), -1));
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (dotRows[i].size() != names.size())
        throw std::invalid_argument("algebra file: dot row width mismatch");
      for (std::size_t j = 0; j < names.size(); ++j)
        A.dot[i][j] = elem(dotRows[i][j]);
    }
  }
  A.one = oneName ? elem(*oneName) : A.lat.bottom;
  auto res = coResidual(A.lat, A.dot);
  if (auto* t = std::get_if<Table>(&res)) A.imp = *t;
  return A;
}

inline std::string saveAlgebra(const FiniteAlgebra& A) {
  std::string out = "carrier";
  for (int i = 0; i < A.n(); ++i) out += " " + A.name(i);
  out += "\n";
  for (int i = 0; i < A.n(); ++i) {
    out += "leq";
    for (int j = 0; j < A.n(); ++j)
      out += A.lat.order.le(i, j) ? " 1" : " 0";
    out += "\n";
  }
  if (A.dot == A.lat.join) {
    out += "dot join\n";
  } else {
    for (int i = 0; i < A.n(); ++i) {
      out += "dot";
      for (int j = 0; j < A.n(); ++j)
        out += " " + A.name(A.dot[static_cast<std::size_t>(i)]
                                 [static_cast<std::size_t>(j)]);
      out += "\n";
    }
  }
  out += "one " + A.name(A.one) + "\n";
  return out;
}

}  // namespace wb::lab
