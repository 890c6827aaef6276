#pragma once

#include <deque>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wb/deduce.hpp"

namespace wb {

class KbFormatError : public std::runtime_error {
 public:
  KbFormatError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg),
        lineNo(line) {}
  std::size_t lineNo;
};

// ---------------------------------------------------------------------------
// KB text format
//
//   atom <name>
//   prop <flag> <term>      |  notprop <flag> <term>
//   fact le <KIND> <t> <t>  |  fact nle <KIND> <t> <t>
//   # comment

inline KnowledgeBase loadKB(std::string_view text,
                            Fact::Src source = Fact::Src::User) {
  struct Stmt {
    enum class K { Atom, Prop, Le } k;
    bool positive = true;
    std::string name;       // atom name / flag name / kind name
    TermPtr t1, t2;
    std::string citation;   // trailing comment, kept as provenance
    std::size_t line;
  };
  std::vector<Stmt> stmts;

  std::size_t lineNo = 0;
  std::size_t pos = 0;
  while (pos < text.size() || (pos == 0 && !text.empty())) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string line(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++lineNo;

    std::string citation;
    if (auto h = line.find('#'); h != std::string::npos) {
      citation = line.substr(h + 1);
      while (!citation.empty() && citation.front() == ' ') citation.erase(0, 1);
      line.resize(h);
    }
    std::istringstream in(line);
    std::string word;
    if (!(in >> word)) {
      if (eol >= text.size()) break;
      continue;
    }
    auto parseTerms = [&](int n) {
      std::vector<TermPtr> ts;
      std::string rest;
      std::getline(in, rest);
      detail::TermParser p(rest);
      try {
        for (int i = 0; i < n; ++i) ts.push_back(p.parsePrefix());
        if (!p.atEnd())
          throw KbFormatError("trailing input after statement", lineNo);
      } catch (const ParseError& e) {
        throw KbFormatError(e.what(), lineNo);
      }
      return ts;
    };
    if (word == "atom") {
      std::string name;
      if (!(in >> name)) throw KbFormatError("atom: missing name", lineNo);
      stmts.push_back({Stmt::K::Atom, true, name, nullptr, nullptr, citation,
                       lineNo});
    } else if (word == "prop" || word == "notprop") {
      std::string fl;
      if (!(in >> fl)) throw KbFormatError("prop: missing flag", lineNo);
      auto ts = parseTerms(1);
      stmts.push_back({Stmt::K::Prop, word == "prop", fl, ts[0], nullptr,
                       citation, lineNo});
    } else if (word == "fact") {
      std::string sign, kindStr;
      if (!(in >> sign >> kindStr))
        throw KbFormatError("fact: expected 'le'/'nle' and a kind", lineNo);
      if (sign != "le" && sign != "nle")
        throw KbFormatError("fact: expected 'le' or 'nle', got '" + sign + "'",
                            lineNo);
      auto ts = parseTerms(2);
      stmts.push_back({Stmt::K::Le, sign == "le", kindStr, ts[0], ts[1],
                       citation, lineNo});
    } else {
      throw KbFormatError("unknown statement '" + word + "'", lineNo);
    }
    if (eol >= text.size()) break;
  }

  KnowledgeBase kb;
  for (const auto& s : stmts)
    if (s.k == Stmt::K::Atom) kb.addAtom(s.name);

  auto checkAtoms = [&](const TermPtr& t, std::size_t line) {
    auto undecl = kb.undeclaredAtoms(t);
    if (!undecl.empty())
      throw KbFormatError("undeclared atom '" + undecl.front() + "'", line);
  };

  // Attribute facts first so that completeness guards are visible when the
  // le facts get canonicalized.
  for (const auto& s : stmts) {
    if (s.k != Stmt::K::Prop) continue;
    auto fl = parseFlag(s.name);
    if (!fl) throw KbFormatError("unknown flag '" + s.name + "'", s.line);
    checkAtoms(s.t1, s.line);
    Fact f = Fact::prop(*fl, normalize(s.t1, Kind::W, kb), s.positive);
    f.src = source;
    f.citation = s.citation;
    kb.addFact(std::move(f));
  }
  for (const auto& s : stmts) {
    if (s.k != Stmt::K::Le) continue;
    auto k = parseKind(s.name);
    if (!k) throw KbFormatError("unknown kind '" + s.name + "'", s.line);
    checkAtoms(s.t1, s.line);
    checkAtoms(s.t2, s.line);
    Fact f = Fact::le(*k, normalize(s.t1, *k, kb), normalize(s.t2, *k, kb),
                      s.positive);
    f.src = source;
    f.citation = s.citation;
    kb.addFact(std::move(f));
  }
  return kb;
}

// ---------------------------------------------------------------------------
// Universe

namespace detail {

inline void universeAdd(KnowledgeBase& kb, const TermPtr& t,
                        std::deque<TermPtr>& pending) {
  if (kb.addUniverseTerm(t)) pending.push_back(t);
}

/// Universe = subterm closure of all fact terms (and registered query terms),
/// closed under canonical forms at every kind, then expanded by the unary
/// operations `depth` times (again closed under subterms and normal forms).
inline void buildUniverse(KnowledgeBase& kb, int depth) {
  std::deque<TermPtr> pending;
  for (const auto& f : kb.facts()) {
    universeAdd(kb, f.lhs, pending);
    if (f.rhs) universeAdd(kb, f.rhs, pending);
  }
  for (const auto& t : std::vector<TermPtr>(kb.universe()))
    pending.push_back(t);
  universeAdd(kb, Term::zero(), pending);
  universeAdd(kb, Term::one(), pending);
  universeAdd(kb, Term::inf(), pending);

  auto drain = [&] {
    while (!pending.empty()) {
      TermPtr t = pending.front();
      pending.pop_front();
      t->forEachChild([&](const TermPtr& c) { universeAdd(kb, c, pending); });
      for (Kind k : allKinds)
        universeAdd(kb, normalize(t, k, kb), pending);
    }
  };
  drain();
  for (int d = 0; d < depth; ++d) {
    std::vector<TermPtr> snapshot = kb.universe();
    for (const auto& t : snapshot)
      for (UnOp op : {UnOp::comp, UnOp::par, UnOp::fpar, UnOp::neg})
        universeAdd(kb, Term::unary(op, t), pending);
    drain();
  }
}

/// Head-shape index so conclusion scans do not walk the whole universe.
struct UniverseIndex {
  std::vector<TermPtr> all;
  std::unordered_map<std::size_t, std::vector<TermPtr>> byHead;

  static std::optional<std::size_t> headKey(const Pattern& p) {
    switch (p.k) {
      case Pattern::K::Var: return std::nullopt;
      case Pattern::K::C0: return 100;
      case Pattern::K::C1: return 101;
      case Pattern::K::CInf: return 102;
      case Pattern::K::Un: return 200 + static_cast<std::size_t>(p.uop);
      case Pattern::K::Bin: return 300 + static_cast<std::size_t>(p.bop);
      case Pattern::K::Med: return 400 + static_cast<std::size_t>(p.mop);
    }
    return std::nullopt;
  }

  static std::optional<std::size_t> headKey(const Term& t) {
    if (t.isConst0()) return 100;
    if (t.isConst1()) return 101;
    if (t.isConstInf()) return 102;
    if (auto* u = t.asUnary()) return 200 + static_cast<std::size_t>(u->op);
    if (auto* b = t.asBinary()) return 300 + static_cast<std::size_t>(b->op);
    if (auto* m = t.asMedApp()) return 400 + static_cast<std::size_t>(m->op);
    return std::nullopt;  // atoms / medvedev symbols share the fallback list
  }

  void build(const std::vector<TermPtr>& universe) {
    all = universe;
    for (const auto& t : universe)
      if (auto k = headKey(*t)) byHead[*k].push_back(t);
  }

  const std::vector<TermPtr>& candidates(const Pattern& p) const {
    if (auto k = headKey(p)) {
      auto it = byHead.find(*k);
      if (it != byHead.end()) return it->second;
      static const std::vector<TermPtr> empty;
      return empty;
    }
    return all;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Saturation

struct CloseStats {
  std::size_t derived = 0;
  std::size_t universeSize = 0;
};

namespace detail {

class Saturator {
 public:
  Saturator(KnowledgeBase& kb) : kb_(kb) { index_.build(kb.universe()); }

  void run() {
    for (int id = 0; id < static_cast<int>(kb_.facts().size()); ++id) {
      indexFact(id);
      worklist_.push_back(id);
    }
    // Premise-less rules fire once, over the universe.
    for (const auto& r : inferenceRules())
      if (r.premises.empty()) instantiateConclusion(r, {}, {});
    while (!worklist_.empty()) {
      int id = worklist_.front();
      worklist_.pop_front();
      for (const auto& r : inferenceRules()) {
        for (std::size_t pi = 0; pi < r.premises.size(); ++pi) {
          Binding b;
          if (!r.premises[pi].matches(kb_.fact(id), b)) continue;
          std::vector<int> ids(r.premises.size(), -1);
          ids[pi] = id;
          joinRemaining(r, b, ids, 0, pi);
        }
      }
    }
  }

  std::size_t derived() const { return derived_; }

 private:
  // --- fact indexes (by relation shape, optionally keyed by a side) ---

  static std::size_t relKey(const Fact& f) {
    std::size_t k = f.positive ? 1 : 0;
    k = k * 2 + (f.isProp ? 1 : 0);
    k = k * 64 +
        (f.isProp ? static_cast<std::size_t>(f.flag)
                  : static_cast<std::size_t>(f.kind));
    return k;
  }
  static std::size_t relKey(const RelPat& p) {
    std::size_t k = p.positive ? 1 : 0;
    k = k * 2 + (p.isProp ? 1 : 0);
    k = k * 64 +
        (p.isProp ? static_cast<std::size_t>(p.flag)
                  : static_cast<std::size_t>(p.kind));
    return k;
  }
  static std::size_t withTerm(std::size_t rel, const TermPtr& t) {
    return rel * 0x9e3779b97f4a7c15ull ^ t->hash();
  }

  void indexFact(int id) {
    const Fact& f = kb_.fact(id);
    std::size_t rk = relKey(f);
    byRel_[rk].push_back(id);
    byRelLhs_[withTerm(rk, f.lhs)].push_back(id);
    if (f.rhs) byRelRhs_[withTerm(rk, f.rhs) * 31u].push_back(id);
  }

  static bool groundUnder(const PatPtr& p, const Binding& b) {
    std::vector<std::string> vars;
    p->collectVars(vars);
    for (const auto& v : vars)
      if (!b.count(v)) return false;
    return true;
  }

  const std::vector<int>& candidateFacts(const RelPat& p, const Binding& b) {
    static const std::vector<int> empty;
    std::size_t rk = relKey(p);
    if (groundUnder(p.lhs, b)) {
      auto it = byRelLhs_.find(withTerm(rk, substPattern(p.lhs, b)));
      return it == byRelLhs_.end() ? empty : it->second;
    }
    if (p.rhs && groundUnder(p.rhs, b)) {
      auto it = byRelRhs_.find(withTerm(rk, substPattern(p.rhs, b)) * 31u);
      return it == byRelRhs_.end() ? empty : it->second;
    }
    auto it = byRel_.find(rk);
    return it == byRel_.end() ? empty : it->second;
  }

  void joinRemaining(const HornRule& r, const Binding& b, std::vector<int> ids,
                     std::size_t next, std::size_t fixed) {
    if (next == r.premises.size()) {
      instantiateConclusion(r, b, ids);
      return;
    }
    if (next == fixed) {
      joinRemaining(r, b, std::move(ids), next + 1, fixed);
      return;
    }
    // Candidate facts for premise `next` consistent with the binding; the
    // bucket can grow while we iterate, so index-based loop.
    const std::vector<int>& cand = candidateFacts(r.premises[next], b);
    for (std::size_t ci = 0; ci < cand.size(); ++ci) {
      int id = cand[ci];
      Binding b2 = b;
      if (!r.premises[next].matches(kb_.fact(id), b2)) continue;
      ids[next] = id;
      joinRemaining(r, b2, ids, next + 1, fixed);
    }
  }

  void instantiateConclusion(const HornRule& r, const Binding& b,
                             const std::vector<int>& ids) {
    // Ground remaining conclusion variables over the universe.
    std::vector<std::string> vars;
    r.conclusion.collectVars(vars);
    groundAndEmit(r, b, ids, vars, 0);
  }

  void groundAndEmit(const HornRule& r, Binding b, const std::vector<int>& ids,
                     const std::vector<std::string>& vars, std::size_t idx) {
    // Find the first unbound variable; ground it by matching whichever
    // conclusion pattern mentions it against universe terms.
    std::size_t unboundIdx = idx;
    while (unboundIdx < vars.size() && b.count(vars[unboundIdx]))
      ++unboundIdx;
    if (unboundIdx == vars.size()) {
      emit(r, b, ids);
      return;
    }
    const std::string& v = vars[unboundIdx];
    const Pattern* pat = nullptr;
    std::vector<std::string> pv1;
    r.conclusion.lhs->collectVars(pv1);
    if (std::find(pv1.begin(), pv1.end(), v) != pv1.end())
      pat = r.conclusion.lhs.get();
    else if (r.conclusion.rhs)
      pat = r.conclusion.rhs.get();
    if (!pat) return;
    PatPtr patPtr =
        pat == r.conclusion.lhs.get() ? r.conclusion.lhs : r.conclusion.rhs;
    for (const auto& t : index_.candidates(*pat)) {
      Binding b2 = b;
      if (!matchPattern(patPtr, t, b2)) continue;
      groundAndEmit(r, std::move(b2), ids, vars, unboundIdx);
    }
  }

  void emit(const HornRule& r, const Binding& b, const std::vector<int>& ids) {
    for (const auto& c : r.conds)
      if (!c.holds(b, kb_)) return;
    Fact f;
    const RelPat& cc = r.conclusion;
    if (cc.isProp) {
      TermPtr t = normalize(substPattern(cc.lhs, b), Kind::W, kb_);
      if (!kb_.inUniverse(t)) return;
      f = Fact::prop(cc.flag, std::move(t), cc.positive);
    } else {
      TermPtr l = normalize(substPattern(cc.lhs, b), cc.kind, kb_);
      TermPtr rr = normalize(substPattern(cc.rhs, b), cc.kind, kb_);
      if (!kb_.inUniverse(l) || !kb_.inUniverse(rr)) return;
      f = Fact::le(cc.kind, std::move(l), std::move(rr), cc.positive);
    }
    f.src = Fact::Src::Derived;
    f.rule = r.name;
    for (int id : ids)
      if (id >= 0) f.premises.push_back(id);
    if (auto id = kb_.addFact(std::move(f))) {
      ++derived_;
      indexFact(*id);
      worklist_.push_back(*id);
    }
  }

  KnowledgeBase& kb_;
  UniverseIndex index_;
  std::deque<int> worklist_;
  std::size_t derived_ = 0;
  std::unordered_map<std::size_t, std::vector<int>> byRel_, byRelLhs_,
      byRelRhs_;
};

}  // namespace detail

/// Saturates the fact base under the inference rules, restricted to the
/// finite universe. Register query terms with kb.addUniverseTerm before
/// closing. Terminates: the universe is finite and the fact set monotone.
inline CloseStats close(KnowledgeBase& kb, int depth = 1) {
  kb.freezeGuardBaseline();
  kb.closureDepth = depth;
  detail::buildUniverse(kb, depth);
  detail::Saturator sat(kb);
  sat.run();
  kb.closed = true;
  return CloseStats{sat.derived(), kb.universe().size()};
}

// ---------------------------------------------------------------------------
// Queries

enum class Answer { YES, NO, UNKNOWN };

inline std::string_view answerName(Answer a) {
  switch (a) {
    case Answer::YES: return "YES";
    case Answer::NO: return "NO";
    case Answer::UNKNOWN: return "UNKNOWN";
  }
  return "?";
}

struct QueryResult {
  Answer answer = Answer::UNKNOWN;
  std::optional<int> factId;
};

/// le-query against a closed knowledge base. YES if the positive fact was
/// derived, NO if the negative one was, UNKNOWN otherwise - never a guess.
inline QueryResult query(const KnowledgeBase& kb, Kind k, const TermPtr& t1,
                         const TermPtr& t2) {
  TermPtr n1 = normalize(t1, k, kb);
  TermPtr n2 = normalize(t2, k, kb);
  if (equal(n1, n2)) {
    // Reflexivity holds even if the closure never materialized this term.
    if (auto id = kb.findFact(Fact::le(k, n1, n2, true)))
      return {Answer::YES, id};
    return {Answer::YES, std::nullopt};
  }
  if (auto id = kb.findFact(Fact::le(k, n1, n2, true)))
    return {Answer::YES, id};
  if (auto id = kb.findFact(Fact::le(k, n1, n2, false)))
    return {Answer::NO, id};
  return {Answer::UNKNOWN, std::nullopt};
}

inline QueryResult queryProp(const KnowledgeBase& kb, Flag fl,
                             const TermPtr& t) {
  TermPtr n = normalize(t, Kind::W, kb);
  if (auto id = kb.findFact(Fact::prop(fl, n, true))) return {Answer::YES, id};
  if (auto id = kb.findFact(Fact::prop(fl, n, false))) return {Answer::NO, id};
  if (kb.guardProp(fl, n)) return {Answer::YES, std::nullopt};
  return {Answer::UNKNOWN, std::nullopt};
}

// ---------------------------------------------------------------------------
// Proof traces

struct ProofTrace {
  std::string conclusion;
  std::string rule;      // inference rule name, or "seed"/"user"/"axiom"
  std::string citation;  // paper citation for the rule or the seed fact
  std::vector<ProofTrace> premises;
};

inline ProofTrace buildTrace(const KnowledgeBase& kb, int factId) {
  const Fact& f = kb.fact(factId);
  ProofTrace t;
  t.conclusion = f.render();
  switch (f.src) {
    case Fact::Src::Seed:
      t.rule = "seed";
      t.citation = f.citation;
      break;
    case Fact::Src::Axiom:
      t.rule = "axiom";
      t.citation = f.citation;
      break;
    case Fact::Src::User:
      t.rule = "user";
      break;
    case Fact::Src::Derived: {
      t.rule = f.rule;
      if (const HornRule* r = findInferenceRule(f.rule)) t.citation = r->citation;
      for (int p : f.premises) t.premises.push_back(buildTrace(kb, p));
      break;
    }
  }
  return t;
}

/// Indented tree: conclusion, rule name, citation, then premises.
inline std::string explain(const ProofTrace& t, int indent = 0) {
  std::string out(static_cast<std::size_t>(indent) * 2, ' ');
  out += t.conclusion + "   [" + t.rule;
  if (!t.citation.empty()) out += ": " + t.citation;
  out += "]\n";
  for (const auto& p : t.premises) out += explain(p, indent + 1);
  return out;
}

/// Re-derives a fact from its recorded premises by running the recorded rule
/// forward; true iff the stored conclusion is among the rule's outputs.
inline bool replayFact(const KnowledgeBase& kb, int factId) {
  const Fact& f = kb.fact(factId);
  if (f.src != Fact::Src::Derived) return true;
  const HornRule* rule = findInferenceRule(f.rule);
  if (!rule) return false;
  if (rule->premises.size() != f.premises.size()) return false;
  Binding b;
  for (std::size_t i = 0; i < rule->premises.size(); ++i)
    if (!rule->premises[i].matches(kb.fact(f.premises[i]), b)) return false;
  for (const auto& c : rule->conds) {
    // Conds may mention conclusion-scan variables; those are checked below.
    std::vector<std::string> pvars;
    for (const auto& p : rule->premises) p.collectVars(pvars);
    if (std::find(pvars.begin(), pvars.end(), c.var) != pvars.end() &&
        !c.holds(b, kb))
      return false;
  }
  // Recover conclusion-only variables by matching the conclusion against the
  // stored fact, then re-normalize and compare.
  const RelPat& cc = rule->conclusion;
  if (cc.isProp != f.isProp || cc.positive != f.positive) return false;
  if (cc.isProp && cc.flag != f.flag) return false;
  if (!cc.isProp && cc.kind != f.kind) return false;

  // The stored terms are normal forms of the instantiated conclusion, so
  // direct pattern matching can fail. Search the universe for bindings of the
  // remaining variables instead and check one of them reproduces the fact.
  std::vector<std::string> vars;
  cc.collectVars(vars);
  std::vector<std::string> missing;
  for (const auto& v : vars)
    if (!b.count(v)) missing.push_back(v);

  std::function<bool(std::size_t, Binding&)> go = [&](std::size_t i,
                                                      Binding& bb) -> bool {
    if (i == missing.size()) {
      for (const auto& c : rule->conds)
        if (!c.holds(bb, kb)) return false;
      if (cc.isProp) {
        TermPtr t = normalize(substPattern(cc.lhs, bb), Kind::W, kb);
        return equal(t, f.lhs);
      }
      TermPtr l = normalize(substPattern(cc.lhs, bb), cc.kind, kb);
      TermPtr r = normalize(substPattern(cc.rhs, bb), cc.kind, kb);
      return equal(l, f.lhs) && equal(r, f.rhs);
    }
    for (const auto& t : kb.universe()) {
      bb.set(missing[i], t);
      if (go(i + 1, bb)) return true;
    }
    bb.erase(missing[i]);
    return false;
  };
  Binding bb = b;
  return go(0, bb);
}

/// Contradiction scan: positive and negative fact with the same key.
inline std::vector<Contradiction> checkConsistency(const KnowledgeBase& kb) {
  return kb.contradictions();
}

}  // namespace wb
