#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "wb/kind.hpp"
#include "wb/term.hpp"

namespace wb {

/// Attribute flags carried by atoms (and, through prop facts, by arbitrary
/// terms). Three-valued: true / false / unknown; unknown is the default and
/// is never read as falsity.
enum class Flag {
  pointed,
  cylinder,
  complete,
  stronglyComplete,
  parallelizable,
  idempotent,
  computable,
  continuous,
  limitComputable,
  borel,
  nonUniformlyComputable,
  natOutput,
};

inline constexpr std::array<Flag, 12> allFlags{
    Flag::pointed,        Flag::cylinder,      Flag::complete,
    Flag::stronglyComplete, Flag::parallelizable, Flag::idempotent,
    Flag::computable,     Flag::continuous,    Flag::limitComputable,
    Flag::borel,          Flag::nonUniformlyComputable, Flag::natOutput};

inline std::string_view flagName(Flag f) {
  switch (f) {
    case Flag::pointed: return "pointed";
    case Flag::cylinder: return "cylinder";
    case Flag::complete: return "complete";
    case Flag::stronglyComplete: return "stronglyComplete";
    case Flag::parallelizable: return "parallelizable";
    case Flag::idempotent: return "idempotent";
    case Flag::computable: return "computable";
    case Flag::continuous: return "continuous";
    case Flag::limitComputable: return "limitComputable";
    case Flag::borel: return "borel";
    case Flag::nonUniformlyComputable: return "nonUniformlyComputable";
    case Flag::natOutput: return "natOutput";
  }
  return "?";
}

inline std::optional<Flag> parseFlag(std::string_view s) {
  for (Flag f : allFlags)
    if (flagName(f) == s) return f;
  return std::nullopt;
}

struct AtomDecl {
  std::string name;
  std::map<Flag, bool> flags;  // absent entry = unknown
};

/// Signed relational atom: le(kind, lhs, rhs) or prop(flag, term), positive
/// or negative, with its provenance.
struct Fact {
  enum class Src { Seed, Axiom, User, Derived };

  bool positive = true;
  bool isProp = false;
  Kind kind = Kind::W;  // le facts
  Flag flag = Flag::pointed;  // prop facts
  TermPtr lhs;          // prop: the term itself
  TermPtr rhs;          // le only

  Src src = Src::User;
  std::string citation;            // Seed / Axiom
  std::string rule;                // Derived: inference rule name
  std::vector<int> premises;       // Derived: fact ids

  static Fact le(Kind k, TermPtr l, TermPtr r, bool pos = true) {
    Fact f;
    f.positive = pos;
    f.isProp = false;
    f.kind = k;
    f.lhs = std::move(l);
    f.rhs = std::move(r);
    return f;
  }
  static Fact prop(Flag fl, TermPtr t, bool pos = true) {
    Fact f;
    f.positive = pos;
    f.isProp = true;
    f.flag = fl;
    f.lhs = std::move(t);
    return f;
  }

  std::string key() const {
    std::string k = positive ? "+" : "-";
    if (isProp) {
      k += "prop ";
      k += flagName(flag);
      k += ' ';
      k += printTerm(lhs);
    } else {
      k += "le ";
      k += kindName(kind);
      k += ' ';
      k += printTerm(lhs);
      k += ' ';
      k += printTerm(rhs);
    }
    return k;
  }

  /// Key of the opposite-sign fact (for contradiction detection).
  std::string negatedKey() const {
    Fact f = *this;
    f.positive = !positive;
    return f.key();
  }

  std::string render() const {
    std::string s;
    if (isProp) {
      s = std::string(positive ? "prop " : "notprop ") +
          std::string(flagName(flag)) + " " + printTerm(lhs);
    } else {
      s = std::string(positive ? "fact le " : "fact nle ") +
          std::string(kindName(kind)) + " " + printTerm(lhs) + " " +
          printTerm(rhs);
    }
    return s;
  }
};

struct Contradiction {
  int positiveId;
  int negativeId;
};

/// Fact base plus atom declarations and the finite term universe used by the
/// deduction engine. A closed knowledge base is immutable in practice and can
/// be queried concurrently.
class KnowledgeBase {
 public:
  // --- atoms ---
  bool addAtom(const std::string& name) {
    return atoms_.emplace(name, AtomDecl{name, {}}).second;
  }
  bool hasAtom(const std::string& name) const { return atoms_.count(name) > 0; }
  const std::map<std::string, AtomDecl>& atoms() const { return atoms_; }

  /// All Atom names occurring in t that are not declared.
  std::vector<std::string> undeclaredAtoms(const TermPtr& t) const {
    std::vector<std::string> out;
    collectUndeclared(t, out);
    return out;
  }

  // --- facts ---
  /// Inserts a fact whose terms are already in canonical form.
  /// Returns the fact id, or nullopt if it was already present.
  std::optional<int> addFact(Fact f) {
    std::string key = f.key();
    if (keyIndex_.count(key)) return std::nullopt;
    if (f.isProp && f.lhs->isAtom()) {
      auto it = atoms_.find(f.lhs->asAtom()->name);
      if (it != atoms_.end()) it->second.flags[f.flag] = f.positive;
    }
    int id = static_cast<int>(facts_.size());
    keyIndex_.emplace(std::move(key), id);
    facts_.push_back(std::move(f));
    return id;
  }

  const std::vector<Fact>& facts() const { return facts_; }
  const Fact& fact(int id) const { return facts_[static_cast<std::size_t>(id)]; }

  std::optional<int> findFact(const Fact& shape) const {
    auto it = keyIndex_.find(shape.key());
    if (it == keyIndex_.end()) return std::nullopt;
    return it->second;
  }

  std::vector<Contradiction> contradictions() const {
    std::vector<Contradiction> out;
    for (int i = 0; i < static_cast<int>(facts_.size()); ++i) {
      const Fact& f = facts_[static_cast<std::size_t>(i)];
      if (!f.positive) continue;
      auto it = keyIndex_.find(f.negatedKey());
      if (it != keyIndex_.end()) out.push_back({i, it->second});
    }
    return out;
  }

  // --- rewrite guards ---
  // Side conditions of conditional rewrite rules are discharged against the
  // fact base as it stood when the closure started (guardBaseline_), so
  // canonical forms stay stable while new facts are being derived.

  void freezeGuardBaseline() {
    if (guardBaseline_ != facts_.size()) normCache_.clear();
    guardBaseline_ = facts_.size();
  }
  bool baselineFrozen() const { return guardBaseline_ != SIZE_MAX; }

  /// Normal-form cache, valid while the guard baseline is stable. Keyed by
  /// (term, kind, context-class); maintained by the rewrite engine.
  struct NormKey {
    TermPtr t;
    Kind k;
    int ctx;
    bool operator==(const NormKey& o) const {
      return k == o.k && ctx == o.ctx && equal(t, o.t);
    }
  };
  struct NormKeyHash {
    std::size_t operator()(const NormKey& k) const {
      return k.t->hash() * 37u + static_cast<std::size_t>(k.k) * 7u +
             static_cast<std::size_t>(k.ctx);
    }
  };
  using NormCache = std::unordered_map<NormKey, TermPtr, NormKeyHash>;
  NormCache* normCache() const {
    return baselineFrozen() ? &normCache_ : nullptr;
  }

  bool guardProp(Flag fl, const TermPtr& t) const {
    if (structuralProp(fl, t)) return true;
    if (auto* a = t->asAtom()) {
      auto it = atoms_.find(a->name);
      if (it != atoms_.end()) {
        auto fit = it->second.flags.find(fl);
        if (fit != it->second.flags.end() && fit->second) return true;
      }
    }
    return hasBaselineFact(Fact::prop(fl, t));
  }

  /// Established t !=W 0 (equivalently nle(W, t, 0), since 0 is the bottom).
  bool guardNotZero(const TermPtr& t) const {
    if (t->isConst1() || t->isConstInf()) return true;
    if (t->isConst0()) return false;
    if (guardProp(Flag::pointed, t)) return true;  // 1 <=W t rules out 0
    return hasBaselineFact(Fact::le(Kind::W, t, Term::zero(), false));
  }

  /// Established t !=W INF (equivalently nle(W, INF, t); INF is a fresh top).
  bool guardNotInf(const TermPtr& t) const {
    if (t->isConst0() || t->isConst1()) return true;
    if (t->isConstInf()) return false;
    return hasBaselineFact(Fact::le(Kind::W, Term::inf(), t, false));
  }

  /// Structural attribute knowledge that does not depend on the fact base:
  /// completions are strongly complete and pointed, parallelizations are
  /// parallelizable, finite parallelizations and Medvedev images are pointed.
  static bool structuralProp(Flag fl, const TermPtr& t) {
    if (t->is(UnOp::comp)) {
      if (fl == Flag::complete || fl == Flag::stronglyComplete ||
          fl == Flag::pointed)
        return true;
    }
    if (t->is(UnOp::par) && fl == Flag::parallelizable) return true;
    if (fl == Flag::pointed) {
      if (t->isConst1() || t->isConstInf()) return true;
      if (t->is(UnOp::fpar)) return true;
      if (t->medvedevTyped()) return true;
      if (auto* u = t->asUnary(); u && u->op == UnOp::par)
        return structuralProp(fl, u->child);
      if (auto* b = t->asBinary()) {
        if (b->op == BinOp::prod)
          return structuralProp(fl, b->left) && structuralProp(fl, b->right);
        if (b->op == BinOp::coprod)
          return structuralProp(fl, b->left) || structuralProp(fl, b->right);
      }
    }
    return false;
  }

  // --- universe ---
  std::vector<TermPtr>& universe() { return universe_; }
  const std::vector<TermPtr>& universe() const { return universe_; }
  bool inUniverse(const TermPtr& t) const {
    return universeSet_.count(t) > 0;
  }
  bool addUniverseTerm(const TermPtr& t) {
    if (universeSet_.insert(t).second) {
      universe_.push_back(t);
      return true;
    }
    return false;
  }

  bool closed = false;
  int closureDepth = 1;

 private:
  bool hasBaselineFact(const Fact& shape) const {
    auto it = keyIndex_.find(shape.key());
    if (it == keyIndex_.end()) return false;
    return static_cast<std::size_t>(it->second) < guardBaseline_ ||
           guardBaseline_ == SIZE_MAX;
  }

  void collectUndeclared(const TermPtr& t, std::vector<std::string>& out) const {
    if (auto* a = t->asAtom()) {
      if (!hasAtom(a->name)) out.push_back(a->name);
      return;
    }
    t->forEachChild([&](const TermPtr& c) { collectUndeclared(c, out); });
  }

  std::map<std::string, AtomDecl> atoms_;
  std::vector<Fact> facts_;
  std::unordered_map<std::string, int> keyIndex_;
  std::vector<TermPtr> universe_;
  std::unordered_set<TermPtr, TermHash, TermEq> universeSet_;
  std::size_t guardBaseline_ = SIZE_MAX;
  mutable NormCache normCache_;
};

}  // namespace wb
