#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "wb/kb.hpp"
#include "wb/kind.hpp"
#include "wb/term.hpp"

namespace wb {

class RewriteLimitError : public std::runtime_error {
 public:
  explicit RewriteLimitError(const std::string& msg)
      : std::runtime_error(msg) {}
};

// ---------------------------------------------------------------------------
// Patterns

class Pattern;
using PatPtr = std::shared_ptr<const Pattern>;

/// Linear/non-linear first-order patterns over the term language.
class Pattern {
 public:
  enum class K { Var, C0, C1, CInf, Un, Bin, Med };

  static PatPtr var(std::string name) {
    auto p = std::make_shared<Pattern>();
    p->k = K::Var;
    p->name = std::move(name);
    return p;
  }
  static PatPtr c0() { return simple(K::C0); }
  static PatPtr c1() { return simple(K::C1); }
  static PatPtr cinf() { return simple(K::CInf); }
  static PatPtr un(UnOp op, PatPtr c) {
    auto p = std::make_shared<Pattern>();
    p->k = K::Un;
    p->uop = op;
    p->a = std::move(c);
    return p;
  }
  static PatPtr bin(BinOp op, PatPtr l, PatPtr r) {
    auto p = std::make_shared<Pattern>();
    p->k = K::Bin;
    p->bop = op;
    p->a = std::move(l);
    p->b = std::move(r);
    return p;
  }
  static PatPtr med(MedOp op, PatPtr l, PatPtr r) {
    auto p = std::make_shared<Pattern>();
    p->k = K::Med;
    p->mop = op;
    p->a = std::move(l);
    p->b = std::move(r);
    return p;
  }

  K k = K::Var;
  UnOp uop{};
  BinOp bop{};
  MedOp mop{};
  std::string name;
  PatPtr a, b;

  void collectVars(std::vector<std::string>& out) const {
    if (k == K::Var) {
      if (std::find(out.begin(), out.end(), name) == out.end())
        out.push_back(name);
      return;
    }
    if (a) a->collectVars(out);
    if (b) b->collectVars(out);
  }

  std::string render() const {
    switch (k) {
      case K::Var: return name;
      case K::C0: return "0";
      case K::C1: return "1";
      case K::CInf: return "INF";
      case K::Un: return std::string(opName(uop)) + "(" + a->render() + ")";
      case K::Bin:
        return std::string(opName(bop)) + "(" + a->render() + "," +
               b->render() + ")";
      case K::Med:
        return std::string(opName(mop)) + "(" + a->render() + "," +
               b->render() + ")";
    }
    return "?";
  }

 private:
  static PatPtr simple(K kk) {
    auto p = std::make_shared<Pattern>();
    p->k = kk;
    return p;
  }
};

/// Small flat map from pattern-variable names to terms.
class Binding {
 public:
  bool count(const std::string& name) const { return find(name) != nullptr; }
  const TermPtr& at(const std::string& name) const {
    const TermPtr* p = find(name);
    if (!p) throw std::out_of_range("unbound pattern variable: " + name);
    return *p;
  }
  const TermPtr* find(const std::string& name) const {
    for (const auto& [k, v] : entries_)
      if (k == name) return &v;
    return nullptr;
  }
  void set(const std::string& name, TermPtr t) {
    for (auto& [k, v] : entries_)
      if (k == name) {
        v = std::move(t);
        return;
      }
    entries_.emplace_back(name, std::move(t));
  }
  void erase(const std::string& name) {
    for (auto it = entries_.begin(); it != entries_.end(); ++it)
      if (it->first == name) {
        entries_.erase(it);
        return;
      }
  }

 private:
  std::vector<std::pair<std::string, TermPtr>> entries_;
};

inline bool matchPattern(const PatPtr& p, const TermPtr& t, Binding& b) {
  switch (p->k) {
    case Pattern::K::Var: {
      if (const TermPtr* bound = b.find(p->name)) return equal(*bound, t);
      b.set(p->name, t);
      return true;
    }
    case Pattern::K::C0: return t->isConst0();
    case Pattern::K::C1: return t->isConst1();
    case Pattern::K::CInf: return t->isConstInf();
    case Pattern::K::Un: {
      auto* u = t->asUnary();
      return u && u->op == p->uop && matchPattern(p->a, u->child, b);
    }
    case Pattern::K::Bin: {
      auto* bb = t->asBinary();
      return bb && bb->op == p->bop && matchPattern(p->a, bb->left, b) &&
             matchPattern(p->b, bb->right, b);
    }
    case Pattern::K::Med: {
      auto* m = t->asMedApp();
      return m && m->op == p->mop && matchPattern(p->a, m->left, b) &&
             matchPattern(p->b, m->right, b);
    }
  }
  return false;
}

inline TermPtr substPattern(const PatPtr& p, const Binding& b) {
  switch (p->k) {
    case Pattern::K::Var: return b.at(p->name);
    case Pattern::K::C0: return Term::zero();
    case Pattern::K::C1: return Term::one();
    case Pattern::K::CInf: return Term::inf();
    case Pattern::K::Un: return Term::unary(p->uop, substPattern(p->a, b));
    case Pattern::K::Bin:
      return Term::binary(p->bop, substPattern(p->a, b), substPattern(p->b, b));
    case Pattern::K::Med:
      return Term::medApp(p->mop, substPattern(p->a, b), substPattern(p->b, b));
  }
  return Term::zero();
}

// ---------------------------------------------------------------------------
// Rules

/// Attribute / constant guards on rewrite rules. A guard that cannot be
/// positively discharged against the knowledge base blocks the rule.
struct SideCond {
  enum class K {
    NotConstInf,     // variable is syntactically not the constant INF
    NotZeroEquiv,    // fact "var !=W 0" established
    NotInfEquiv,     // fact "var !=W INF" established
    HasFlag,         // prop(flag, var) established
    MedvedevTyped,   // var is a c_A-image term
    NotMeetRooted,   // variable's head is not meet (factoring guard)
  };
  K k;
  std::string var;
  Flag flag = Flag::pointed;

  bool holds(const Binding& b, const KnowledgeBase& kb) const {
    const TermPtr& t = b.at(var);
    switch (k) {
      case K::NotConstInf: return !t->isConstInf();
      case K::NotZeroEquiv: return kb.guardNotZero(t);
      case K::NotInfEquiv: return kb.guardNotInf(t);
      case K::HasFlag: return kb.guardProp(flag, t);
      case K::MedvedevTyped: return t->medvedevTyped();
      case K::NotMeetRooted: return !t->is(BinOp::meet);
    }
    return false;
  }

  std::string render() const {
    switch (k) {
      case K::NotConstInf: return var + " is not INF";
      case K::NotZeroEquiv: return var + " !=W 0";
      case K::NotInfEquiv: return var + " !=W INF";
      case K::HasFlag:
        return std::string(flagName(flag)) + "(" + var + ")";
      case K::MedvedevTyped: return var + " is a Medvedev image";
      case K::NotMeetRooted: return var + " is not meet-rooted";
    }
    return "?";
  }
};

/// Oriented equation lhs => rhs together with the strongest kind at which the
/// underlying equivalence holds.
struct RewriteRule {
  std::string name;      // e.g. "R5"
  std::string family;    // e.g. "R5" (several entries may share a family)
  Kind kindTag;
  PatPtr lhs, rhs;
  std::vector<SideCond> conds;
  std::string citation;

  /// Rules tagged STW/TW state equivalences of the total degree structure
  /// only; they may fire only in contexts monotone for that structure.
  bool totalOnly() const {
    return kindTag == Kind::STW || kindTag == Kind::TW || kindTag == Kind::PTW;
  }
};

namespace detail {

inline PatPtr pv(const char* n) { return Pattern::var(n); }
inline PatPtr pcomp(PatPtr p) { return Pattern::un(UnOp::comp, std::move(p)); }
inline PatPtr ppar(PatPtr p) { return Pattern::un(UnOp::par, std::move(p)); }
inline PatPtr pfpar(PatPtr p) { return Pattern::un(UnOp::fpar, std::move(p)); }
inline PatPtr pneg(PatPtr p) { return Pattern::un(UnOp::neg, std::move(p)); }

inline SideCond hasFlag(const char* v, Flag f) {
  return SideCond{SideCond::K::HasFlag, v, f};
}
inline SideCond medTyped(const char* v) {
  return SideCond{SideCond::K::MedvedevTyped, v};
}

}  // namespace detail

/// The full rewrite catalog with citations. Validated on first use: every
/// right-hand variable occurs on the left.
inline const std::vector<RewriteRule>& ruleSet() {
  using namespace detail;
  using P = Pattern;
  static const std::vector<RewriteRule> rules = [] {
    std::vector<RewriteRule> rs;
    auto add = [&](std::string name, std::string family, Kind tag, PatPtr l,
                   PatPtr r, std::vector<SideCond> conds, std::string cite) {
      rs.push_back(RewriteRule{std::move(name), std::move(family), tag,
                               std::move(l), std::move(r), std::move(conds),
                               std::move(cite)});
    };

    add("R1", "R1", Kind::SW, pcomp(pcomp(pv("F"))), pcomp(pv("F")), {},
        "Prop. \"Completion as closure operator\"");
    add("R2", "R2", Kind::SW, ppar(ppar(pv("F"))), ppar(pv("F")), {},
        "Prop. \"Parallelization\"");
    add("R3", "R3", Kind::W, ppar(pcomp(ppar(pcomp(pv("F"))))),
        ppar(pcomp(pv("F"))), {}, "Prop. \"Parallelization\"");
    add("R4", "R4", Kind::SW, pfpar(pfpar(pv("F"))), pfpar(pv("F")),
        {hasFlag("F", Flag::pointed)},
        "Lemma (A. Pauly): f** ==SW f* for pointed f");
    add("R5", "R5", Kind::W, pcomp(P::bin(BinOp::coprod, pv("F"), pv("G"))),
        P::bin(BinOp::coprod, pcomp(pv("F")), pcomp(pv("G"))), {},
        "Prop. \"Infima and suprema\" (4)");
    add("R6", "R6", Kind::SW, pcomp(P::bin(BinOp::boxsum, pv("F"), pv("G"))),
        P::bin(BinOp::boxsum, pcomp(pv("F")), pcomp(pv("G"))), {},
        "Prop. \"Infima and suprema\" (5)");
    add("R7", "R7", Kind::SW, pcomp(P::bin(BinOp::sum, pv("F"), pv("G"))),
        P::bin(BinOp::sum, pcomp(pv("F")), pcomp(pv("G"))), {},
        "Prop. \"Sums\"");
    add("R8", "R8", Kind::SW, ppar(P::bin(BinOp::prod, pv("F"), pv("G"))),
        P::bin(BinOp::prod, ppar(pv("F")), ppar(pv("G"))), {},
        "Fact \"Parallelization and algebraic operations\" (1)");
    add("R9", "R9", Kind::W,
        P::bin(BinOp::prod, ppar(pcomp(pv("F"))), ppar(pcomp(pv("G")))),
        ppar(pcomp(P::bin(BinOp::coprod, pv("F"), pv("G")))), {},
        "Fact \"Parallelization and algebraic operations\" (5)");

    // Top-element laws (section 7, list (1)-(4)).
    const char* tops = "Top element laws, section 7";
    add("R10a", "R10", Kind::SW, P::bin(BinOp::meet, pv("F"), P::cinf()),
        pv("F"), {}, tops);
    add("R10b", "R10", Kind::SW, P::bin(BinOp::meet, P::cinf(), pv("F")),
        pv("F"), {}, tops);
    add("R10c", "R10", Kind::SW, P::bin(BinOp::coprod, pv("F"), P::cinf()),
        P::cinf(), {}, tops);
    add("R10d", "R10", Kind::SW, P::bin(BinOp::coprod, P::cinf(), pv("F")),
        P::cinf(), {}, tops);
    add("R10e", "R10", Kind::SW, P::bin(BinOp::prod, pv("F"), P::cinf()),
        P::cinf(), {}, tops);
    add("R10f", "R10", Kind::SW, P::bin(BinOp::prod, P::cinf(), pv("F")),
        P::cinf(), {}, tops);
    add("R10g", "R10", Kind::SW, P::bin(BinOp::sum, pv("F"), P::cinf()),
        pv("F"), {}, tops);
    add("R10h", "R10", Kind::SW, P::bin(BinOp::sum, P::cinf(), pv("F")),
        pv("F"), {}, tops);

    const char* topu = "Top element laws, section 7: comp/par/fpar of INF";
    add("R11a", "R11", Kind::SW, pcomp(P::cinf()), P::cinf(), {}, topu);
    add("R11b", "R11", Kind::SW, ppar(P::cinf()), P::cinf(), {}, topu);
    add("R11c", "R11", Kind::SW, pfpar(P::cinf()), P::cinf(), {}, topu);

    const char* stars = "Def. \"Compositional product and implications\" (1)";
    add("R12a", "R12", Kind::SW, P::bin(BinOp::star, pv("F"), P::cinf()),
        P::cinf(), {}, stars);
    add("R12b", "R12", Kind::SW, P::bin(BinOp::star, P::cinf(), pv("F")),
        P::cinf(), {}, stars);

    // Implication constant laws (Def. "Compositional product and
    // implications" (2),(3)). Hypothesis-first orientation: cimp(g,f) = g->f.
    const char* imps = "Def. \"Compositional product and implications\" (2),(3)";
    for (BinOp impOp : {BinOp::cimp, BinOp::mimp}) {
      std::string s = impOp == BinOp::cimp ? "c" : "m";
      add("R13" + s + "1", "R13", Kind::W, P::bin(impOp, pv("G"), P::c0()),
          P::c0(), {}, imps);
      add("R13" + s + "2", "R13", Kind::W, P::bin(impOp, P::cinf(), pv("F")),
          P::c0(), {}, imps);
      add("R13" + s + "3", "R13", Kind::W, P::bin(impOp, P::c0(), pv("F")),
          P::cinf(), {SideCond{SideCond::K::NotZeroEquiv, "F"}}, imps);
      add("R13" + s + "4", "R13", Kind::W, P::bin(impOp, pv("G"), P::cinf()),
          P::cinf(), {SideCond{SideCond::K::NotConstInf, "G"}}, imps);
    }

    add("R14a", "R14", Kind::W, pneg(P::cinf()), P::c0(), {},
        "Def. \"Negation\"");
    add("R14b", "R14", Kind::W, pneg(pv("F")), P::cinf(),
        {SideCond{SideCond::K::NotInfEquiv, "F"}}, "Def. \"Negation\"");

    add("R15a", "R15", Kind::W, pcomp(pv("F")), pv("F"),
        {hasFlag("F", Flag::complete)},
        "Def. completeness (section 5): f ==W comp(f)");
    add("R15b", "R15", Kind::SW, pcomp(pv("F")), pv("F"),
        {hasFlag("F", Flag::stronglyComplete)},
        "Def. completeness (section 5): f ==SW comp(f)");

    // Medvedev images: collapse the Medvedev operations to the degree
    // operations (Fact "Medvedev embedding", Lemma "Medvedev implication").
    add("R16a", "R16", Kind::SW, P::med(MedOp::otimes, pv("X"), pv("Y")),
        P::bin(BinOp::meet, pv("X"), pv("Y")),
        {medTyped("X"), medTyped("Y")}, "Fact \"Medvedev embedding\" (2)");
    add("R16b", "R16", Kind::SW, P::med(MedOp::oplus, pv("X"), pv("Y")),
        P::bin(BinOp::prod, pv("X"), pv("Y")),
        {medTyped("X"), medTyped("Y")}, "Fact \"Medvedev embedding\" (3)");
    add("R16c", "R16", Kind::W, P::med(MedOp::mimpM, pv("X"), pv("Y")),
        P::bin(BinOp::mimp, pv("X"), pv("Y")),
        {medTyped("X"), medTyped("Y")}, "Lemma \"Medvedev implication\"");
    add("R16d", "R16", Kind::W, P::bin(BinOp::prod, pv("X"), pv("Y")),
        P::bin(BinOp::star, pv("X"), pv("Y")),
        {medTyped("X"), medTyped("Y")}, "Fact \"Medvedev embedding\" (3)");
    add("R16e", "R16", Kind::W, P::bin(BinOp::mimp, pv("X"), pv("Y")),
        P::bin(BinOp::cimp, pv("X"), pv("Y")),
        {medTyped("X"), medTyped("Y")}, "Lemma \"Medvedev implication\"");

    // Distributivity of the total lattice (Thm. "Total Weihrauch lattice").
    // Law 1 is oriented toward the coproduct of completed meets, law 2 toward
    // the completed meet of coproducts; the NotMeetRooted guard keeps the two
    // orientations from feeding each other.
    const char* dist = "Thm. \"Total Weihrauch lattice\"";
    add("R17a", "R17", Kind::TW,
        P::bin(BinOp::meet, pcomp(pv("F")),
               P::bin(BinOp::coprod, pv("G"), pv("H"))),
        P::bin(BinOp::coprod,
               P::bin(BinOp::meet, pcomp(pv("F")), pcomp(pv("G"))),
               P::bin(BinOp::meet, pcomp(pv("F")), pcomp(pv("H")))),
        {}, dist);
    add("R17b", "R17", Kind::TW,
        P::bin(BinOp::meet, P::bin(BinOp::coprod, pv("G"), pv("H")),
               pcomp(pv("F"))),
        P::bin(BinOp::coprod,
               P::bin(BinOp::meet, pcomp(pv("G")), pcomp(pv("F"))),
               P::bin(BinOp::meet, pcomp(pv("H")), pcomp(pv("F")))),
        {}, dist);
    add("R17c", "R17", Kind::TW,
        P::bin(BinOp::coprod, pv("F"),
               P::bin(BinOp::meet, pcomp(pv("G")), pcomp(pv("H")))),
        P::bin(BinOp::meet, pcomp(P::bin(BinOp::coprod, pv("F"), pv("G"))),
               pcomp(P::bin(BinOp::coprod, pv("F"), pv("H")))),
        {SideCond{SideCond::K::NotMeetRooted, "F"}}, dist);
    add("R17d", "R17", Kind::TW,
        P::bin(BinOp::coprod,
               P::bin(BinOp::meet, pcomp(pv("G")), pcomp(pv("H"))), pv("F")),
        P::bin(BinOp::meet, pcomp(P::bin(BinOp::coprod, pv("G"), pv("F"))),
               pcomp(P::bin(BinOp::coprod, pv("H"), pv("F")))),
        {SideCond{SideCond::K::NotMeetRooted, "F"}}, dist);

    // Every problem is strongly totally equivalent to its completion, so at
    // the total kinds the completion operator can be dropped outright.
    add("R18", "R18", Kind::STW, pcomp(pv("F")), pv("F"), {},
        "Cor. after Prop. \"Completion as closure operator\": f ==STW comp(f)");

    // Validate: rhs variables (and condition variables) occur in the lhs.
    for (const auto& r : rs) {
      std::vector<std::string> lv, rv;
      r.lhs->collectVars(lv);
      r.rhs->collectVars(rv);
      for (const auto& v : rv)
        if (std::find(lv.begin(), lv.end(), v) == lv.end())
          throw std::logic_error("rule " + r.name + ": rhs var " + v +
                                 " not bound by lhs");
      for (const auto& c : r.conds)
        if (std::find(lv.begin(), lv.end(), c.var) == lv.end())
          throw std::logic_error("rule " + r.name + ": cond var " + c.var +
                                 " not bound by lhs");
    }
    return rs;
  }();
  return rules;
}

inline const RewriteRule* findRule(std::string_view name) {
  for (const auto& r : ruleSet())
    if (r.name == name) return &r;
  return nullptr;
}

inline std::size_t ruleFamilyCount() {
  std::set<std::string> fams;
  for (const auto& r : ruleSet()) fams.insert(r.family);
  return fams.size();
}

// ---------------------------------------------------------------------------
// Normalization

struct RewriteOptions {
  std::size_t stepBound = 10000;
};

namespace detail {

// Context states for rules that are sound only for the total degree
// structure. Safe positions are reachable from the root through coprod,
// comp, and the completed-meet shape meet(comp ., comp .); underneath any
// other operation the total equivalences are not congruences.
enum class Ctx { Safe, MeetPending, Unsafe };

/// Rules bucketed by the head shape of their left-hand side (all rule
/// patterns have a non-variable head), per requested kind.
class RuleIndex {
 public:
  static const RuleIndex& forKind(Kind k) {
    static const std::array<RuleIndex, 6> idx = [] {
      std::array<RuleIndex, 6> a;
      for (Kind kk : allKinds) a[static_cast<std::size_t>(kk)].build(kk);
      return a;
    }();
    return idx[static_cast<std::size_t>(k)];
  }

  const std::vector<const RewriteRule*>& candidates(const Term& t) const {
    static const std::vector<const RewriteRule*> empty;
    if (auto* u = t.asUnary()) return un_[static_cast<std::size_t>(u->op)];
    if (auto* b = t.asBinary()) return bin_[static_cast<std::size_t>(b->op)];
    if (auto* m = t.asMedApp()) return med_[static_cast<std::size_t>(m->op)];
    return empty;
  }

 private:
  void build(Kind k) {
    for (const auto& r : ruleSet()) {
      if (!kindImplies(r.kindTag, k)) continue;
      switch (r.lhs->k) {
        case Pattern::K::Un:
          un_[static_cast<std::size_t>(r.lhs->uop)].push_back(&r);
          break;
        case Pattern::K::Bin:
          bin_[static_cast<std::size_t>(r.lhs->bop)].push_back(&r);
          break;
        case Pattern::K::Med:
          med_[static_cast<std::size_t>(r.lhs->mop)].push_back(&r);
          break;
        default:
          throw std::logic_error("rewrite rule with non-operation head");
      }
    }
  }

  std::array<std::vector<const RewriteRule*>, 4> un_;
  std::array<std::vector<const RewriteRule*>, 8> bin_;
  std::array<std::vector<const RewriteRule*>, 3> med_;
};

class Normalizer {
 public:
  Normalizer(Kind kind, const KnowledgeBase& kb, RewriteOptions opt)
      : kind_(kind),
        kb_(kb),
        opt_(opt),
        rules_(RuleIndex::forKind(kind)),
        shared_(kb.normCache()) {}

  TermPtr run(const TermPtr& t) { return normalize(t, Ctx::Safe); }

  // Randomized variant used by the confluence tests: innermost redexes are
  // still contracted first, but the choice among parallel innermost redexes
  // is random instead of leftmost.
  template <typename Rng>
  TermPtr runRandomized(const TermPtr& t, Rng& rng) {
    TermPtr cur = t;
    for (;;) {
      std::vector<std::vector<int>> redexes;
      collectInnermostRedexes(cur, Ctx::Safe, {}, redexes);
      if (redexes.empty()) return cur;
      const auto& path = redexes[std::uniform_int_distribution<std::size_t>(
          0, redexes.size() - 1)(rng)];
      cur = rewriteAt(cur, Ctx::Safe, path, 0);
      step();
    }
  }

  std::size_t steps() const { return steps_; }

 private:
  void step() {
    if (++steps_ > opt_.stepBound)
      throw RewriteLimitError(
          "normalize: step bound exceeded (" + std::to_string(opt_.stepBound) +
          " steps) at kind " + std::string(kindName(kind_)));
  }

  Ctx childCtx(const TermPtr& t, std::size_t childIdx, Ctx ctx) const {
    if (ctx == Ctx::Unsafe) return Ctx::Unsafe;
    if (ctx == Ctx::MeetPending)
      return t->is(UnOp::comp) ? Ctx::Safe : Ctx::Unsafe;
    // ctx == Safe
    if (t->is(BinOp::coprod) || t->is(UnOp::comp)) return Ctx::Safe;
    if (auto* b = t->asBinary(); b && b->op == BinOp::meet &&
                                 b->left->is(UnOp::comp) &&
                                 b->right->is(UnOp::comp))
      return Ctx::MeetPending;
    (void)childIdx;
    return Ctx::Unsafe;
  }

  /// Best applicable (rule, rhs-instance) at the root of t, or nullptr.
  const RewriteRule* bestRuleAt(const TermPtr& t, Ctx ctx, TermPtr& out) const {
    const RewriteRule* best = nullptr;
    TermPtr bestResult;
    for (const RewriteRule* r : rules_.candidates(*t)) {
      if (r->totalOnly() && ctx != Ctx::Safe) continue;
      Binding b;
      if (!matchPattern(r->lhs, t, b)) continue;
      bool ok = true;
      for (const auto& c : r->conds)
        if (!c.holds(b, kb_)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      TermPtr result = substPattern(r->rhs, b);
      if (!best || compare(result, bestResult) < 0) {
        best = r;
        bestResult = result;
      }
    }
    if (best) out = bestResult;
    return best;
  }

  TermPtr rebuild(const TermPtr& t, const std::vector<TermPtr>& kids) const {
    if (auto* u = t->asUnary()) return Term::unary(u->op, kids[0]);
    if (auto* b = t->asBinary()) return Term::binary(b->op, kids[0], kids[1]);
    if (auto* m = t->asMedApp()) return Term::medApp(m->op, kids[0], kids[1]);
    return t;
  }

  TermPtr lookupMemo(const TermPtr& t, Ctx ctx) const {
    if (shared_) {
      auto it = shared_->find(
          KnowledgeBase::NormKey{t, kind_, static_cast<int>(ctx)});
      if (it != shared_->end()) return it->second;
      return nullptr;
    }
    auto it = memo_.find(std::make_pair(t, ctx));
    return it != memo_.end() ? it->second : nullptr;
  }

  void storeMemo(const TermPtr& t, Ctx ctx, const TermPtr& nf) {
    if (shared_)
      shared_->emplace(KnowledgeBase::NormKey{t, kind_, static_cast<int>(ctx)},
                       nf);
    else
      memo_.emplace(std::make_pair(t, ctx), nf);
  }

  TermPtr normalize(const TermPtr& t, Ctx ctx) {
    if (TermPtr hit = lookupMemo(t, ctx)) return hit;

    // Innermost: children first, then the root until no rule applies.
    std::vector<TermPtr> kids;
    std::size_t idx = 0;
    bool changed = false;
    t->forEachChild([&](const TermPtr& c) {
      TermPtr nc = normalize(c, childCtx(t, idx, ctx));
      changed = changed || nc != c;
      kids.push_back(std::move(nc));
      ++idx;
    });
    TermPtr cur = kids.empty() ? t : rebuild(t, kids);
    if (changed) {
      // The context classification of the children may have shifted after
      // rebuilding (e.g. a meet becoming completed); renormalize cautiously.
      cur = normalize(cur, ctx);
      storeMemo(t, ctx, cur);
      return cur;
    }
    TermPtr result;
    if (bestRuleAt(cur, ctx, result)) {
      step();
      result = normalize(result, ctx);
      storeMemo(t, ctx, result);
      return result;
    }
    storeMemo(t, ctx, cur);
    return cur;
  }

  // --- randomized-strategy helpers ---

  bool hasRedex(const TermPtr& t, Ctx ctx) const {
    TermPtr out;
    return bestRuleAt(t, ctx, out) != nullptr;
  }

  void collectInnermostRedexes(const TermPtr& t, Ctx ctx,
                               std::vector<int> path,
                               std::vector<std::vector<int>>& out) const {
    bool childHas = false;
    int idx = 0;
    t->forEachChild([&](const TermPtr& c) {
      std::size_t before = out.size();
      auto p = path;
      p.push_back(idx);
      collectInnermostRedexes(c, childCtx(t, idx, ctx), std::move(p), out);
      if (out.size() != before) childHas = true;
      ++idx;
    });
    if (!childHas && hasRedex(t, ctx)) out.push_back(std::move(path));
  }

  TermPtr rewriteAt(const TermPtr& t, Ctx ctx, const std::vector<int>& path,
                    std::size_t depth) {
    if (depth == path.size()) {
      TermPtr out;
      bestRuleAt(t, ctx, out);
      return out;
    }
    std::vector<TermPtr> kids;
    int idx = 0;
    t->forEachChild([&](const TermPtr& c) {
      if (idx == path[depth])
        kids.push_back(rewriteAt(c, childCtx(t, idx, ctx), path, depth + 1));
      else
        kids.push_back(c);
      ++idx;
    });
    return rebuild(t, kids);
  }

  struct KeyHash {
    std::size_t operator()(const std::pair<TermPtr, Ctx>& k) const {
      return k.first->hash() * 3u + static_cast<std::size_t>(k.second);
    }
  };
  struct KeyEq {
    bool operator()(const std::pair<TermPtr, Ctx>& a,
                    const std::pair<TermPtr, Ctx>& b) const {
      return a.second == b.second && equal(a.first, b.first);
    }
  };

  Kind kind_;
  const KnowledgeBase& kb_;
  RewriteOptions opt_;
  const RuleIndex& rules_;
  KnowledgeBase::NormCache* shared_;
  std::size_t steps_ = 0;
  std::unordered_map<std::pair<TermPtr, Ctx>, TermPtr, KeyHash, KeyEq> memo_;
};

}  // namespace detail

/// Kind-indexed normalization: applies every rule whose tag implies k,
/// innermost-first, ties broken by the total term order, to fixpoint.
inline TermPtr normalize(const TermPtr& t, Kind k, const KnowledgeBase& kb,
                         RewriteOptions opt = {}) {
  detail::Normalizer n(k, kb, opt);
  return n.run(t);
}

/// True iff both terms have the same k-normal form. A false answer means
/// "not proved equal by the rule system", never a semantic disequality.
inline bool equivalent(const TermPtr& t1, const TermPtr& t2, Kind k,
                       const KnowledgeBase& kb, RewriteOptions opt = {}) {
  return equal(normalize(t1, k, kb, opt), normalize(t2, k, kb, opt));
}

/// Normalization with a randomized innermost strategy: of the parallel
/// innermost redexes, a random one is contracted first (rule choice at a
/// position keeps the documented term-order tie-break). Used to check that
/// the rule-application order the strategy leaves open cannot change normal
/// forms.
inline TermPtr normalizeRandomized(const TermPtr& t, Kind k,
                                   const KnowledgeBase& kb,
                                   std::mt19937_64& rng,
                                   RewriteOptions opt = {}) {
  detail::Normalizer n(k, kb, opt);
  return n.runRandomized(t, rng);
}

}  // namespace wb
