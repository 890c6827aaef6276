#pragma once

#include <deque>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wb/kb.hpp"
#include "wb/parse.hpp"
#include "wb/rewrite.hpp"

namespace wb {

// ---------------------------------------------------------------------------
// Horn rules over signed relational atoms

/// Relation pattern: a le/prop atom with term patterns in place of terms.
struct RelPat {
  bool positive = true;
  bool isProp = false;
  Kind kind = Kind::W;
  Flag flag = Flag::pointed;
  PatPtr lhs, rhs;  // rhs null for prop

  static RelPat le(Kind k, PatPtr l, PatPtr r, bool pos = true) {
    RelPat p;
    p.positive = pos;
    p.kind = k;
    p.lhs = std::move(l);
    p.rhs = std::move(r);
    return p;
  }
  static RelPat prop(Flag f, PatPtr t, bool pos = true) {
    RelPat p;
    p.positive = pos;
    p.isProp = true;
    p.flag = f;
    p.lhs = std::move(t);
    return p;
  }

  RelPat negated() const {
    RelPat p = *this;
    p.positive = !p.positive;
    return p;
  }

  bool matches(const Fact& f, Binding& b) const {
    if (f.positive != positive || f.isProp != isProp) return false;
    if (isProp) {
      if (f.flag != flag) return false;
      return matchPattern(lhs, f.lhs, b);
    }
    if (f.kind != kind) return false;
    return matchPattern(lhs, f.lhs, b) && matchPattern(rhs, f.rhs, b);
  }

  void collectVars(std::vector<std::string>& out) const {
    lhs->collectVars(out);
    if (rhs) rhs->collectVars(out);
  }

  std::string render() const {
    std::string s;
    if (isProp)
      s = std::string(positive ? "prop " : "notprop ") +
          std::string(flagName(flag)) + " " + lhs->render();
    else
      s = std::string(positive ? "le " : "nle ") + std::string(kindName(kind)) +
          " " + lhs->render() + " " + rhs->render();
    return s;
  }
};

/// Horn inference rule. Premises (possibly none) plus optional structural
/// guards; free conclusion variables range over the finite universe.
struct HornRule {
  std::string name;
  std::string family;
  std::string citation;
  std::vector<RelPat> premises;
  std::vector<SideCond> conds;  // kb-independent guards (Medvedev typing)
  RelPat conclusion;
  bool contraposable = true;

  std::string render() const {
    std::string s;
    for (std::size_t i = 0; i < premises.size(); ++i) {
      if (i) s += " & ";
      s += premises[i].render();
    }
    for (const auto& c : conds) {
      if (!s.empty()) s += " & ";
      s += c.render();
    }
    if (!s.empty()) s += "  ==>  ";
    s += conclusion.render();
    return s;
  }
};

namespace detail {

inline std::vector<HornRule> buildBaseRules() {
  using P = Pattern;
  std::vector<HornRule> rs;
  auto F = [] { return pv("F"); };
  auto G = [] { return pv("G"); };
  auto H = [] { return pv("H"); };

  auto add = [&](std::string name, std::string family, std::string cite,
                 std::vector<RelPat> prem, RelPat concl,
                 bool contra = true, std::vector<SideCond> conds = {}) {
    rs.push_back(HornRule{std::move(name), std::move(family), std::move(cite),
                          std::move(prem), std::move(conds), std::move(concl),
                          contra});
  };

  // D1: reflexivity and transitivity at every kind.
  for (Kind k : allKinds) {
    std::string kn(kindName(k));
    add("D1-refl-" + kn, "D1", "Prop. \"Preorders\"", {},
        RelPat::le(k, F(), F()), false);
    add("D1-trans-" + kn, "D1", "Prop. \"Preorders\"",
        {RelPat::le(k, F(), G()), RelPat::le(k, G(), H())},
        RelPat::le(k, F(), H()));
  }

  // D2: kind implications (Fig. 2 closure).
  for (Kind k1 : allKinds)
    for (Kind k2 : allKinds)
      if (k1 != k2 && kindImplies(k1, k2))
        add("D2-" + std::string(kindName(k1)) + "-" + std::string(kindName(k2)),
            "D2", "Cor. \"Partial and total Weihrauch reducibility\"; Fig. 2",
            {RelPat::le(k1, F(), G())}, RelPat::le(k2, F(), G()));

  // D3: completion generates the total reducibilities.
  const char* d3c = "Lemma \"Completion and total Weihrauch reducibility\"";
  add("D3a", "D3", d3c, {RelPat::le(Kind::TW, F(), G())},
      RelPat::le(Kind::W, F(), pcomp(G())));
  add("D3b", "D3", d3c, {RelPat::le(Kind::W, F(), pcomp(G()))},
      RelPat::le(Kind::TW, F(), G()));
  add("D3c", "D3", d3c, {RelPat::le(Kind::STW, F(), G())},
      RelPat::le(Kind::SW, F(), pcomp(G())));
  add("D3d", "D3", d3c, {RelPat::le(Kind::SW, F(), pcomp(G()))},
      RelPat::le(Kind::STW, F(), G()));

  // D4: parallelization generates the parallelized reducibilities.
  const char* d4c = "Def. \"Parallelized Weihrauch reducibility\" (section 8)";
  add("D4a", "D4", d4c, {RelPat::le(Kind::PW, F(), G())},
      RelPat::le(Kind::W, F(), ppar(G())));
  add("D4b", "D4", d4c, {RelPat::le(Kind::W, F(), ppar(G()))},
      RelPat::le(Kind::PW, F(), G()));
  add("D4c", "D4", d4c, {RelPat::le(Kind::PTW, F(), G())},
      RelPat::le(Kind::W, F(), ppar(pcomp(G()))));
  add("D4d", "D4", d4c, {RelPat::le(Kind::W, F(), ppar(pcomp(G())))},
      RelPat::le(Kind::PTW, F(), G()));

  // D5: monotonicity of completion.
  for (Kind k : {Kind::W, Kind::SW})
    add("D5-" + std::string(kindName(k)), "D5",
        "Cor. \"Monotonicity of completion\"", {RelPat::le(k, F(), G())},
        RelPat::le(k, pcomp(F()), pcomp(G())));

  // D6: monotonicity of the binary operations. The lattice operations are
  // monotone at SW and W; the compositional product and the compositional
  // implication only at W (Fact "Compositional product and implication"
  // (4),(5)); the multiplicative implication needs a pointed hypothesis
  // (Prop. "Monotonicity of multiplicative implication").
  const char* d6c = "Cor. \"Monotonicity\"; [BGP18, Prop. 3.6]";
  for (BinOp op : {BinOp::prod, BinOp::coprod, BinOp::meet, BinOp::boxsum,
                   BinOp::sum}) {
    for (Kind k : {Kind::W, Kind::SW}) {
      std::string base = "D6-" + std::string(opName(op)) + "-" +
                         std::string(kindName(k));
      add(base + "-l", "D6", d6c, {RelPat::le(k, F(), G())},
          RelPat::le(k, P::bin(op, F(), H()), P::bin(op, G(), H())));
      add(base + "-r", "D6", d6c, {RelPat::le(k, F(), G())},
          RelPat::le(k, P::bin(op, H(), F()), P::bin(op, H(), G())));
    }
  }
  const char* d6s = "Fact \"Compositional product and implication\" (4)";
  add("D6-star-W-l", "D6", d6s, {RelPat::le(Kind::W, F(), G())},
      RelPat::le(Kind::W, P::bin(BinOp::star, F(), H()),
                 P::bin(BinOp::star, G(), H())));
  add("D6-star-W-r", "D6", d6s, {RelPat::le(Kind::W, F(), G())},
      RelPat::le(Kind::W, P::bin(BinOp::star, H(), F()),
                 P::bin(BinOp::star, H(), G())));
  const char* d6i = "Fact \"Compositional product and implication\" (5)";
  add("D6-cimp-W-mono", "D6", d6i, {RelPat::le(Kind::W, F(), G())},
      RelPat::le(Kind::W, P::bin(BinOp::cimp, H(), F()),
                 P::bin(BinOp::cimp, H(), G())));
  add("D6-cimp-W-anti", "D6", d6i, {RelPat::le(Kind::W, F(), G())},
      RelPat::le(Kind::W, P::bin(BinOp::cimp, G(), H()),
                 P::bin(BinOp::cimp, F(), H())));
  const char* d6m = "Prop. \"Monotonicity of multiplicative implication\"";
  add("D6-mimp-W-mono", "D6", d6m,
      {RelPat::prop(Flag::pointed, G()), RelPat::le(Kind::W, F(), pv("F2"))},
      RelPat::le(Kind::W, P::bin(BinOp::mimp, G(), F()),
                 P::bin(BinOp::mimp, G(), pv("F2"))));
  add("D6-mimp-W-anti", "D6", d6m,
      {RelPat::prop(Flag::pointed, G()), RelPat::le(Kind::W, G(), pv("G2"))},
      RelPat::le(Kind::W, P::bin(BinOp::mimp, pv("G2"), F()),
                 P::bin(BinOp::mimp, G(), F())));

  // D7: suprema and infima.
  const char* d7c = "Prop. \"Infima and suprema\"";
  add("D7-coprod-ub-l", "D7", d7c, {},
      RelPat::le(Kind::W, F(), P::bin(BinOp::coprod, F(), G())), false);
  add("D7-coprod-ub-r", "D7", d7c, {},
      RelPat::le(Kind::W, G(), P::bin(BinOp::coprod, F(), G())), false);
  add("D7-coprod-lub", "D7", d7c,
      {RelPat::le(Kind::W, F(), H()), RelPat::le(Kind::W, G(), H())},
      RelPat::le(Kind::W, P::bin(BinOp::coprod, F(), G()), H()));
  for (Kind k : {Kind::SW, Kind::W}) {
    std::string kn(kindName(k));
    add("D7-meet-lb-l-" + kn, "D7", d7c, {},
        RelPat::le(k, P::bin(BinOp::meet, F(), G()), F()), false);
    add("D7-meet-lb-r-" + kn, "D7", d7c, {},
        RelPat::le(k, P::bin(BinOp::meet, F(), G()), G()), false);
    add("D7-meet-glb-" + kn, "D7", d7c,
        {RelPat::le(k, H(), F()), RelPat::le(k, H(), G())},
        RelPat::le(k, H(), P::bin(BinOp::meet, F(), G())));
  }
  for (Kind k : {Kind::SW, Kind::STW}) {
    std::string kn(kindName(k));
    add("D7-boxsum-ub-l-" + kn, "D7", d7c, {},
        RelPat::le(k, F(), P::bin(BinOp::boxsum, F(), G())), false);
    add("D7-boxsum-ub-r-" + kn, "D7", d7c, {},
        RelPat::le(k, G(), P::bin(BinOp::boxsum, F(), G())), false);
    add("D7-boxsum-lub-" + kn, "D7", d7c,
        {RelPat::le(k, F(), H()), RelPat::le(k, G(), H())},
        RelPat::le(k, P::bin(BinOp::boxsum, F(), G()), H()));
  }
  for (Kind k : {Kind::TW, Kind::STW}) {
    std::string kn(kindName(k));
    add("D7-cmeet-lb-l-" + kn, "D7", d7c, {},
        RelPat::le(k, P::bin(BinOp::meet, pcomp(F()), pcomp(G())), F()),
        false);
    add("D7-cmeet-lb-r-" + kn, "D7", d7c, {},
        RelPat::le(k, P::bin(BinOp::meet, pcomp(F()), pcomp(G())), G()),
        false);
    add("D7-cmeet-glb-" + kn, "D7", d7c,
        {RelPat::le(k, H(), F()), RelPat::le(k, H(), G())},
        RelPat::le(k, H(), P::bin(BinOp::meet, pcomp(F()), pcomp(G()))));
  }

  // D8: complete problems have coinciding partial and total cones.
  const char* d8c = "Thm. \"Completeness\"";
  add("D8a", "D8", d8c,
      {RelPat::prop(Flag::complete, G()), RelPat::le(Kind::TW, F(), G())},
      RelPat::le(Kind::W, F(), G()));
  add("D8b", "D8", d8c,
      {RelPat::prop(Flag::stronglyComplete, G()),
       RelPat::le(Kind::STW, F(), G())},
      RelPat::le(Kind::SW, F(), G()));

  // D9: cylinders make the strong reducibilities coincide with the weak ones.
  const char* d9c = "Prop. \"Cylinder\"; [BG11, Cor. 3.6]";
  add("D9a", "D9", d9c,
      {RelPat::prop(Flag::cylinder, G()), RelPat::le(Kind::W, F(), G())},
      RelPat::le(Kind::SW, F(), G()));
  add("D9b", "D9", d9c,
      {RelPat::prop(Flag::cylinder, G()), RelPat::le(Kind::TW, F(), G())},
      RelPat::le(Kind::STW, F(), G()));

  // D10: the algebraic operations preserve (strong) completeness.
  const char* d10c =
      "Prop. \"Completion and algebraic operations\"; Prop. \"Completion and "
      "compositional products and implication\"";
  for (Flag fl : {Flag::complete, Flag::stronglyComplete}) {
    std::string fn(flagName(fl));
    for (BinOp op : {BinOp::prod, BinOp::coprod, BinOp::boxsum, BinOp::meet,
                     BinOp::sum, BinOp::star})
      add("D10-" + std::string(opName(op)) + "-" + fn, "D10", d10c,
          {RelPat::prop(fl, F()), RelPat::prop(fl, G())},
          RelPat::prop(fl, P::bin(op, F(), G())));
    add("D10-par-" + fn, "D10", d10c, {RelPat::prop(fl, F())},
        RelPat::prop(fl, ppar(F())));
    add("D10-fpar-" + fn, "D10", d10c, {RelPat::prop(fl, F())},
        RelPat::prop(fl, pfpar(F())));
  }

  // D11: downwards preservation along total Weihrauch reducibility.
  const char* d11c = "Prop. \"Downwards preservation\"";
  for (Flag fl : {Flag::computable, Flag::continuous, Flag::limitComputable,
                  Flag::borel, Flag::nonUniformlyComputable})
    add("D11-" + std::string(flagName(fl)), "D11", d11c,
        {RelPat::le(Kind::TW, F(), G()), RelPat::prop(fl, G())},
        RelPat::prop(fl, F()));

  // D12: bottom and top. 0 is the global bottom, INF the adjoined top; the
  // class of computable problems is the minimal total degree, so 1 ==TW 0.
  add("D12-bottom", "D12", "[BG11, Lemma 2.7]: nowhere defined problems", {},
      RelPat::le(Kind::W, P::c0(), F()), false);
  add("D12-top", "D12", "section 7: attach a top element to the lattice", {},
      RelPat::le(Kind::SW, F(), P::cinf()), false);
  add("D12-one-zero", "D12", "Cor. \"Minimal total degree\"", {},
      RelPat::le(Kind::TW, P::c1(), P::c0()), false);
  const char* d12c = "Cor. \"Minimal total degree\"; section 4: f computable "
                     "iff f <=W id";
  add("D12-comp-a", "D12", d12c, {RelPat::le(Kind::W, F(), P::c1())},
      RelPat::prop(Flag::computable, F()));
  add("D12-comp-b", "D12", d12c, {RelPat::prop(Flag::computable, F())},
      RelPat::le(Kind::W, F(), P::c1()));
  add("D12-comp-c", "D12", d12c, {RelPat::le(Kind::TW, F(), P::c1())},
      RelPat::prop(Flag::computable, F()));

  // D13: order of the completed operations.
  const char* d13c = "Cor. \"Order of operations\"";
  auto cF = [&] { return pcomp(F()); };
  auto cG = [&] { return pcomp(G()); };
  add("D13-sum-meet", "D13", d13c, {},
      RelPat::le(Kind::SW, P::bin(BinOp::sum, cF(), cG()),
                 P::bin(BinOp::meet, cF(), cG())),
      false);
  add("D13-meet-boxsum", "D13", d13c, {},
      RelPat::le(Kind::SW, P::bin(BinOp::meet, cF(), cG()),
                 P::bin(BinOp::boxsum, cF(), cG())),
      false);
  add("D13-boxsum-coprod", "D13", d13c, {},
      RelPat::le(Kind::SW, P::bin(BinOp::boxsum, cF(), cG()),
                 P::bin(BinOp::coprod, cF(), cG())),
      false);
  add("D13-coprod-prod", "D13", d13c, {},
      RelPat::le(Kind::W, P::bin(BinOp::coprod, cF(), cG()),
                 P::bin(BinOp::prod, cF(), cG())),
      false);
  add("D13-boxsum-prod", "D13", d13c, {},
      RelPat::le(Kind::SW, P::bin(BinOp::boxsum, cF(), cG()),
                 P::bin(BinOp::prod, cF(), cG())),
      false);
  add("D13-fpar-par", "D13", d13c, {},
      RelPat::le(Kind::W, pfpar(cF()), ppar(cF())), false);

  // D14: (co-)residuation laws for the implications.
  const char* d14a = "Fact \"Compositional product and implication\" (3)";
  add("D14a1", "D14", d14a,
      {RelPat::le(Kind::W, P::bin(BinOp::cimp, G(), F()), H())},
      RelPat::le(Kind::W, F(), P::bin(BinOp::star, G(), H())));
  add("D14a2", "D14", d14a,
      {RelPat::le(Kind::W, F(), P::bin(BinOp::star, G(), H()))},
      RelPat::le(Kind::W, P::bin(BinOp::cimp, G(), F()), H()));
  const char* d14b = "Prop. \"Multiplicative implication\"";
  add("D14b", "D14", d14b,
      {RelPat::le(Kind::W, F(), P::bin(BinOp::prod, G(), H()))},
      RelPat::le(Kind::W, P::bin(BinOp::mimp, G(), F()), H()));
  add("D14c", "D14", d14b,
      {RelPat::prop(Flag::pointed, G()),
       RelPat::le(Kind::W, P::bin(BinOp::mimp, G(), F()), H())},
      RelPat::le(Kind::W, F(), P::bin(BinOp::star, G(), H())));
  add("D14d", "D14", d14b, {RelPat::prop(Flag::pointed, G())},
      RelPat::le(Kind::W, P::bin(BinOp::cimp, G(), F()),
                 P::bin(BinOp::mimp, G(), F())));
  add("D14e", "D14", "Prop. \"Multiplicative deduction\"",
      {RelPat::prop(Flag::pointed, G()),
       RelPat::le(Kind::W, P::bin(BinOp::mimp, G(), F()), H())},
      RelPat::le(Kind::W, F(), P::bin(BinOp::prod, ppar(pcomp(G())), H())));
  const char* d14f = "Cor. \"Multiplicative deduction\"";
  add("D14f1", "D14", d14f,
      {RelPat::prop(Flag::parallelizable, G()), RelPat::prop(Flag::complete, G()),
       RelPat::le(Kind::W, P::bin(BinOp::mimp, G(), F()), H())},
      RelPat::le(Kind::W, F(), P::bin(BinOp::prod, G(), H())));
  add("D14f2", "D14", d14f,
      {RelPat::prop(Flag::parallelizable, G()), RelPat::prop(Flag::complete, G()),
       RelPat::le(Kind::W, F(), P::bin(BinOp::prod, G(), H()))},
      RelPat::le(Kind::W, P::bin(BinOp::mimp, G(), F()), H()));

  // D15: completion against the compositional operations.
  const char* d15c =
      "Prop. \"Completion and compositional products and implication\"";
  add("D15a", "D15", d15c, {},
      RelPat::le(Kind::SW, pcomp(P::bin(BinOp::star, F(), G())),
                 P::bin(BinOp::star, pcomp(F()), pcomp(G()))),
      false);
  add("D15b", "D15", d15c, {},
      RelPat::le(Kind::W, P::bin(BinOp::cimp, pcomp(G()), pcomp(F())),
                 pcomp(P::bin(BinOp::cimp, G(), F()))),
      false);

  // D16: completion and cylindrification.
  const char* d16c = "Prop. \"Completion and cylindrification\"";
  add("D16a", "D16", d16c,
      {RelPat::prop(Flag::stronglyComplete, F()),
       RelPat::prop(Flag::cylinder, F())},
      RelPat::prop(Flag::cylinder, pcomp(F())));
  add("D16b", "D16", d16c, {RelPat::prop(Flag::cylinder, pcomp(F()))},
      RelPat::prop(Flag::stronglyComplete, F()));
  add("D16c", "D16", d16c, {RelPat::prop(Flag::cylinder, pcomp(F()))},
      RelPat::prop(Flag::cylinder, F()));
  add("D16d1", "D16", d16c, {RelPat::prop(Flag::complete, F())},
      RelPat::prop(Flag::complete, P::bin(BinOp::prod, P::c1(), F())));
  add("D16d2", "D16", d16c,
      {RelPat::prop(Flag::complete, P::bin(BinOp::prod, P::c1(), F()))},
      RelPat::prop(Flag::complete, F()));
  add("D16e", "D16", d16c, {RelPat::prop(Flag::stronglyComplete, F())},
      RelPat::prop(Flag::stronglyComplete, P::bin(BinOp::prod, P::c1(), F())));

  // D17: the Medvedev embedding is an order embedding into the parallelized
  // total degrees, so reductions between images reflect downwards.
  add("D17", "D17",
      "Fact \"Medvedev embedding\" (1); Thm. \"Embedding of the Medvedev "
      "lattice\"",
      {RelPat::le(Kind::PTW, F(), G())}, RelPat::le(Kind::W, F(), G()), true,
      {SideCond{SideCond::K::MedvedevTyped, "F"},
       SideCond{SideCond::K::MedvedevTyped, "G"}});

  // D18: the Brouwer adjunction of the parallelized total degrees.
  const char* d18c = "Thm. \"Brouwer algebra\"";
  add("D18a", "D18", d18c,
      {RelPat::le(Kind::PTW,
                  P::bin(BinOp::mimp, ppar(pcomp(G())), ppar(pcomp(F()))),
                  H())},
      RelPat::le(Kind::PTW, F(), P::bin(BinOp::coprod, G(), H())));
  add("D18b", "D18", d18c,
      {RelPat::le(Kind::PTW, F(), P::bin(BinOp::coprod, G(), H()))},
      RelPat::le(Kind::PTW,
                 P::bin(BinOp::mimp, ppar(pcomp(G())), ppar(pcomp(F()))),
                 H()));

  // D20: definition of completeness, and its weakening.
  const char* d20c = "Def. \"Complete problems\"";
  add("D20a", "D20", d20c, {RelPat::prop(Flag::complete, F())},
      RelPat::le(Kind::W, pcomp(F()), F()));
  add("D20b", "D20", d20c, {RelPat::le(Kind::W, pcomp(F()), F())},
      RelPat::prop(Flag::complete, F()));
  add("D20c", "D20", d20c, {RelPat::prop(Flag::stronglyComplete, F())},
      RelPat::le(Kind::SW, pcomp(F()), F()));
  add("D20d", "D20", d20c, {RelPat::le(Kind::SW, pcomp(F()), F())},
      RelPat::prop(Flag::stronglyComplete, F()));
  add("D20e", "D20", d20c, {RelPat::prop(Flag::stronglyComplete, F())},
      RelPat::prop(Flag::complete, F()));

  // D21: the Neumann-Pauly bound, only for explicitly flagged h.
  add("D21", "D21", "Prop. (Neumann and Pauly 2018)",
      {RelPat::prop(Flag::natOutput, H())},
      RelPat::le(Kind::W, P::bin(BinOp::star, G(), H()),
                 P::bin(BinOp::prod, ppar(pcomp(G())), H())));

  // D22: structural attribute axioms. Completions are strongly complete and
  // pointed; parallelizations are parallelizable; finite parallelizations
  // are pointed (the empty tuple is a computable domain point).
  const char* d22c = "Prop. \"Completion as closure operator\"; remark after "
                     "Def. \"Completion\"";
  add("D22-comp-sc", "D22", d22c, {},
      RelPat::prop(Flag::stronglyComplete, pcomp(F())), false);
  add("D22-comp-c", "D22", d22c, {}, RelPat::prop(Flag::complete, pcomp(F())),
      false);
  add("D22-comp-ptd", "D22", d22c, {}, RelPat::prop(Flag::pointed, pcomp(F())),
      false);
  add("D22-par-pz", "D22", "Prop. \"Parallelization\"", {},
      RelPat::prop(Flag::parallelizable, ppar(F())), false);
  add("D22-fpar-ptd", "D22", "section 7: pointedness", {},
      RelPat::prop(Flag::pointed, pfpar(F())), false);
  add("D22-one-ptd", "D22", "section 7: pointedness", {},
      RelPat::prop(Flag::pointed, P::c1()), false);
  add("D22-inf-ptd", "D22", "section 7: \"infinity is pointed too\"", {},
      RelPat::prop(Flag::pointed, P::cinf()), false);
  add("D22-par-ptd", "D22", "section 7: pointedness", {RelPat::prop(Flag::pointed, F())},
      RelPat::prop(Flag::pointed, ppar(F())));
  add("D22-prod-ptd", "D22", "section 7: pointedness",
      {RelPat::prop(Flag::pointed, F()), RelPat::prop(Flag::pointed, G())},
      RelPat::prop(Flag::pointed, P::bin(BinOp::prod, F(), G())));
  add("D22-coprod-ptd-l", "D22", "section 7: pointedness",
      {RelPat::prop(Flag::pointed, F())},
      RelPat::prop(Flag::pointed, P::bin(BinOp::coprod, F(), G())));
  add("D22-coprod-ptd-r", "D22", "section 7: pointedness",
      {RelPat::prop(Flag::pointed, G())},
      RelPat::prop(Flag::pointed, P::bin(BinOp::coprod, F(), G())));

  return rs;
}

/// D19: contrapositive closure. For every contraposable Horn rule, from the
/// negated conclusion and all but one premise derive the negated remaining
/// premise.
inline std::vector<HornRule> buildContrapositives(
    const std::vector<HornRule>& base) {
  std::vector<HornRule> out;
  for (const auto& r : base) {
    if (!r.contraposable || r.premises.empty()) continue;
    for (std::size_t i = 0; i < r.premises.size(); ++i) {
      HornRule c;
      c.name = "D19(" + r.name + "/" + std::to_string(i + 1) + ")";
      c.family = "D19";
      c.citation = "contrapositive of " + r.name + " [" + r.citation + "]";
      c.premises.push_back(r.conclusion.negated());
      for (std::size_t j = 0; j < r.premises.size(); ++j)
        if (j != i) c.premises.push_back(r.premises[j]);
      c.conds = r.conds;
      c.conclusion = r.premises[i].negated();
      c.contraposable = false;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace detail

/// The full inference catalog, contrapositives included.
inline const std::vector<HornRule>& inferenceRules() {
  static const std::vector<HornRule> rules = [] {
    auto rs = detail::buildBaseRules();
    auto contra = detail::buildContrapositives(rs);
    rs.insert(rs.end(), contra.begin(), contra.end());
    return rs;
  }();
  return rules;
}

inline std::vector<const HornRule*> rulesOfFamily(std::string_view family) {
  std::vector<const HornRule*> out;
  for (const auto& r : inferenceRules())
    if (r.family == family) out.push_back(&r);
  return out;
}

inline const HornRule* findInferenceRule(std::string_view name) {
  for (const auto& r : inferenceRules())
    if (r.name == name) return &r;
  return nullptr;
}

inline std::size_t inferenceFamilyCount() {
  std::set<std::string> fams;
  for (const auto& r : inferenceRules()) fams.insert(r.family);
  return fams.size();
}

}  // namespace wb
