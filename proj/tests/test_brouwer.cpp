#include <catch2/catch_amalgamated.hpp>

#include "wb/lab/formula.hpp"
#include "wb/lab/generate.hpp"

using namespace wb::lab;

namespace {

FiniteLattice chainLattice(int n) {
  return FiniteLattice::fromOrder(chainPoset(n));
}

ElementMap identityMap(int n) {
  ElementMap c(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

ElementMap constantMap(int n, int v) {
  return ElementMap(static_cast<std::size_t>(n), v);
}

}  // namespace

TEST_CASE("closure operator axioms", "[lab]") {
  FiniteLattice L = chainLattice(4);
  CHECK(checkClosureOperator(L.order, identityMap(4)).ok);
  CHECK(checkClosureOperator(L.order, constantMap(4, L.top)).ok);

  // on the 2-chain {a<b}: c(b)=a violates axiom (1) at b
  FinitePreorder two = chainPoset(2);
  ElementMap bad{0, 0};
  auto rep = checkClosureOperator(two, bad);
  CHECK_FALSE(rep.ok);
  CHECK(rep.axiom == 1);
  CHECK(rep.x == 1);

  // monotonicity violation
  FinitePreorder three = chainPoset(3);
  ElementMap nonMono{2, 1, 2};
  auto rep2 = checkClosureOperator(three, nonMono);
  CHECK_FALSE(rep2.ok);
  CHECK(rep2.axiom == 3);
}

TEST_CASE("induced preorder", "[lab]") {
  FinitePreorder P = chainPoset(3);
  FinitePreorder same = inducedPreorder(P, identityMap(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(same.le(i, j) == P.le(i, j));

  FinitePreorder total = inducedPreorder(P, constantMap(3, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(total.le(i, j));

  // c(0)=1, c(1)=1, c(2)=2 merges 0 and 1
  ElementMap c{1, 1, 2};
  FinitePreorder Q = inducedPreorder(P, c);
  CHECK(Q.le(0, 1));
  CHECK(Q.le(1, 0));
  CHECK_FALSE(Q.le(2, 0));

  ElementMap notClosure{0, 0, 2};
  CHECK_THROWS_AS(inducedPreorder(P, notClosure), std::invalid_argument);
}

TEST_CASE("quotient lattice", "[lab]") {
  FiniteLattice L4 = chainLattice(4);
  FiniteLattice same = quotientLattice(L4, identityMap(4));
  CHECK(same.n() == 4);

  // collapse the top two elements of a 4-chain
  ElementMap c{0, 1, 3, 3};
  REQUIRE(checkClosureOperator(L4.order, c).ok);
  FiniteLattice q = quotientLattice(L4, c);
  CHECK(q.n() == 3);
  CHECK(q.validate());

  // Boolean 4-lattice (upsets of a 2-antichain), constant-top closure
  FinitePreorder anti2(std::vector<std::vector<bool>>{{true, false},
                                                      {false, true}});
  FiniteLattice b4 = upsetAlgebra(anti2).lat;
  REQUIRE(b4.n() == 4);
  FiniteLattice one = quotientLattice(b4, constantMap(4, b4.top));
  CHECK(one.n() == 1);
}

TEST_CASE("preservation of suprema and infima", "[lab]") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 40; ++i) {
    FiniteLattice L = randomDistributiveLattice(rng);
    ElementMap c = randomLatticeClosure(L, rng);
    REQUIRE(checkClosureOperator(L.order, c).ok);
    auto joinRep = checkPreservation(L.order, c, L.join);
    CHECK(joinRep.coPreserved);  // suprema co-preserve every closure
    auto meetRep = checkPreservation(L.order, c, L.meet);
    CHECK(meetRep.preserved);  // infima preserve every closure
  }

  // 2-chain, box = constant bottom, c = constant top: not preserved
  FiniteLattice two = chainLattice(2);
  Table constBot(2, std::vector<int>(2, 0));
  auto rep = checkPreservation(two.order, constantMap(2, 1), constBot);
  CHECK_FALSE(rep.preserved);
  CHECK(rep.coPreserved);
}

TEST_CASE("upset algebras", "[lab]") {
  CHECK(upsetAlgebra(chainPoset(1)).n() == 2);
  CHECK(upsetAlgebra(chainPoset(2)).n() == 3);
  CHECK(upsetAlgebra(vPoset()).n() == 5);
  CHECK_THROWS_AS(upsetAlgebra(chainPoset(7)), std::invalid_argument);

  FiniteAlgebra A = upsetAlgebra(vPoset());
  auto rep = checkWeihrauchAlgebra(A);
  CHECK(rep.brouwer);
  CHECK(rep.classification() == "Brouwer");
}

TEST_CASE("co-residuation", "[lab]") {
  // 2-chain, dot = join: imp(top, bottom) = bottom
  FiniteLattice two = chainLattice(2);
  auto r2 = coResidual(two, two.join);
  REQUIRE(std::holds_alternative<Table>(r2));
  CHECK(std::get<Table>(r2)[1][0] == 0);

  // 3-chain {0<1<2}, dot = join: imp(2,1) = 0 and imp(1,2) = 2
  FiniteLattice three = chainLattice(3);
  auto r3 = coResidual(three, three.join);
  REQUIRE(std::holds_alternative<Table>(r3));
  CHECK(std::get<Table>(r3)[2][1] == 0);
  CHECK(std::get<Table>(r3)[1][2] == 2);

  // nondistributive lattices have no co-residual for join
  auto rm = coResidual(diamondM3(), diamondM3().join);
  CHECK(std::holds_alternative<CoResidualFailure>(rm));
  auto rn = coResidual(pentagonN5(), pentagonN5().join);
  CHECK(std::holds_alternative<CoResidualFailure>(rn));
}

TEST_CASE("Weihrauch algebra classification", "[lab]") {
  // upset algebra of the 2-chain is a Brouwer algebra
  auto brouwer = checkWeihrauchAlgebra(upsetAlgebra(chainPoset(2)));
  CHECK(brouwer.brouwer);

  // 3-chain with dot = join and the constant-unit implication: satisfies the
  // one-directional law (5) vacuously, fails the biconditional
  FiniteAlgebra weih;
  weih.lat = chainLattice(3);
  weih.dot = weih.lat.join;
  weih.one = weih.lat.bottom;
  weih.imp = Table(3, std::vector<int>(3, weih.lat.bottom));
  auto repW = checkWeihrauchAlgebra(weih);
  CHECK(repW.isWeihrauch());
  CHECK_FALSE(repW.deductive);
  CHECK(repW.classification() == "Weihrauch");

  // the constant-top implication breaks law (5) outright
  FiniteAlgebra notW = weih;
  notW.imp = Table(3, std::vector<int>(3, notW.lat.top));
  auto repN = checkWeihrauchAlgebra(notW);
  CHECK_FALSE(repN.isWeihrauch());
  CHECK(repN.classification() == "not a Weihrauch algebra");

  // M3 with dot = join: no valid implication exists at all
  FiniteAlgebra m3;
  m3.lat = diamondM3();
  m3.dot = m3.lat.join;
  m3.one = m3.lat.bottom;
  auto res = coResidual(m3.lat, m3.dot);
  CHECK(std::holds_alternative<CoResidualFailure>(res));
  auto repM = checkWeihrauchAlgebra(m3);
  CHECK_FALSE(repM.isWeihrauch());
}

TEST_CASE("evaluation follows the paper's swap", "[lab]") {
  FiniteAlgebra c3 = upsetAlgebra(chainPoset(2));  // 3-element chain algebra
  // order: index of bottom/one and top
  int bot = c3.lat.bottom, top = c3.lat.top;
  int mid = 3 - bot - top;
  Valuation v{{'A', mid}};
  CHECK(evaluate(c3, v, parseFormula("~A")) == top);
  CHECK(evaluate(c3, v, parseFormula("~~A")) == bot);
  CHECK(evaluate(c3, v, parseFormula("~~A | ~A")) == bot);
  // two-element algebra at the top value
  FiniteAlgebra c2 = upsetAlgebra(chainPoset(1));
  Valuation vt{{'A', c2.lat.top}};
  CHECK(evaluate(c2, vt, parseFormula("~A")) == c2.lat.bottom);
  CHECK(evaluate(c2, vt, parseFormula("~~A")) == c2.lat.top);
  CHECK(evaluate(c2, vt, parseFormula("~~A | ~A")) == c2.lat.bottom);
  // & maps to join, | to meet
  Valuation v2{{'A', mid}, {'B', top}};
  CHECK(evaluate(c3, v2, parseFormula("A & B")) == top);
  CHECK(evaluate(c3, v2, parseFormula("A | B")) == mid);
  CHECK_THROWS_AS(evaluate(c3, Valuation{}, parseFormula("A")),
                  std::invalid_argument);
}

TEST_CASE("validity by enumeration", "[lab]") {
  FiniteAlgebra c3 = upsetAlgebra(chainPoset(2));
  CHECK(isValid(c3, parseFormula("A -> A")).valid);

  for (int size = 2; size <= 6; ++size) {
    FiniteAlgebra chain = upsetAlgebra(chainPoset(size - 1));
    REQUIRE(chain.n() == size);
    INFO("chain algebra with " << size << " elements");
    CHECK(theoryIncludesJankov(chain));
  }

  FiniteAlgebra V = upsetAlgebra(vPoset());
  auto r = isValid(V, jankovAxiom());
  REQUIRE_FALSE(r.valid);
  CHECK(evaluate(V, r.countervaluation, jankovAxiom()) == r.value);
  CHECK(r.value != V.one);
  CHECK_FALSE(theoryIncludesJankov(V));

  CHECK_THROWS_AS(isValid(V, parseFormula("A->B->C->D->E")),
                  std::invalid_argument);  // variable bound
}

TEST_CASE("formula parsing", "[lab]") {
  CHECK(parseFormula("~~A | ~A")->k == Formula::K::Or);
  CHECK(parseFormula("A -> B -> C")->b->k == Formula::K::Imp);  // right assoc
  CHECK(parseFormula("A & B | C")->k == Formula::K::Or);        // & binds tighter
  CHECK_THROWS_AS(parseFormula("A &"), FormulaParseError);
  CHECK_THROWS_AS(parseFormula("a"), FormulaParseError);
  CHECK_THROWS_AS(parseFormula("(A"), FormulaParseError);
}

TEST_CASE("intuitionistic axioms hold on generated Brouwer algebras",
          "[lab][property]") {
  const char* axioms[] = {
      "A -> (B -> A)",
      "(A -> (B -> C)) -> ((A -> B) -> (A -> C))",
      "A & B -> A",
      "A & B -> B",
      "A -> (B -> A & B)",
      "A -> A | B",
      "B -> A | B",
      "(A -> C) -> ((B -> C) -> (A | B -> C))",
      "(A -> B) -> ((A -> ~B) -> ~A)",
      "~A -> (A -> B)",
  };
  std::mt19937_64 rng(5);
  for (int i = 0; i < 12; ++i) {
    FinitePreorder p = randomPoset(3, rng);
    FiniteAlgebra A = upsetAlgebra(p);
    for (const char* ax : axioms) {
      INFO("axiom " << ax);
      CHECK(isValid(A, parseFormula(ax)).valid);
    }
  }
}

TEST_CASE("adjunction on small upset algebras", "[lab][property]") {
  for (const auto& p : allPosets(3)) {
    FiniteAlgebra A = upsetAlgebra(p);
    REQUIRE(A.imp);
    const Table& imp = *A.imp;
    for (int a = 0; a < A.n(); ++a)
      for (int b = 0; b < A.n(); ++b)
        for (int c = 0; c < A.n(); ++c) {
          bool lhs = A.lat.order.le(imp[static_cast<std::size_t>(b)]
                                       [static_cast<std::size_t>(a)],
                                    c);
          bool rhs = A.lat.order.le(
              a, A.lat.join[static_cast<std::size_t>(b)]
                           [static_cast<std::size_t>(c)]);
          REQUIRE(lhs == rhs);
        }
    CHECK(checkWeihrauchAlgebra(A).brouwer);
  }
}

TEST_CASE("closure operator metatheory on random pairs", "[lab][property]") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 30; ++i) {
    FinitePreorder P = randomPreorder(2 + static_cast<int>(rng() % 7), rng);
    ElementMap c = randomClosure(P, rng);
    REQUIRE(checkClosureOperator(P, c).ok);
    FinitePreorder Q = inducedPreorder(P, c);
    // item (1): x <= c(y) iff c(x) <= c(y); and <= refines <=_c
    for (int x = 0; x < P.n; ++x)
      for (int y = 0; y < P.n; ++y) {
        CHECK(Q.le(x, y) ==
              P.le(c[static_cast<std::size_t>(x)], c[static_cast<std::size_t>(y)]));
        if (P.le(x, y)) CHECK(Q.le(x, y));
      }
  }
  // items (3b), (3c), (4) on lattices: meet_c infimum, join supremum, quotient
  for (int i = 0; i < 30; ++i) {
    FiniteLattice L = randomDistributiveLattice(rng);
    ElementMap c = randomLatticeClosure(L, rng);
    FinitePreorder Q = inducedPreorder(L.order, c);
    for (int x = 0; x < L.n(); ++x)
      for (int y = 0; y < L.n(); ++y) {
        int mc = L.meet[static_cast<std::size_t>(c[static_cast<std::size_t>(x)])]
                       [static_cast<std::size_t>(c[static_cast<std::size_t>(y)])];
        int j = L.join[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
        // meet_c is an infimum for <=_c
        CHECK(Q.le(mc, x));
        CHECK(Q.le(mc, y));
        for (int z = 0; z < L.n(); ++z)
          if (Q.le(z, x) && Q.le(z, y)) CHECK(Q.le(z, mc));
        // plain join is a supremum for <=_c
        CHECK(Q.le(x, j));
        CHECK(Q.le(y, j));
        for (int z = 0; z < L.n(); ++z)
          if (Q.le(x, z) && Q.le(y, z)) CHECK(Q.le(j, z));
      }
    CHECK_NOTHROW(quotientLattice(L, c));
  }
}

TEST_CASE("preservation composes closure operators", "[lab][property]") {
  // Prop. "Preservation" (3): if c is preserved by c', then c'c is a closure
  // operator for <=_c (and <=).
  std::mt19937_64 rng(777);
  int found = 0;
  while (found < 10) {
    FiniteLattice L = randomDistributiveLattice(rng);
    ElementMap c = randomLatticeClosure(L, rng);
    ElementMap cp = randomLatticeClosure(L, rng);
    if (!preservedByOperator(L.order, c, cp)) continue;
    ++found;
    ElementMap cpc(static_cast<std::size_t>(L.n()));
    for (int x = 0; x < L.n(); ++x)
      cpc[static_cast<std::size_t>(x)] =
          cp[static_cast<std::size_t>(c[static_cast<std::size_t>(x)])];
    CHECK(checkClosureOperator(inducedPreorder(L.order, c), cpc).ok);
    CHECK(checkClosureOperator(L.order, cpc).ok);
  }
}

TEST_CASE("evaluation is invariant under algebra isomorphism",
          "[lab][property]") {
  std::mt19937_64 rng(4242);
  FiniteAlgebra A = upsetAlgebra(vPoset());
  // relabel by a random permutation
  std::vector<int> perm(static_cast<std::size_t>(A.n()));
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  FiniteAlgebra B = A;
  auto ip = [&](int x) { return perm[static_cast<std::size_t>(x)]; };
  std::vector<std::vector<bool>> leq(static_cast<std::size_t>(A.n()),
                                     std::vector<bool>(A.n(), false));
  for (int x = 0; x < A.n(); ++x)
    for (int y = 0; y < A.n(); ++y)
      leq[static_cast<std::size_t>(ip(x))][static_cast<std::size_t>(ip(y))] =
          A.lat.order.le(x, y);
  B.lat.order = FinitePreorder(leq);
  for (int x = 0; x < A.n(); ++x)
    for (int y = 0; y < A.n(); ++y) {
      B.lat.meet[static_cast<std::size_t>(ip(x))][static_cast<std::size_t>(
          ip(y))] = ip(A.lat.meet[static_cast<std::size_t>(x)]
                                 [static_cast<std::size_t>(y)]);
      B.lat.join[static_cast<std::size_t>(ip(x))][static_cast<std::size_t>(
          ip(y))] = ip(A.lat.join[static_cast<std::size_t>(x)]
                                 [static_cast<std::size_t>(y)]);
      (*B.imp)[static_cast<std::size_t>(ip(x))][static_cast<std::size_t>(
          ip(y))] = ip((*A.imp)[static_cast<std::size_t>(x)]
                               [static_cast<std::size_t>(y)]);
    }
  B.lat.bottom = ip(A.lat.bottom);
  B.lat.top = ip(A.lat.top);
  B.dot = B.lat.join;
  B.one = B.lat.bottom;
  for (const char* f : {"~~A | ~A", "A -> A", "~(A & ~A)"})
    CHECK(isValid(A, parseFormula(f)).valid ==
          isValid(B, parseFormula(f)).valid);
}

TEST_CASE("Brouwer embeddings", "[lab]") {
  FiniteAlgebra c3 = upsetAlgebra(chainPoset(2));
  FiniteAlgebra c6 = upsetAlgebra(chainPoset(5));
  CHECK(findBrouwerEmbedding(c3, c6).has_value());
  // an algebra with incomparable elements cannot embed into a chain
  FiniteAlgebra V = upsetAlgebra(vPoset());
  CHECK_FALSE(findBrouwerEmbedding(V, c6).has_value());
  // identity embedding
  CHECK(findBrouwerEmbedding(c3, c3).has_value());
}

TEST_CASE("algebra file round trip", "[lab]") {
  FiniteAlgebra A = upsetAlgebra(vPoset());
  FiniteAlgebra B = loadAlgebra(saveAlgebra(A));
  CHECK(B.n() == A.n());
  CHECK(checkWeihrauchAlgebra(B).brouwer);
  CHECK_THROWS_AS(loadAlgebra("leq 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(loadAlgebra("carrier a\nleq 1\none b\n"),
                  std::invalid_argument);
}
