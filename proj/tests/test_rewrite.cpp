#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace wb;
using wbtest::frozenSeed;

namespace {
TermPtr T(const std::string& s) { return parseTerm(s); }
}  // namespace

TEST_CASE("rule catalog", "[rewrite]") {
  const RewriteRule* r1 = findRule("R1");
  REQUIRE(r1);
  CHECK(r1->kindTag == Kind::SW);
  CHECK(ruleFamilyCount() >= 17);
  // every rule validated at load: rhs/cond variables bound by the lhs
  CHECK_NOTHROW(ruleSet());
  for (const auto& r : ruleSet()) {
    std::vector<std::string> lv, rv;
    r.lhs->collectVars(lv);
    r.rhs->collectVars(rv);
    for (const auto& v : rv)
      CHECK(std::find(lv.begin(), lv.end(), v) != lv.end());
    CHECK_FALSE(r.citation.empty());
  }
}

TEST_CASE("normalize: closure and constant laws", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  // double completion collapses (on an atom with no completeness knowledge)
  CHECK(printTerm(normalize(T("comp(comp(NON))"), Kind::SW, kb)) ==
        "comp(NON)");
  CHECK(printTerm(normalize(T("par(par(NON))"), Kind::SW, kb)) == "par(NON)");
  // complete problems absorb their completion (R15); lim is strongly complete
  // in the seed, so the canonical representative drops comp entirely.
  CHECK(printTerm(normalize(T("comp(lim)"), Kind::W, kb)) == "lim");
  CHECK(equal(normalize(T("comp(comp(lim))"), Kind::SW, kb),
              normalize(T("comp(lim)"), Kind::SW, kb)));
  // guarded: no completeness knowledge, no rewrite
  CHECK(printTerm(normalize(T("comp(NON)"), Kind::W, kb)) == "comp(NON)");
  // constants
  CHECK(printTerm(normalize(T("meet(WKL,INF)"), Kind::SW, kb)) == "WKL");
  CHECK(printTerm(normalize(T("coprod(WKL,INF)"), Kind::SW, kb)) == "INF");
  CHECK(printTerm(normalize(T("sum(INF,WKL)"), Kind::SW, kb)) == "WKL");
  CHECK(printTerm(normalize(T("star(INF,WKL)"), Kind::SW, kb)) == "INF");
  CHECK(printTerm(normalize(T("comp(INF)"), Kind::SW, kb)) == "INF");
  CHECK(printTerm(normalize(T("cimp(WKL,0)"), Kind::W, kb)) == "0");
  CHECK(printTerm(normalize(T("mimp(INF,WKL)"), Kind::W, kb)) == "0");
  CHECK(printTerm(normalize(T("cimp(0,WKL)"), Kind::W, kb)) == "INF");
  CHECK(printTerm(normalize(T("cimp(WKL,INF)"), Kind::W, kb)) == "INF");
  // negation needs the seeded f !=W INF fact
  CHECK(printTerm(normalize(T("neg(WKL)"), Kind::W, kb)) == "INF");
  CHECK(printTerm(normalize(T("neg(INF)"), Kind::W, kb)) == "0");
}

TEST_CASE("normalize: Jankov identity", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  CHECK(printTerm(normalize(T("meet(neg(neg(WKL)),neg(WKL))"), Kind::W, kb)) ==
        "0");
  CHECK(printTerm(normalize(T("meet(neg(neg(INF)),neg(INF))"), Kind::W, kb)) ==
        "0");
}

TEST_CASE("normalize: R3 and the parallelization tower", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  CHECK(printTerm(normalize(T("par(comp(par(comp(NON))))"), Kind::W, kb)) ==
        "par(comp(NON))");
  // not an SW-equivalence: at SW the tower stays
  CHECK(printTerm(normalize(T("par(comp(par(comp(NON))))"), Kind::SW, kb)) ==
        "par(comp(par(comp(NON))))");
}

TEST_CASE("normalize: Medvedev image collapse", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  CHECK(printTerm(normalize(T("otimes(medv(A),medv(B))"), Kind::SW, kb)) ==
        "meet(medv(A),medv(B))");
  CHECK(printTerm(normalize(T("oplus(medv(A),medv(B))"), Kind::SW, kb)) ==
        "prod(medv(A),medv(B))");
  // at W the product of images moves on to the compositional product
  CHECK(printTerm(normalize(T("oplus(medv(A),medv(B))"), Kind::W, kb)) ==
        "star(medv(A),medv(B))");
  CHECK(printTerm(normalize(T("mimpM(medv(B),medv(A))"), Kind::W, kb)) ==
        "cimp(medv(B),medv(A))");
  // guards: not Medvedev-typed, no collapse
  CHECK(printTerm(normalize(T("otimes(WKL,medv(B))"), Kind::SW, kb)) ==
        "otimes(WKL,medv(B))");
  CHECK(printTerm(normalize(T("prod(WKL,LPO)"), Kind::W, kb)) ==
        "prod(WKL,LPO)");
}

TEST_CASE("equivalent: paper equivalences", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  CHECK(equivalent(T("par(prod(LPO,LPO))"), T("prod(par(LPO),par(LPO))"),
                   Kind::SW, kb));
  CHECK(equivalent(T("prod(par(comp(NON)),par(comp(GEN1)))"),
                   T("par(comp(coprod(NON,GEN1)))"), Kind::W, kb));
  TermPtr f = T("meet(WKL,par(LPO))");
  CHECK(equivalent(f, f, Kind::SW, kb));
  CHECK(equivalent(T("comp(coprod(NON,GEN1))"),
                   T("coprod(comp(NON),comp(GEN1))"), Kind::W, kb));
  CHECK(equivalent(T("comp(boxsum(NON,GEN1))"),
                   T("boxsum(comp(NON),comp(GEN1))"), Kind::SW, kb));
  CHECK(equivalent(T("comp(sum(NON,GEN1))"), T("sum(comp(NON),comp(GEN1))"),
                   Kind::SW, kb));
}

TEST_CASE("soundness boundaries: W rules stay off at SW", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  // R9 holds only at W (the SW version fails via box sums)
  CHECK_FALSE(equivalent(T("prod(par(comp(NON)),par(comp(GEN1)))"),
                         T("par(comp(coprod(NON,GEN1)))"), Kind::SW, kb));
  // R5 is a W-equivalence
  CHECK_FALSE(equivalent(T("comp(coprod(NON,GEN1))"),
                         T("coprod(comp(NON),comp(GEN1))"), Kind::SW, kb));
}

TEST_CASE("distributivity fires at TW and never at STW", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  TermPtr l1 = T("meet(comp(NON),comp(coprod(GEN1,COH)))");
  TermPtr r1 = T("coprod(meet(comp(NON),comp(GEN1)),meet(comp(NON),comp(COH)))");
  TermPtr l2 = T("coprod(NON,meet(comp(GEN1),comp(COH)))");
  TermPtr r2 = T("meet(comp(coprod(NON,GEN1)),comp(coprod(NON,COH)))");
  CHECK(equivalent(l1, r1, Kind::TW, kb));
  CHECK(equivalent(l2, r2, Kind::TW, kb));
  CHECK_FALSE(equivalent(l1, r1, Kind::STW, kb));
  CHECK_FALSE(equivalent(l2, r2, Kind::STW, kb));
}

TEST_CASE("termination: 10000 random terms, no step-bound abort",
          "[rewrite][property]") {
  KnowledgeBase kb = frozenSeed();
  std::mt19937_64 rng(42);
  for (int i = 0; i < 10000; ++i) {
    TermPtr t = wbtest::randomTerm(rng, 6);
    Kind k = allKinds[static_cast<std::size_t>(rng() % 6)];
    CHECK_NOTHROW(normalize(t, k, kb));
  }
}

TEST_CASE("confluence under randomized application order",
          "[rewrite][property]") {
  KnowledgeBase kb = frozenSeed();
  std::mt19937_64 rng(99);
  for (int i = 0; i < 1000; ++i) {
    TermPtr t = wbtest::randomTerm(rng, 5);
    Kind k = allKinds[static_cast<std::size_t>(rng() % 6)];
    TermPtr nf = normalize(t, k, kb);
    std::mt19937_64 r1(1000 + i), r2(5000 + i);
    TermPtr a = normalizeRandomized(t, k, kb, r1);
    TermPtr b = normalizeRandomized(t, k, kb, r2);
    INFO(printTerm(t) << " at " << kindName(k));
    REQUIRE(equal(a, nf));
    REQUIRE(equal(b, nf));
  }
}

TEST_CASE("kind monotonicity of proved equivalences", "[rewrite][property]") {
  KnowledgeBase kb = frozenSeed();
  std::mt19937_64 rng(2024);
  std::vector<TermPtr> pool;
  for (int i = 0; i < 24; ++i) pool.push_back(wbtest::randomTerm(rng, 4));
  // seed some pairs that are genuinely equivalent at strong kinds
  for (int i = 0; i < 8; ++i) {
    TermPtr t = wbtest::randomTerm(rng, 3);
    pool.push_back(Term::comp(Term::comp(t)));
    pool.push_back(Term::comp(t));
  }
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = 0; j < pool.size(); ++j)
      for (Kind k1 : allKinds)
        if (equivalent(pool[i], pool[j], k1, kb))
          for (Kind k2 : allKinds)
            if (kindImplies(k1, k2)) {
              INFO(printTerm(pool[i]) << " ~ " << printTerm(pool[j]) << " at "
                                      << kindName(k1) << " -> " << kindName(k2));
              REQUIRE(equivalent(pool[i], pool[j], k2, kb));
            }
}

TEST_CASE("step bound aborts with a diagnostic", "[rewrite]") {
  KnowledgeBase kb = frozenSeed();
  RewriteOptions opt;
  opt.stepBound = 2;
  CHECK_THROWS_AS(
      normalize(T("comp(comp(comp(comp(comp(NON)))))"), Kind::SW, kb, opt),
      RewriteLimitError);
}
