#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "wb/stream/problems.hpp"

using namespace wb::streams;

namespace {

UPName randomUP(std::mt19937_64& rng, std::size_t maxPre = 5,
                std::size_t maxPer = 4, Sym symbols = 4) {
  Word pre(rng() % (maxPre + 1)), per(1 + rng() % maxPer);
  for (Sym& s : pre) s = rng() % symbols;
  for (Sym& s : per) s = rng() % symbols;
  return UPName(std::move(pre), std::move(per));
}

}  // namespace

TEST_CASE("UPName normal form and text round trip", "[stream]") {
  // two encodings of the same sequence normalize identically
  CHECK(UPName({2, 0, 1}, {1}) == UPName({2, 0}, {1}));
  CHECK(UPName({}, {1, 0, 1, 0}) == UPName({}, {1, 0}));
  CHECK(UPName({1}, {1}) == UPName::constant(1));
  CHECK(UPName::parse("2,0,1;(1)") == UPName({2, 0}, {1}));
  CHECK(UPName::parse("(0,1)").str() == "(0,1)");
  CHECK_THROWS_AS(UPName::parse("1,2"), std::invalid_argument);
  CHECK_THROWS_AS(UPName({}, {}), std::invalid_argument);

  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    UPName p = randomUP(rng);
    // semantic equality witnessed by unrolling
    UPName q = UPName::parse(p.str());
    CHECK(p == q);
    std::size_t n = 2 * (p.pre().size() + p.per().size()) + 4;
    CHECK(p.unroll(n) == q.unroll(n));
    // stuttered period and padded preamble denote the same stream
    Word per2 = p.per();
    per2.insert(per2.end(), p.per().begin(), p.per().end());
    Word pre2 = p.pre();
    pre2.push_back(p.per()[0]);
    Word per3 = p.per();
    std::rotate(per3.begin(), per3.begin() + 1, per3.end());
    CHECK(UPName(p.pre(), per2) == p);
    CHECK(UPName(pre2, per3) == p);
  }
}

TEST_CASE("interleaving and projections", "[stream]") {
  UPName zeros = UPName::constant(0), ones = UPName::constant(1);
  UPName z = interleave(zeros, ones);
  CHECK(z == UPName({}, {0, 1}));

  std::mt19937_64 rng(2);
  for (int i = 0; i < 100; ++i) {
    UPName p = randomUP(rng), q = randomUP(rng);
    UPName t = interleave(p, q);
    CHECK(projEven(t) == p);
    CHECK(projOdd(t) == q);
  }
  UPName p({1, 2}, {3, 4});
  UPName pp = interleave(p, p);
  for (std::size_t i = 0; i < 24; ++i) CHECK(pp.at(i) == p.at(i / 2));
}

TEST_CASE("Cantor pairing", "[stream]") {
  CHECK(cantorPair(0, 0) == 0);
  CHECK(cantorPair(1, 2) == 8);
  CHECK(cantorPair(2, 1) == 7);
  for (Sym n = 0; n < 200; ++n)
    for (Sym k = 0; k < 200; ++k) {
      auto [a, b] = cantorUnpair(cantorPair(n, k));
      REQUIRE(a == n);
      REQUIRE(b == k);
    }
  for (Sym m = 0; m < 20000; ++m) {
    auto [n, k] = cantorUnpair(m);
    REQUIRE(cantorPair(n, k) == m);
  }
}

TEST_CASE("countable tupling", "[stream]") {
  // all components constant zero: the tuple is the zero stream
  CountableTuple t0 = tupleCountable({}, UPName::constant(0));
  auto u0 = t0.toUPName();
  REQUIRE(u0);
  CHECK(*u0 == UPName::constant(0));

  // a single 1-stream component over the zero default puts its symbols at
  // the column-0 pair codes <0,k> - not an ultimately periodic stream
  CountableTuple t1 =
      tupleCountable({{0, UPName::constant(1)}}, UPName::constant(0));
  for (Sym m = 0; m < 300; ++m) {
    auto [n, k] = cantorUnpair(m);
    CHECK(t1.at(m) == (n == 0 ? 1 : 0));
  }
  CHECK_FALSE(t1.toUPName(8, 8, 256).has_value());

  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    UPName a = randomUP(rng), b = randomUP(rng), d = randomUP(rng);
    CountableTuple t = tupleCountable({{0, a}, {3, b}}, d);
    CHECK(projI(t, 0) == a);
    CHECK(projI(t, 3) == b);
    CHECK(projI(t, 7) == d);
  }
}

TEST_CASE("shifts", "[stream]") {
  UPName p({3, 1, 0, 2}, {2});
  auto sm = shiftMinus(p);
  REQUIRE_FALSE(isFinite(sm));
  CHECK(std::get<UPName>(sm) == UPName({2, 0, 1}, {1}));

  auto smZero = shiftMinus(UPName::constant(0));
  REQUIRE(isFinite(smZero));
  CHECK(std::get<FiniteWord>(smZero).symbols.empty());

  auto smFew = shiftMinus(UPName({5, 0, 7}, {0}));
  REQUIRE(isFinite(smFew));
  CHECK(std::get<FiniteWord>(smFew).symbols == Word{4, 6});

  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    UPName q = randomUP(rng);
    auto r = shiftMinus(shiftPlus(q));
    REQUIRE_FALSE(isFinite(r));
    CHECK(std::get<UPName>(r) == q);
  }
}

TEST_CASE("decoding through the completion", "[stream]") {
  SpaceDescriptor baire = baireSpace();
  CHECK(isBottom(decodeCompletion(baire, UPName::constant(0))));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    UPName q = randomUP(rng);
    Point x = decodeCompletion(baire, shiftPlus(q));
    REQUIRE_FALSE(isBottom(x));
    CHECK(std::get<UPName>(x) == q);
  }
  // delta_N(p) = p(0): name (0,0,3,...) decodes to 2 through the completion
  SpaceDescriptor nat = natSpace();
  Point v = decodeCompletion(nat, UPName({0, 0, 3}, {1}));
  REQUIRE_FALSE(isBottom(v));
  CHECK(std::get<Sym>(v) == 2);
  // a Baire name that is not binary denotes bottom in the completion of 2^N
  CHECK(isBottom(decodeCompletion(cantorSpace(), shiftPlus(UPName({7}, {0})))));
}

TEST_CASE("totalization", "[stream]") {
  // F = identity: shiftMinus(G(p)) = p for all p
  PrefixTransformer G = totalize(identityT());
  std::mt19937_64 rng(6);
  for (int i = 0; i < 50; ++i) {
    UPName p = randomUP(rng);
    auto sm = shiftMinus(G.applyUP(p));
    REQUIRE_FALSE(isFinite(sm));
    CHECK(std::get<UPName>(sm) == p);
  }

  // F stalls immediately: G(p) = 0^omega, decoding to bottom
  PrefixTransformer never("never", [](const Word&) { return Word{}; });
  PrefixTransformer Gn = totalize(never);
  UPName gp = Gn.applyUP(UPName({1, 2}, {3}));
  CHECK(gp == UPName::constant(0));
  CHECK(isBottom(decodeCompletion(baireSpace(), gp)));

  // F emits one symbol 5 and stalls: shiftMinus(G(p)) is the word (5)
  PrefixTransformer five("five", [](const Word& in) {
    return in.empty() ? Word{} : Word{5};
  });
  auto smFive = shiftMinus(totalize(five).applyUP(UPName({1}, {1})));
  REQUIRE(isFinite(smFive));
  CHECK(std::get<FiniteWord>(smFive).symbols == Word{5});

  // monotone by construction
  CHECK(G.monotoneOn(UPName({0, 2}, {1, 3})));
  CHECK(Gn.monotoneOn(UPName({0, 2}, {1, 3})));
}

TEST_CASE("concrete problems", "[stream]") {
  CHECK(lpo(UPName::constant(1)) == 1);
  CHECK(lpo(UPName({1, 1, 0}, {1})) == 0);
  CHECK(lpo(UPName({2, 3}, {4})) == 1);

  CHECK(sortProblem(UPName({0, 1, 0}, {1})) == UPName({0, 0}, {1}));
  CHECK(sortProblem(UPName::constant(0)) == UPName::constant(0));
  CHECK(sortProblem(UPName({1, 0}, {0, 1})) == UPName::constant(0));
  CHECK_THROWS_AS(sortProblem(UPName({2}, {1})), std::invalid_argument);

  NatSet a = accX(2, UPName::constant(0));
  CHECK(a.contains(0));
  CHECK(a.contains(1));
  NatSet b = accX(2, UPName({0, 2}, {0}));
  CHECK(b.contains(0));
  CHECK_FALSE(b.contains(1));
  NatSet c = accX(std::nullopt, UPName({0, 4}, {0}));
  CHECK(c.cofinite);
  CHECK_FALSE(c.contains(3));
  CHECK(c.contains(7));
  CHECK_THROWS_AS(accX(2, UPName({1, 2}, {3})), std::invalid_argument);
}

TEST_CASE("completeness witnesses", "[stream]") {
  auto w = completenessWitness("LPO");
  CHECK(w.K.applyUP(UPName::constant(2)) == UPName::constant(1));
  // on p = q+1 the zeros of K(p) sit exactly at the zeros of q
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; ++i) {
    UPName q = randomUP(rng, 4, 3, 2);
    UPName p = shiftPlus(q);
    UPName kp = w.K.applyUP(p);
    for (std::size_t n = 0; n < 30; ++n)
      CHECK((kp.at(n) == 0) == (q.at(n) == 0));
  }

  auto wa = completenessWitness("ACC_2");
  CHECK(wa.K.applyUP(UPName({1, 1, 3}, {1})) == UPName({0, 0, 2}, {0}));
  CHECK_THROWS_AS(completenessWitness("WKL"), std::invalid_argument);
}

TEST_CASE("checkReduction validates the witnesses", "[stream]") {
  auto quick = allUPNames(3, 2, 3);
  for (const char* name : {"LPO", "SORT", "ACC_2", "ACC_N"}) {
    ProblemSemantics sem = std::string(name) == "LPO"    ? lpoSemantics()
                           : std::string(name) == "SORT" ? sortSemantics()
                           : std::string(name) == "ACC_2"
                               ? accSemantics(2)
                               : accSemantics(std::nullopt);
    auto w = completenessWitness(name);
    auto rep = checkCompletionReduction(sem, w.H, w.K, quick);
    INFO(name);
    CHECK(rep.ok());
    CHECK(rep.passed == quick.size());
  }
}

TEST_CASE("corrupted witness fails on defined samples", "[stream]") {
  auto quick = allUPNames(3, 2, 3);
  auto bad = corruptedWitness("LPO");
  auto rep = checkCompletionReduction(lpoSemantics(), bad.H, bad.K, quick);
  CHECK_FALSE(rep.ok());
  // failures appear exactly where the output decoding shifts: on samples
  // whose decode is defined
  for (const auto& f : rep.failures) {
    Point x = decodeCompletion(baireSpace(), f.sample);
    CHECK_FALSE(isBottom(x));
  }
}

TEST_CASE("undecidable samples are rejected", "[stream]") {
  ProblemSemantics sem = lpoSemantics();
  sem.inDom = [](const Point&) -> std::optional<bool> { return std::nullopt; };
  auto w = completenessWitness("LPO");
  auto rep =
      checkCompletionReduction(sem, w.H, w.K, {shiftPlus(UPName::constant(1))});
  CHECK(rep.rejected == 1);
  CHECK(rep.passed == 0);
}
