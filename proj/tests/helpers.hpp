#pragma once

#include <random>

#include "wb/closure.hpp"
#include "wb/seed.hpp"

namespace wbtest {

using namespace wb;

/// Atom pool for random terms: a mix of flagged and bare seed atoms.
inline const std::vector<std::string>& atomPool() {
  static const std::vector<std::string> pool{
      "lim", "WKL", "LPO", "J", "C_N", "NON", "GEN1", "COH", "WWKL", "ACC_2"};
  return pool;
}

inline TermPtr randomTerm(std::mt19937_64& rng, int maxDepth,
                          bool withMedvedev = true) {
  auto pick = [&](std::uint64_t n) {
    return static_cast<std::size_t>(rng() % n);
  };
  if (maxDepth <= 0 || pick(5) == 0) {
    switch (pick(withMedvedev ? 6 : 5)) {
      case 0: return Term::zero();
      case 1: return Term::one();
      case 2: return Term::inf();
      case 5: return Term::medvedev(pick(2) ? "A" : "B");
      default:
        return Term::atom(atomPool()[pick(atomPool().size())]);
    }
  }
  switch (pick(withMedvedev ? 12 : 11)) {
    case 0: return Term::comp(randomTerm(rng, maxDepth - 1, withMedvedev));
    case 1: return Term::par(randomTerm(rng, maxDepth - 1, withMedvedev));
    case 2: return Term::fpar(randomTerm(rng, maxDepth - 1, withMedvedev));
    case 3: return Term::neg(randomTerm(rng, maxDepth - 1, withMedvedev));
    case 11:
      return Term::medApp(static_cast<MedOp>(pick(3)),
                          randomTerm(rng, maxDepth - 1, withMedvedev),
                          randomTerm(rng, maxDepth - 1, withMedvedev));
    default:
      return Term::binary(static_cast<BinOp>(pick(8)),
                          randomTerm(rng, maxDepth - 1, withMedvedev),
                          randomTerm(rng, maxDepth - 1, withMedvedev));
  }
}

/// Seed KB with the rewrite-guard baseline frozen (enables the shared
/// normal-form cache; guards behave exactly as at load time).
inline KnowledgeBase frozenSeed() {
  KnowledgeBase kb = seedKB();
  kb.freezeGuardBaseline();
  return kb;
}

inline std::set<std::string> factKeys(const KnowledgeBase& kb) {
  std::set<std::string> keys;
  for (const auto& f : kb.facts()) keys.insert(f.key());
  return keys;
}

}  // namespace wbtest
