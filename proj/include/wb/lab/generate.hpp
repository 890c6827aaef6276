#pragma once

#include <random>

#include "wb/lab/algebra.hpp"

namespace wb::lab {

/// Random labeled poset: random edges on i<j, then transitive closure.
inline FinitePreorder randomPoset(int n, std::mt19937_64& rng,
                                  double edgeProb = 0.35) {
  std::bernoulli_distribution edge(edgeProb);
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(n),
                                   std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (edge(rng)) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)])
        for (int j = 0; j < n; ++j)
          if (m[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
            m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  return FinitePreorder(std::move(m));
}

/// Random preorder: a random poset of clusters, blown up to n elements.
inline FinitePreorder randomPreorder(int n, std::mt19937_64& rng) {
  int clusters = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
  FinitePreorder base = randomPoset(clusters, rng);
  std::vector<int> cl(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    cl[static_cast<std::size_t>(i)] =
        i < clusters ? i : static_cast<int>(rng() % static_cast<std::uint64_t>(clusters));
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(n),
                                   std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          base.le(cl[static_cast<std::size_t>(i)], cl[static_cast<std::size_t>(j)]);
  return FinitePreorder(std::move(m));
}

/// Random closure operator on a preorder. Proposes inflationary maps and
/// keeps the first that is monotone and idempotent up to equivalence; falls
/// back to the identity (always a closure operator).
inline ElementMap randomClosure(const FinitePreorder& P, std::mt19937_64& rng,
                                int attempts = 200) {
  int n = P.n;
  std::vector<std::vector<int>> up(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (P.le(x, y)) up[static_cast<std::size_t>(x)].push_back(y);
  for (int a = 0; a < attempts; ++a) {
    ElementMap c(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x) {
      const auto& u = up[static_cast<std::size_t>(x)];
      c[static_cast<std::size_t>(x)] =
          u[static_cast<std::size_t>(rng() % u.size())];
    }
    if (checkClosureOperator(P, c).ok) return c;
  }
  ElementMap c(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) c[static_cast<std::size_t>(x)] = x;
  return c;
}

/// Random closure operator on a lattice via a meet-closed set of closed
/// points: c(x) = least closed point above x. Always succeeds.
inline ElementMap randomLatticeClosure(const FiniteLattice& L,
                                       std::mt19937_64& rng) {
  int n = L.n();
  std::vector<bool> closed(static_cast<std::size_t>(n), false);
  closed[static_cast<std::size_t>(L.top)] = true;
  std::bernoulli_distribution pick(0.4);
  for (int x = 0; x < n; ++x)
    if (pick(rng)) closed[static_cast<std::size_t>(x)] = true;
  // close under meets
  for (bool changed = true; changed;) {
    changed = false;
    for (int a = 0; a < n; ++a)
      if (closed[static_cast<std::size_t>(a)])
        for (int b = 0; b < n; ++b)
          if (closed[static_cast<std::size_t>(b)]) {
            int m = L.meet[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            if (!closed[static_cast<std::size_t>(m)]) {
              closed[static_cast<std::size_t>(m)] = true;
              changed = true;
            }
          }
  }
  ElementMap c(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    int best = L.top;
    for (int t = 0; t < n; ++t)
      if (closed[static_cast<std::size_t>(t)] && L.order.le(x, t) &&
          L.order.le(t, best))
        best = t;
    c[static_cast<std::size_t>(x)] = best;
  }
  return c;
}

/// Random distributive lattice as the upset lattice of a small random poset.
inline FiniteLattice randomDistributiveLattice(std::mt19937_64& rng,
                                               int maxBase = 3) {
  int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(maxBase));
  FinitePreorder base = randomPoset(n, rng);
  return upsetAlgebra(base).lat;
}

}  // namespace wb::lab
