#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <variant>

#include "wb/lab/order.hpp"

namespace wb::lab {

/// Bounded lattice with a monoid operation and (optionally) an implication.
/// In the paper's Brouwer orientation the algebra unit 1 is the lattice
/// BOTTOM and the top plays the role of the absurdity.
struct FiniteAlgebra {
  FiniteLattice lat;
  Table dot;
  int one = -1;
  std::optional<Table> imp;

  int n() const { return lat.n(); }
  const std::string& name(int i) const {
    return lat.order.names[static_cast<std::size_t>(i)];
  }
};

// ---------------------------------------------------------------------------
// Co-residuation

struct CoResidualFailure {
  int y = -1, x = -1, z = -1;  // z = -1: no least witness; else law violation
  std::string message;
};

/// For each (y,x) the <=-least z with x <= y.z, validated against the full
/// biconditional x <= y.z <=> (y->x) <= z; FAIL with a witness otherwise.
inline std::variant<Table, CoResidualFailure> coResidual(
    const FiniteLattice& L, const Table& dot) {
  int n = L.n();
  Table imp(static_cast<std::size_t>(n), std::vector<int>(n, -1));
  for (int y = 0; y < n; ++y)
    for (int x = 0; x < n; ++x) {
      int least = -1;
      for (int z = 0; z < n; ++z) {
        if (!L.order.le(x, dot[static_cast<std::size_t>(y)]
                               [static_cast<std::size_t>(z)]))
          continue;
        if (least == -1 || L.order.le(z, least)) least = z;
      }
      if (least == -1) {
        return CoResidualFailure{y, x, -1,
                                 "no z with x <= y.z for (y=" +
                                     L.order.names[static_cast<std::size_t>(y)] +
                                     ", x=" +
                                     L.order.names[static_cast<std::size_t>(x)] +
                                     ")"};
      }
      // least must actually be below every candidate, not just minimal.
      for (int z = 0; z < n; ++z)
        if (L.order.le(x, dot[static_cast<std::size_t>(y)]
                              [static_cast<std::size_t>(z)]) &&
            !L.order.le(least, z))
          return CoResidualFailure{
              y, x, z, "no least z with x <= y.z (two incomparable minima)"};
      imp[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = least;
    }
  // Full biconditional.
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        bool lhs = L.order.le(x, dot[static_cast<std::size_t>(y)]
                                     [static_cast<std::size_t>(z)]);
        bool rhs = L.order.le(imp[static_cast<std::size_t>(y)]
                                 [static_cast<std::size_t>(x)],
                              z);
        if (lhs != rhs)
          return CoResidualFailure{y, x, z, "co-residuation law fails"};
      }
  return imp;
}

// ---------------------------------------------------------------------------
// Weihrauch / Troelstra / Brouwer classification

struct AlgebraReport {
  bool boundedLattice = false;
  bool monoid = false;
  bool dotMonotone = false;
  bool impMonotone = false;   // antitone first argument, monotone second
  bool implicationLaw = false;  // x <= y.z => (y->x) <= z
  bool commutative = false;
  bool deductive = false;     // the biconditional version of the law
  bool distributive = false;  // informational only
  bool hasImp = false;

  bool isWeihrauch() const {
    return boundedLattice && monoid && dotMonotone && hasImp && impMonotone &&
           implicationLaw;
  }
  bool isTroelstra() const { return isWeihrauch() && commutative && deductive; }
  bool brouwer = false;  // Troelstra with dot = join and one = bottom

  std::vector<std::string> failures;

  std::string classification() const {
    if (brouwer) return "Brouwer";
    if (isTroelstra()) return "Troelstra";
    if (isWeihrauch()) return "Weihrauch";
    return "not a Weihrauch algebra";
  }
};

inline AlgebraReport checkWeihrauchAlgebra(const FiniteAlgebra& A) {
  AlgebraReport r;
  int n = A.n();
  auto le = [&](int a, int b) { return A.lat.order.le(a, b); };
  auto idx = [](int a) { return static_cast<std::size_t>(a); };

  std::string why;
  r.boundedLattice = A.lat.validate(&why);
  if (!r.boundedLattice) r.failures.push_back("lattice: " + why);

  r.monoid = true;
  for (int a = 0; a < n && r.monoid; ++a) {
    if (A.dot[idx(A.one)][idx(a)] != a || A.dot[idx(a)][idx(A.one)] != a)
      r.monoid = false;
    for (int b = 0; b < n && r.monoid; ++b)
      for (int c = 0; c < n; ++c)
        if (A.dot[idx(A.dot[idx(a)][idx(b)])][idx(c)] !=
            A.dot[idx(a)][idx(A.dot[idx(b)][idx(c)])]) {
          r.monoid = false;
          break;
        }
  }
  if (!r.monoid) r.failures.push_back("monoid axioms fail");

  r.dotMonotone = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (le(a, b))
        for (int c = 0; c < n; ++c)
          if (!le(A.dot[idx(a)][idx(c)], A.dot[idx(b)][idx(c)]) ||
              !le(A.dot[idx(c)][idx(a)], A.dot[idx(c)][idx(b)]))
            r.dotMonotone = false;
  if (!r.dotMonotone) r.failures.push_back("dot not monotone");

  r.commutative = true;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (A.dot[idx(a)][idx(b)] != A.dot[idx(b)][idx(a)]) r.commutative = false;

  r.hasImp = A.imp.has_value();
  if (r.hasImp) {
    const Table& imp = *A.imp;
    r.impMonotone = true;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (le(a, b))
          for (int c = 0; c < n; ++c) {
            if (!le(imp[idx(c)][idx(a)], imp[idx(c)][idx(b)]))
              r.impMonotone = false;  // monotone in the second argument
            if (!le(imp[idx(b)][idx(c)], imp[idx(a)][idx(c)]))
              r.impMonotone = false;  // antitone in the first argument
          }
    if (!r.impMonotone) r.failures.push_back("implication monotonicity fails");

    r.implicationLaw = true;
    r.deductive = true;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) {
          bool lhs = le(x, A.dot[idx(y)][idx(z)]);
          bool rhs = le(imp[idx(y)][idx(x)], z);
          if (lhs && !rhs) r.implicationLaw = false;
          if (lhs != rhs) r.deductive = false;
        }
    if (!r.implicationLaw) r.failures.push_back("implication law (5) fails");
  } else {
    r.failures.push_back("no implication table");
  }

  r.distributive = A.lat.distributive();
  r.brouwer = r.isTroelstra() && A.dot == A.lat.join && A.one == A.lat.bottom;
  return r;
}

// ---------------------------------------------------------------------------
// Upset algebras (the standard source of finite Brouwer algebras)

/// Brouwer algebra of upward-closed subsets of a poset, ordered by REVERSE
/// inclusion: the unit 1 = bottom is the full set, the top is the empty set.
/// dot = join, implication from co-residuation.
inline FiniteAlgebra upsetAlgebra(const FinitePreorder& poset) {
  if (!poset.antisymmetric())
    throw std::invalid_argument("upsetAlgebra: needs a poset");
  if (poset.n > 6)
    throw std::invalid_argument("upsetAlgebra: poset size bound (6) exceeded");
  int n = poset.n;
  std::vector<std::uint32_t> upsets;
  for (std::uint32_t s = 0; s < (1u << n); ++s) {
    bool up = true;
    for (int i = 0; i < n && up; ++i)
      if (s & (1u << i))
        for (int j = 0; j < n; ++j)
          if (poset.le(i, j) && !(s & (1u << j))) {
            up = false;
            break;
          }
    if (up) upsets.push_back(s);
  }
  int m = static_cast<int>(upsets.size());
  auto indexOf = [&](std::uint32_t s) {
    return static_cast<int>(std::find(upsets.begin(), upsets.end(), s) -
                            upsets.begin());
  };
  std::vector<std::string> names;
  for (std::uint32_t s : upsets) {
    std::string nm = "{";
    for (int i = 0; i < n; ++i)
      if (s & (1u << i)) {
        if (nm.size() > 1) nm += ",";
        nm += poset.names[static_cast<std::size_t>(i)];
      }
    nm += "}";
    names.push_back(nm);
  }
  // a <= b iff a is a superset of b (reverse inclusion).
  std::vector<std::vector<bool>> leq(static_cast<std::size_t>(m),
                                     std::vector<bool>(m, false));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      leq[a][b] = (upsets[static_cast<std::size_t>(a)] &
                   upsets[static_cast<std::size_t>(b)]) ==
                  upsets[static_cast<std::size_t>(b)];
  FiniteLattice L;
  L.order = FinitePreorder(std::move(leq), std::move(names));
  L.meet.assign(static_cast<std::size_t>(m), std::vector<int>(m, -1));
  L.join.assign(static_cast<std::size_t>(m), std::vector<int>(m, -1));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      L.meet[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          indexOf(upsets[static_cast<std::size_t>(a)] |
                  upsets[static_cast<std::size_t>(b)]);
      L.join[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          indexOf(upsets[static_cast<std::size_t>(a)] &
                  upsets[static_cast<std::size_t>(b)]);
    }
  L.bottom = indexOf((1u << n) - 1);  // full set
  L.top = indexOf(0);                 // empty set
  std::string why;
  if (!L.validate(&why)) throw std::logic_error("upset lattice invalid: " + why);

  FiniteAlgebra A;
  A.lat = std::move(L);
  A.dot = A.lat.join;
  A.one = A.lat.bottom;
  auto res = coResidual(A.lat, A.dot);
  if (auto* t = std::get_if<Table>(&res)) A.imp = *t;
  return A;
}

// ---------------------------------------------------------------------------
// Brouwer algebra embeddings (plumbing for cross-checks)

/// Injective map preserving the order both ways, meet, join, implication,
/// bottom and top. Backtracking search; nullopt if none exists.
inline std::optional<ElementMap> findBrouwerEmbedding(const FiniteAlgebra& A,
                                                      const FiniteAlgebra& B) {
  if (!A.imp || !B.imp) return std::nullopt;
  int na = A.n(), nb = B.n();
  ElementMap m(static_cast<std::size_t>(na), -1);
  std::vector<bool> used(static_cast<std::size_t>(nb), false);
  auto idx = [](int a) { return static_cast<std::size_t>(a); };

  auto consistent = [&](int a) {
    for (int x = 0; x <= a; ++x)
      for (int y = 0; y <= a; ++y) {
        if (A.lat.order.le(x, y) != B.lat.order.le(m[idx(x)], m[idx(y)]))
          return false;
        if (m[idx(A.lat.meet[idx(x)][idx(y)])] >= 0 &&
            m[idx(A.lat.meet[idx(x)][idx(y)])] !=
                B.lat.meet[idx(m[idx(x)])][idx(m[idx(y)])])
          return false;
        if (m[idx(A.lat.join[idx(x)][idx(y)])] >= 0 &&
            m[idx(A.lat.join[idx(x)][idx(y)])] !=
                B.lat.join[idx(m[idx(x)])][idx(m[idx(y)])])
          return false;
        if (m[idx((*A.imp)[idx(x)][idx(y)])] >= 0 &&
            m[idx((*A.imp)[idx(x)][idx(y)])] !=
                (*B.imp)[idx(m[idx(x)])][idx(m[idx(y)])])
          return false;
      }
    return true;
  };

  std::function<bool(int)> place = [&](int a) -> bool {
    if (a == na) {
      return m[idx(A.lat.bottom)] == B.lat.bottom &&
             m[idx(A.lat.top)] == B.lat.top;
    }
    for (int b = 0; b < nb; ++b) {
      if (used[idx(b)]) continue;
      if (a == A.lat.bottom && b != B.lat.bottom) continue;
      if (a == A.lat.top && b != B.lat.top) continue;
      m[idx(a)] = b;
      used[idx(b)] = true;
      if (consistent(a) && place(a + 1)) return true;
      used[idx(b)] = false;
      m[idx(a)] = -1;
    }
    return false;
  };
  if (place(0)) return m;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Poset enumeration and canon (for exhaustive oracles)

/// All labeled posets on {0..n-1}, as preorders. n <= 5 stays comfortable.
inline std::vector<FinitePreorder> allPosets(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("allPosets: n in 1..5");
  std::vector<FinitePreorder> out;
  int pairs = n * (n - 1);
  std::vector<std::pair<int, int>> offDiag;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) offDiag.emplace_back(i, j);
  for (std::uint64_t mask = 0; mask < (1ull << pairs); ++mask) {
    std::array<std::uint32_t, 5> row{};
    for (int i = 0; i < n; ++i) row[static_cast<std::size_t>(i)] = 1u << i;
    for (int p = 0; p < pairs; ++p)
      if (mask & (1ull << p))
        row[static_cast<std::size_t>(offDiag[static_cast<std::size_t>(p)].first)] |=
            1u << offDiag[static_cast<std::size_t>(p)].second;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = 0; j < n && ok; ++j) {
        if (i != j && (row[static_cast<std::size_t>(i)] & (1u << j)) &&
            (row[static_cast<std::size_t>(j)] & (1u << i)))
          ok = false;  // antisymmetry
        else if ((row[static_cast<std::size_t>(i)] & (1u << j)) &&
                 (row[static_cast<std::size_t>(i)] |
                  row[static_cast<std::size_t>(j)]) !=
                     row[static_cast<std::size_t>(i)])
          ok = false;  // transitivity: row(j) subset of row(i)
      }
    if (!ok) continue;
    std::vector<std::vector<bool>> m(static_cast<std::size_t>(n),
                                     std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            (row[static_cast<std::size_t>(i)] & (1u << j)) != 0;
    out.emplace_back(std::move(m));
  }
  return out;
}

/// Hard-coded nondistributive test lattices.
inline FiniteLattice diamondM3() {
  // bottom 0; atoms 1,2,3; top 4
  std::vector<std::vector<bool>> m(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  for (int i : {1, 2, 3}) {
    m[0][static_cast<std::size_t>(i)] = true;
    m[static_cast<std::size_t>(i)][4] = true;
  }
  m[0][4] = true;
  return FiniteLattice::fromOrder(
      FinitePreorder(std::move(m), {"bot", "a", "b", "c", "top"}));
}

inline FiniteLattice pentagonN5() {
  // bottom 0; chain 1 < 2; incomparable 3; top 4
  std::vector<std::vector<bool>> m(5, std::vector<bool>(5, false));
  for (int i = 0; i < 5; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  m[0][1] = m[0][2] = m[0][3] = m[0][4] = true;
  m[1][2] = m[1][4] = true;
  m[2][4] = true;
  m[3][4] = true;
  return FiniteLattice::fromOrder(
      FinitePreorder(std::move(m), {"bot", "a", "b", "c", "top"}));
}

inline FinitePreorder chainPoset(int n) {
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(n),
                                   std::vector<bool>(n, false));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
  return FinitePreorder(std::move(m));
}

inline FinitePreorder vPoset() {
  // one bottom element below two incomparable maximal elements
  std::vector<std::vector<bool>> m(3, std::vector<bool>(3, false));
  for (int i = 0; i < 3; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = true;
  m[0][1] = m[0][2] = true;
  return FinitePreorder(std::move(m), {"r", "u", "v"});
}

}  // namespace wb::lab
