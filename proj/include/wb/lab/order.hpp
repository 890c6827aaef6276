#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace wb::lab {

/// Map on a finite carrier, represented by its value vector.
using ElementMap = std::vector<int>;
using Table = std::vector<std::vector<int>>;

/// Finite preorder: reflexive, transitive boolean matrix over 0..n-1.
struct FinitePreorder {
  int n = 0;
  std::vector<std::string> names;
  std::vector<std::vector<bool>> leq;

  FinitePreorder() = default;
  FinitePreorder(std::vector<std::vector<bool>> m,
                 std::vector<std::string> elementNames = {})
      : n(static_cast<int>(m.size())), names(std::move(elementNames)),
        leq(std::move(m)) {
    if (names.empty())
      for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    if (static_cast<int>(names.size()) != n)
      throw std::invalid_argument("preorder: name count mismatch");
    for (const auto& row : leq)
      if (static_cast<int>(row.size()) != n)
        throw std::invalid_argument("preorder: matrix is not square");
    for (int i = 0; i < n; ++i)
      if (!leq[i][i]) throw std::invalid_argument("preorder: not reflexive");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[i][j])
          for (int k = 0; k < n; ++k)
            if (leq[j][k] && !leq[i][k])
              throw std::invalid_argument("preorder: not transitive");
  }

  bool le(int i, int j) const { return leq[i][j]; }
  bool equiv(int i, int j) const { return leq[i][j] && leq[j][i]; }

  bool antisymmetric() const {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && leq[i][j] && leq[j][i]) return false;
    return true;
  }
};

// ---------------------------------------------------------------------------
// Closure operators

struct ClosureReport {
  bool ok = true;
  int axiom = 0;  // 1 inflationary, 2 idempotent, 3 monotone
  int x = -1, y = -1;
  std::string message;
};

/// Checks the three closure-operator axioms; reports the first violation.
inline ClosureReport checkClosureOperator(const FinitePreorder& P,
                                          const ElementMap& c) {
  if (static_cast<int>(c.size()) != P.n)
    throw std::invalid_argument("closure map is not total on the carrier");
  for (int x = 0; x < P.n; ++x)
    if (c[x] < 0 || c[x] >= P.n)
      throw std::invalid_argument("closure map leaves the carrier");
  for (int x = 0; x < P.n; ++x)
    if (!P.le(x, c[x]))
      return {false, 1, x, -1,
              "axiom (1) fails: not x <= c(x) at " + P.names[x]};
  for (int x = 0; x < P.n; ++x)
    if (!P.le(c[c[x]], c[x]))
      return {false, 2, x, -1,
              "axiom (2) fails: not cc(x) <= c(x) at " + P.names[x]};
  for (int x = 0; x < P.n; ++x)
    for (int y = 0; y < P.n; ++y)
      if (P.le(x, y) && !P.le(c[x], c[y]))
        return {false, 3, x, y,
                "axiom (3) fails: x <= y but not c(x) <= c(y) at (" +
                    P.names[x] + "," + P.names[y] + ")"};
  return {};
}

/// The preorder x <=_c y :iff x <= c(y) generated by a closure operator.
inline FinitePreorder inducedPreorder(const FinitePreorder& P,
                                      const ElementMap& c) {
  ClosureReport r = checkClosureOperator(P, c);
  if (!r.ok)
    throw std::invalid_argument("inducedPreorder: not a closure operator: " +
                                r.message);
  std::vector<std::vector<bool>> m(static_cast<std::size_t>(P.n),
                                   std::vector<bool>(P.n, false));
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j) m[i][j] = P.le(i, c[j]);
  FinitePreorder Q(std::move(m), P.names);
  for (int i = 0; i < P.n; ++i)
    for (int j = 0; j < P.n; ++j)
      if (P.le(i, j) && !Q.le(i, j))
        throw std::logic_error("induced preorder does not refine <=");
  return Q;
}

// ---------------------------------------------------------------------------
// Lattices

struct FiniteLattice {
  FinitePreorder order;  // antisymmetric
  Table meet, join;
  int bottom = -1, top = -1;

  int n() const { return order.n; }

  /// Derives meet/join/bounds from the order; throws when some pair has no
  /// greatest lower or least upper bound.
  static FiniteLattice fromOrder(const FinitePreorder& P) {
    if (!P.antisymmetric())
      throw std::invalid_argument("lattice order must be antisymmetric");
    FiniteLattice L;
    L.order = P;
    int n = P.n;
    L.meet.assign(static_cast<std::size_t>(n), std::vector<int>(n, -1));
    L.join.assign(static_cast<std::size_t>(n), std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        int glb = -1, lub = -1;
        for (int z = 0; z < n; ++z) {
          if (P.le(z, a) && P.le(z, b) && (glb == -1 || P.le(glb, z))) glb = z;
          if (P.le(a, z) && P.le(b, z) && (lub == -1 || P.le(z, lub))) lub = z;
        }
        // Verify the candidates really dominate every bound.
        for (int z = 0; z < n; ++z) {
          if (P.le(z, a) && P.le(z, b) && (glb == -1 || !P.le(z, glb)))
            throw std::invalid_argument("order has no meet for some pair");
          if (P.le(a, z) && P.le(b, z) && (lub == -1 || !P.le(lub, z)))
            throw std::invalid_argument("order has no join for some pair");
        }
        L.meet[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = glb;
        L.join[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = lub;
      }
    for (int z = 0; z < n; ++z) {
      bool isBot = true, isTop = true;
      for (int w = 0; w < n; ++w) {
        isBot = isBot && P.le(z, w);
        isTop = isTop && P.le(w, z);
      }
      if (isBot) L.bottom = z;
      if (isTop) L.top = z;
    }
    if (L.bottom < 0 || L.top < 0)
      throw std::invalid_argument("lattice must be bounded");
    return L;
  }

  /// True iff meet/join are genuine infima/suprema for the order.
  bool validate(std::string* why = nullptr) const {
    const FinitePreorder& P = order;
    auto fail = [&](const std::string& m) {
      if (why) *why = m;
      return false;
    };
    for (int a = 0; a < P.n; ++a)
      for (int b = 0; b < P.n; ++b) {
        int m = meet[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        int j = join[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        if (!P.le(m, a) || !P.le(m, b)) return fail("meet not a lower bound");
        if (!P.le(a, j) || !P.le(b, j)) return fail("join not an upper bound");
        for (int z = 0; z < P.n; ++z) {
          if (P.le(z, a) && P.le(z, b) && !P.le(z, m))
            return fail("meet not greatest");
          if (P.le(a, z) && P.le(b, z) && !P.le(j, z))
            return fail("join not least");
        }
      }
    for (int w = 0; w < P.n; ++w)
      if (!P.le(bottom, w) || !P.le(w, top)) return fail("bounds wrong");
    return true;
  }

  bool distributive() const {
    for (int a = 0; a < n(); ++a)
      for (int b = 0; b < n(); ++b)
        for (int c = 0; c < n(); ++c) {
          std::size_t ua = static_cast<std::size_t>(a),
                      ub = static_cast<std::size_t>(b),
                      uc = static_cast<std::size_t>(c);
          if (meet[ua][static_cast<std::size_t>(join[ub][uc])] !=
              join[static_cast<std::size_t>(meet[ua][ub])]
                  [static_cast<std::size_t>(meet[ua][uc])])
            return false;
        }
    return true;
  }
};

/// Quotient of a lattice by the equivalence of a closure operator
/// (x ==_c y iff x <=_c y and y <=_c x); meet_c goes through c, the join
/// can stay plain.
inline FiniteLattice quotientLattice(const FiniteLattice& L,
                                     const ElementMap& c) {
  ClosureReport r = checkClosureOperator(L.order, c);
  if (!r.ok)
    throw std::invalid_argument("quotientLattice: not a closure operator: " +
                                r.message);
  const FinitePreorder& P = L.order;
  FinitePreorder Q = inducedPreorder(P, c);

  std::vector<int> cls(static_cast<std::size_t>(P.n), -1);
  std::vector<int> reps;
  for (int x = 0; x < P.n; ++x) {
    for (std::size_t k = 0; k < reps.size(); ++k)
      if (Q.equiv(x, reps[k])) {
        cls[static_cast<std::size_t>(x)] = static_cast<int>(k);
        break;
      }
    if (cls[static_cast<std::size_t>(x)] < 0) {
      cls[static_cast<std::size_t>(x)] = static_cast<int>(reps.size());
      reps.push_back(x);
    }
  }
  int m = static_cast<int>(reps.size());
  std::vector<std::vector<bool>> leq(static_cast<std::size_t>(m),
                                     std::vector<bool>(m, false));
  std::vector<std::string> names;
  for (int i = 0; i < m; ++i) names.push_back("[" + P.names[reps[i]] + "]");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) leq[i][j] = Q.le(reps[i], reps[j]);

  FiniteLattice R;
  R.order = FinitePreorder(std::move(leq), std::move(names));
  R.meet.assign(static_cast<std::size_t>(m), std::vector<int>(m, -1));
  R.join.assign(static_cast<std::size_t>(m), std::vector<int>(m, -1));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      std::size_t ci = static_cast<std::size_t>(c[reps[i]]);
      std::size_t cj = static_cast<std::size_t>(c[reps[j]]);
      R.meet[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          cls[static_cast<std::size_t>(L.meet[ci][cj])];
      R.join[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          cls[static_cast<std::size_t>(
              L.join[static_cast<std::size_t>(reps[i])]
                    [static_cast<std::size_t>(reps[j])])];
    }
  for (int i = 0; i < m; ++i) {
    bool isBot = true, isTop = true;
    for (int j = 0; j < m; ++j) {
      isBot = isBot && R.order.le(i, j);
      isTop = isTop && R.order.le(j, i);
    }
    if (isBot) R.bottom = i;
    if (isTop) R.top = i;
  }
  std::string why;
  if (!R.validate(&why))
    throw std::logic_error("quotient is not a lattice: " + why);
  return R;
}

// ---------------------------------------------------------------------------
// Preservation

struct PreservationReport {
  bool preserved = true;     // c(x box y) <= c(x) box c(y)
  bool coPreserved = true;   // c(x) box c(y) <= c(x box y)
};

inline PreservationReport checkPreservation(const FinitePreorder& P,
                                            const ElementMap& c,
                                            const Table& box) {
  PreservationReport r;
  for (int x = 0; x < P.n; ++x)
    for (int y = 0; y < P.n; ++y) {
      std::size_t ux = static_cast<std::size_t>(x),
                  uy = static_cast<std::size_t>(y);
      int cxy = c[static_cast<std::size_t>(box[ux][uy])];
      int cxcy = box[static_cast<std::size_t>(c[ux])]
                    [static_cast<std::size_t>(c[uy])];
      if (!P.le(cxy, cxcy)) r.preserved = false;
      if (!P.le(cxcy, cxy)) r.coPreserved = false;
    }
  return r;
}

/// c is preserved by c' when c(c'(x)) <= c'(c(x)) for all x.
inline bool preservedByOperator(const FinitePreorder& P, const ElementMap& c,
                                const ElementMap& cPrime) {
  for (int x = 0; x < P.n; ++x)
    if (!P.le(c[static_cast<std::size_t>(cPrime[static_cast<std::size_t>(x)])],
              cPrime[static_cast<std::size_t>(c[static_cast<std::size_t>(x)])]))
      return false;
  return true;
}

}  // namespace wb::lab
