#pragma once

#include <set>

#include "wb/stream/transform.hpp"

namespace wb::streams {

// ---------------------------------------------------------------------------
// Concrete problems (decidable on ultimately periodic names)

/// LPO(p) = 0 iff some entry of p is 0.
inline Sym lpo(const UPName& p) {
  for (Sym s : p.pre())
    if (s == 0) return 0;
  for (Sym s : p.per())
    if (s == 0) return 0;
  return 1;
}

/// SORT(p) = 0^k 1^omega when p has exactly k zeros, 0^omega otherwise.
inline UPName sortProblem(const UPName& p) {
  if (p.maxSymbol() > 1)
    throw std::invalid_argument("sortProblem: input must be binary");
  for (Sym s : p.per())
    if (s == 0) return UPName::constant(0);  // infinitely many zeros
  std::size_t zeros = 0;
  for (Sym s : p.pre())
    if (s == 0) ++zeros;
  return UPName(Word(zeros, 0), {1});
}

/// Finite or cofinite set of naturals (ACC solution sets).
struct NatSet {
  bool cofinite = false;
  std::set<Sym> data;  // elements if finite, excluded elements if cofinite

  bool contains(Sym n) const {
    return cofinite ? !data.count(n) : data.count(n) > 0;
  }
  bool empty() const { return !cofinite && data.empty(); }

  /// A finite sample of members: all finite elements, or, for cofinite sets,
  /// representatives around the excluded region.
  std::vector<Sym> representatives(Sym bound = 4) const {
    std::vector<Sym> out;
    if (!cofinite) {
      out.assign(data.begin(), data.end());
      return out;
    }
    Sym hi = bound;
    for (Sym e : data) hi = std::max(hi, e + 2);
    for (Sym n = 0; n <= hi; ++n)
      if (!data.count(n)) out.push_back(n);
    return out;
  }
};

/// ACC_X(p) = { n in X : n+1 not in range(p) }, with
/// dom = { p : range(p) included in {0, n+1} for some n in X }.
/// X is a finite bound (X = {0..X-1}) or nullopt for X = N.
inline NatSet accX(std::optional<Sym> X, const UPName& p) {
  if (X && *X < 2) throw std::invalid_argument("accX: X >= 2 required");
  std::set<Sym> range(p.pre().begin(), p.pre().end());
  range.insert(p.per().begin(), p.per().end());
  range.erase(0);
  if (range.size() > 1)
    throw std::invalid_argument("accX: input outside dom (two nonzero values)");
  std::optional<Sym> named;
  if (!range.empty()) {
    Sym v = *range.begin();
    Sym n = v - 1;
    if (X && n >= *X)
      throw std::invalid_argument("accX: named value outside X");
    named = n;
  }
  NatSet out;
  if (X) {
    for (Sym n = 0; n < *X; ++n)
      if (!named || n != *named) out.data.insert(n);
  } else {
    out.cofinite = true;
    if (named) out.data.insert(*named);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Problem semantics packaged for the reduction checker

struct ProblemSemantics {
  std::string name;
  SpaceDescriptor inSpace, outSpace;
  /// Is the (decoded, non-bottom) point in the domain? nullopt = membership
  /// not determined by the name's preamble+period (sample gets rejected).
  std::function<std::optional<bool>(const Point&)> inDom;
  /// Is `output` a correct solution for the input point?
  std::function<bool(const Point& input, const Point& output)> accepts;
  /// Realizer outputs on a domain point that are determined by the UPName
  /// structure: names of every solution (sampled for cofinite solution sets).
  std::function<std::vector<UPName>(const Point& input)> realizerOutputs;
};

namespace detail {

/// A couple of name variants for a natural-number output (delta_N(p) = p(0)).
inline std::vector<UPName> natNames(Sym v) {
  std::vector<UPName> out;
  out.push_back(UPName::constant(v));
  out.push_back(UPName({v}, {v + 1}));
  return out;
}

}  // namespace detail

inline ProblemSemantics lpoSemantics() {
  ProblemSemantics s;
  s.name = "LPO";
  s.inSpace = baireSpace();
  s.outSpace = natSpace();
  s.inDom = [](const Point&) { return true; };
  s.accepts = [](const Point& x, const Point& y) {
    auto* v = std::get_if<Sym>(&y);
    return v && *v == lpo(std::get<UPName>(x));
  };
  s.realizerOutputs = [](const Point& x) {
    return detail::natNames(lpo(std::get<UPName>(x)));
  };
  return s;
}

inline ProblemSemantics sortSemantics() {
  ProblemSemantics s;
  s.name = "SORT";
  s.inSpace = cantorSpace();
  s.outSpace = cantorSpace();
  s.inDom = [](const Point&) { return true; };  // total on 2^N
  s.accepts = [](const Point& x, const Point& y) {
    auto* q = std::get_if<UPName>(&y);
    return q && *q == sortProblem(std::get<UPName>(x));
  };
  s.realizerOutputs = [](const Point& x) {
    return std::vector<UPName>{sortProblem(std::get<UPName>(x))};
  };
  return s;
}

inline ProblemSemantics accSemantics(std::optional<Sym> X) {
  ProblemSemantics s;
  s.name = X ? "ACC_" + std::to_string(*X) : "ACC_N";
  s.inSpace = baireSpace();
  s.outSpace = natSpace();
  s.inDom = [X](const Point& x) -> std::optional<bool> {
    try {
      accX(X, std::get<UPName>(x));
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  };
  s.accepts = [X](const Point& x, const Point& y) {
    auto* v = std::get_if<Sym>(&y);
    return v && accX(X, std::get<UPName>(x)).contains(*v);
  };
  s.realizerOutputs = [X](const Point& x) {
    const UPName& q = std::get<UPName>(x);
    std::vector<UPName> out;
    for (Sym n : accX(X, q).representatives(q.maxSymbol() + 2))
      for (const UPName& nm : detail::natNames(n)) out.push_back(nm);
    return out;
  };
  return s;
}

// ---------------------------------------------------------------------------
// Strong-completeness witnesses (the explicit H,K from the paper's proofs)

struct WitnessPair {
  PrefixTransformer H, K;
};

/// K for LPO and SORT: K(p)(n) = 0 iff p(n) = 1, else 1. H = +1.
/// K for ACC_X: K(p)(n) = k+1 when p(n) = k+2 is the first entry above 1
/// (and k lands in X), else 0. H = +1.
inline WitnessPair completenessWitness(const std::string& problem) {
  if (problem == "LPO" || problem == "SORT")
    return {shiftPlusT(),
            symbolwise("K_" + problem,
                       [](Sym s) -> Sym { return s == 1 ? 0 : 1; })};
  if (problem == "ACC_2" || problem == "ACC_N") {
    std::optional<Sym> X =
        problem == "ACC_2" ? std::optional<Sym>(2) : std::nullopt;
    PrefixTransformer K("K_" + problem, [X](const Word& in) {
      Word out;
      std::optional<std::size_t> firstBig;
      for (std::size_t i = 0; i < in.size(); ++i)
        if (in[i] > 1) {
          firstBig = i;
          break;
        }
      for (std::size_t i = 0; i < in.size(); ++i) {
        Sym v = 0;
        if (firstBig && i == *firstBig) {
          Sym k = in[i] - 2;
          if (!X || k < *X) v = k + 1;
        }
        out.push_back(v);
      }
      return out;
    });
    return {shiftPlusT(), std::move(K)};
  }
  throw std::invalid_argument("no completeness witness for '" + problem + "'");
}

/// Negative control: drops the +1 on the output side, so decoding shifts.
inline WitnessPair corruptedWitness(const std::string& problem) {
  WitnessPair w = completenessWitness(problem);
  return {identityT(), std::move(w.K)};
}

// ---------------------------------------------------------------------------
// Reduction checking: comp(g) <=SW g via (H, K), i.e. H o G o K realizes the
// completion for every total realizer G of g.

struct ReductionFailure {
  UPName sample;
  std::string stage;
  std::string detail;
};

struct ReductionReport {
  std::size_t passed = 0;
  std::size_t rejected = 0;  // undecidable samples
  std::vector<ReductionFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks H(G(K(p))) against fSem for every gSem-realizer output determined
/// by the sample's structure. fSem is typically the completion of gSem; its
/// input decoding must be total (completion names always decode).
inline ReductionReport checkReduction(
    const ProblemSemantics& gSem,
    const std::function<Point(const UPName&)>& fDecode,
    const std::function<bool(const Point&, const Point&)>& fAccepts,
    const PrefixTransformer& H, const PrefixTransformer& K,
    const std::vector<UPName>& samples) {
  ReductionReport rep;
  for (const UPName& p : samples) {
    Point x = fDecode(p);
    UPName r = K.applyUP(p);
    std::optional<Point> gin = gSem.inSpace.decoder(r);
    std::optional<bool> inDom =
        gin ? gSem.inDom(*gin) : std::optional<bool>(false);
    if (!inDom.has_value()) {
      ++rep.rejected;
      continue;
    }
    bool defined = !isBottom(x);
    if (!*inDom) {
      if (defined) {
        rep.failures.push_back(
            {p, "K", "K maps a defined input outside dom(g)"});
      } else {
        ++rep.passed;  // completion maps bottom to everything
      }
      continue;
    }
    bool sampleOk = true;
    for (const UPName& o : gSem.realizerOutputs(*gin)) {
      UPName y = H.applyUP(o);
      Point yd = decodeCompletion(gSem.outSpace, y);
      if (!defined) continue;  // anything solves bottom
      if (isBottom(yd)) {
        rep.failures.push_back({p, "H", "output name decodes to bottom"});
        sampleOk = false;
        break;
      }
      if (!fAccepts(x, yd)) {
        rep.failures.push_back(
            {p, "verify", "decoded output " + pointStr(yd) +
                              " does not solve " + pointStr(x)});
        sampleOk = false;
        break;
      }
    }
    if (sampleOk) ++rep.passed;
  }
  return rep;
}

/// Convenience wrapper for the completion claims comp(g) <=SW g: the f side
/// is the completion of gSem (total input decoding through shiftMinus).
inline ReductionReport checkCompletionReduction(const ProblemSemantics& gSem,
                                                const PrefixTransformer& H,
                                                const PrefixTransformer& K,
                                                const std::vector<UPName>& samples) {
  auto fDecode = [&gSem](const UPName& p) -> Point {
    Point q = decodeCompletion(gSem.inSpace, p);
    if (isBottom(q)) return q;
    // outside dom(g) the completion is also fully unconstrained
    std::optional<bool> d = gSem.inDom(q);
    if (d.has_value() && !*d) return Bottom{};
    return q;
  };
  auto fAccepts = [&gSem](const Point& x, const Point& y) {
    return gSem.accepts(x, y);
  };
  return checkReduction(gSem, fDecode, fAccepts, H, K, samples);
}

/// All UPNames with preamble length <= maxPre, period length <= maxPer and
/// symbols < symbolCount (exhaustive small-sample sets).
inline std::vector<UPName> allUPNames(std::size_t maxPre, std::size_t maxPer,
                                      Sym symbolCount) {
  std::vector<UPName> out;
  std::set<UPName> seen;
  std::function<void(Word&, std::size_t, const std::function<void(const Word&)>&)>
      words = [&](Word& w, std::size_t len,
                  const std::function<void(const Word&)>& f) {
        if (w.size() == len) {
          f(w);
          return;
        }
        for (Sym s = 0; s < symbolCount; ++s) {
          w.push_back(s);
          words(w, len, f);
          w.pop_back();
        }
      };
  for (std::size_t preLen = 0; preLen <= maxPre; ++preLen)
    for (std::size_t perLen = 1; perLen <= maxPer; ++perLen) {
      Word pre;
      words(pre, preLen, [&](const Word& preW) {
        Word per;
        words(per, perLen, [&](const Word& perW) {
          UPName u(preW, perW);
          if (seen.insert(u).second) out.push_back(u);
        });
      });
    }
  return out;
}

}  // namespace wb::streams
