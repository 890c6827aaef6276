#pragma once

#include <cassert>

#include "wb/stream/spaces.hpp"

namespace wb::streams {

/// Monotone map from finite input prefixes to finite output prefixes: the
/// desk-scale stand-in for a (possibly partial) computable function on Baire
/// space. A transformer "stalls" on an input when its output stays finite as
/// the input prefix grows.
class PrefixTransformer {
 public:
  using Fn = std::function<Word(const Word&)>;

  PrefixTransformer(std::string name, Fn f)
      : name_(std::move(name)), f_(std::move(f)) {}

  const std::string& name() const { return name_; }

  Word apply(const Word& prefix) const { return f_(prefix); }

  /// Runs the transformer on an ultimately periodic input and reconstructs
  /// the output as a UPName, detecting the output period by sampling and
  /// verifying against a doubled sample. Throws when no period emerges
  /// within the bounds (e.g. for genuinely stalling transformers).
  UPName applyUP(const UPName& p, std::size_t rounds = 8,
                 std::size_t maxTries = 4) const {
    std::size_t base = p.reprLength();
    for (std::size_t attempt = 0; attempt < maxTries; ++attempt) {
      std::size_t n1 = base * rounds + 8;
      Word out1 = apply(p.unroll(n1));
      Word out2 = apply(p.unroll(2 * n1));
      if (out1.size() < 4 || out2.size() <= out1.size()) {
        rounds *= 2;
        continue;
      }
      if (auto up = detect(out1)) {
        bool ok = true;
        for (std::size_t i = 0; i < out2.size() && ok; ++i)
          ok = up->at(i) == out2[i];
        if (ok) return *up;
      }
      rounds *= 2;
    }
    throw std::runtime_error("applyUP(" + name_ +
                             "): output not detectably periodic");
  }

  /// Monotonicity probe: longer prefixes never retract emitted output.
  bool monotoneOn(const UPName& p, std::size_t upTo = 48) const {
    Word prev;
    for (std::size_t n = 0; n <= upTo; ++n) {
      Word cur = apply(p.unroll(n));
      if (cur.size() < prev.size()) return false;
      for (std::size_t i = 0; i < prev.size(); ++i)
        if (cur[i] != prev[i]) return false;
      prev = std::move(cur);
    }
    return true;
  }

 private:
  static std::optional<UPName> detect(const Word& w) {
    for (std::size_t per = 1; per <= w.size() / 3; ++per)
      for (std::size_t pre = 0; pre + 3 * per <= w.size(); ++pre) {
        bool ok = true;
        for (std::size_t i = pre; i + per < w.size() && ok; ++i)
          ok = w[i] == w[i + per];
        if (ok)
          return UPName(Word(w.begin(), w.begin() + static_cast<long>(pre)),
                        Word(w.begin() + static_cast<long>(pre),
                             w.begin() + static_cast<long>(pre + per)));
      }
    return std::nullopt;
  }

  std::string name_;
  Fn f_;
};

/// One output symbol per input symbol, stateless.
inline PrefixTransformer symbolwise(std::string name,
                                    std::function<Sym(Sym)> g) {
  return PrefixTransformer(std::move(name), [g](const Word& in) {
    Word out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = g(in[i]);
    return out;
  });
}

inline PrefixTransformer identityT() {
  return PrefixTransformer("id", [](const Word& in) { return in; });
}

/// p |-> p+1, the canonical section of the precompletion.
inline PrefixTransformer shiftPlusT() {
  return symbolwise("plus1", [](Sym s) { return s + 1; });
}

/// A transformer that emits g(sym) per symbol until `stallTrigger` has been
/// read `stallCount` times, then falls silent forever (a controlled model of
/// a machine that stops producing output).
inline PrefixTransformer stallingSymbolwise(std::string name,
                                            std::function<Sym(Sym)> g,
                                            Sym stallTrigger, int stallCount) {
  return PrefixTransformer(std::move(name), [g, stallTrigger,
                                             stallCount](const Word& in) {
    Word out;
    int seen = 0;
    for (Sym s : in) {
      if (s == stallTrigger && ++seen >= stallCount) break;
      out.push_back(g(s));
    }
    return out;
  });
}

/// The never-halting totalization: interleaves keep-alive zeros with the
/// original output shifted by one, so that the precompletion sees exactly
/// the original output: shiftMinus(G(p)) = F(p) wherever F produces output.
inline PrefixTransformer totalize(const PrefixTransformer& F) {
  return PrefixTransformer("totalize(" + F.name() + ")", [F](const Word& in) {
    Word out;
    std::size_t emitted = 0;
    for (std::size_t i = 1; i <= in.size(); ++i) {
      Word wi = F.apply(Word(in.begin(), in.begin() + static_cast<long>(i)));
      for (std::size_t j = emitted; j < wi.size(); ++j)
        out.push_back(wi[j] + 1);
      if (wi.size() > emitted) emitted = wi.size();
      out.push_back(0);  // keep-alive tick
    }
    return out;
  });
}

/// Symbols of F's output on the (whole) input stream of p, up to `n` input
/// symbols; used to observe stalling behaviour directly.
inline Word runOn(const PrefixTransformer& F, const UPName& p, std::size_t n) {
  return F.apply(p.unroll(n));
}

}  // namespace wb::streams
