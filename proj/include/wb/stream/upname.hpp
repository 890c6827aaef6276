#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace wb::streams {

using Sym = std::uint64_t;
using Word = std::vector<Sym>;

/// Ultimately periodic Baire-space name: preamble . period^omega.
/// Kept in minimal normal form (shortest period, then shortest preamble), so
/// value equality is semantic equality of the denoted sequences.
class UPName {
 public:
  UPName(Word preamble, Word period)
      : pre_(std::move(preamble)), per_(std::move(period)) {
    if (per_.empty()) throw std::invalid_argument("UPName: empty period");
    normalize();
  }

  static UPName constant(Sym v) { return UPName({}, {v}); }

  const Word& pre() const { return pre_; }
  const Word& per() const { return per_; }

  Sym at(std::size_t i) const {
    if (i < pre_.size()) return pre_[i];
    return per_[(i - pre_.size()) % per_.size()];
  }

  Word unroll(std::size_t n) const {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
    return w;
  }

  std::size_t reprLength() const { return pre_.size() + per_.size(); }

  Sym maxSymbol() const {
    Sym m = 0;
    for (Sym s : pre_) m = std::max(m, s);
    for (Sym s : per_) m = std::max(m, s);
    return m;
  }

  bool operator==(const UPName& o) const {
    return pre_ == o.pre_ && per_ == o.per_;
  }
  bool operator!=(const UPName& o) const { return !(*this == o); }
  bool operator<(const UPName& o) const {  // for ordered containers
    if (pre_ != o.pre_) return pre_ < o.pre_;
    return per_ < o.per_;
  }

  /// Text form "a,b,c;(d,e)"; empty preamble prints as "(d,e)".
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < pre_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(pre_[i]);
    }
    if (!pre_.empty()) s += ';';
    s += '(';
    for (std::size_t i = 0; i < per_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(per_[i]);
    }
    s += ')';
    return s;
  }

  static UPName parse(std::string_view text) {
    Word pre, per;
    std::size_t i = 0;
    auto skipWs = [&] {
      while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    auto number = [&]() -> Sym {
      skipWs();
      if (i >= text.size() || !isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("UPName: expected number at position " +
                                    std::to_string(i));
      Sym v = 0;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
        v = v * 10 + static_cast<Sym>(text[i++] - '0');
      return v;
    };
    skipWs();
    if (i < text.size() && text[i] != '(' && text[i] != ';') {
      pre.push_back(number());
      skipWs();
      while (i < text.size() && text[i] == ',') {
        ++i;
        pre.push_back(number());
        skipWs();
      }
    }
    skipWs();
    if (i < text.size() && text[i] == ';') ++i;
    skipWs();
    if (i >= text.size() || text[i] != '(')
      throw std::invalid_argument("UPName: expected '(' for the period");
    ++i;
    per.push_back(number());
    skipWs();
    while (i < text.size() && text[i] == ',') {
      ++i;
      per.push_back(number());
      skipWs();
    }
    skipWs();
    if (i >= text.size() || text[i] != ')')
      throw std::invalid_argument("UPName: expected ')'");
    ++i;
    skipWs();
    if (i != text.size())
      throw std::invalid_argument("UPName: trailing input");
    return UPName(std::move(pre), std::move(per));
  }

 private:
  void normalize() {
    // Shortest period: the minimal divisor d of |per| with per = w^k.
    for (std::size_t d = 1; d <= per_.size() / 2; ++d) {
      if (per_.size() % d) continue;
      bool repeats = true;
      for (std::size_t i = d; i < per_.size() && repeats; ++i)
        repeats = per_[i] == per_[i - d];
      if (repeats) {
        per_.resize(d);
        break;
      }
    }
    // Shortest preamble: absorb a matching tail into a rotated period.
    while (!pre_.empty() && pre_.back() == per_.back()) {
      pre_.pop_back();
      per_.insert(per_.begin(), per_.back());
      per_.pop_back();
    }
  }

  Word pre_, per_;
};

struct FiniteWord {
  Word symbols;
  bool operator==(const FiniteWord& o) const { return symbols == o.symbols; }
};

using ShiftResult = std::variant<UPName, FiniteWord>;

inline bool isFinite(const ShiftResult& r) {
  return std::holds_alternative<FiniteWord>(r);
}

/// Builds a UPName from a sampler known to be ultimately periodic within the
/// given bounds (used by the pairing operations, whose output periodicity is
/// known structurally).
inline UPName fromSampler(const std::function<Sym(std::size_t)>& f,
                          std::size_t preBound, std::size_t perBound) {
  Word pre(preBound), per(perBound);
  for (std::size_t i = 0; i < preBound; ++i) pre[i] = f(i);
  for (std::size_t i = 0; i < perBound; ++i) per[i] = f(preBound + i);
  return UPName(std::move(pre), std::move(per));
}

// ---------------------------------------------------------------------------
// Pairing

/// <p,q>(2n) = p(n), <p,q>(2n+1) = q(n).
inline UPName interleave(const UPName& p, const UPName& q) {
  std::size_t preL = 2 * std::max(p.pre().size(), q.pre().size());
  std::size_t perL = 2 * std::lcm(std::max<std::size_t>(1, p.per().size()),
                                  std::max<std::size_t>(1, q.per().size()));
  return fromSampler(
      [&](std::size_t i) { return i % 2 == 0 ? p.at(i / 2) : q.at(i / 2); },
      preL, perL);
}

inline UPName projEven(const UPName& p) {
  return fromSampler([&](std::size_t i) { return p.at(2 * i); },
                     p.pre().size() + 1, p.per().size());
}

inline UPName projOdd(const UPName& p) {
  return fromSampler([&](std::size_t i) { return p.at(2 * i + 1); },
                     p.pre().size() + 1, p.per().size());
}

/// Standard Cantor pairing <n,k> = (n+k+1)(n+k)/2 + k.
inline Sym cantorPair(Sym n, Sym k) { return (n + k + 1) * (n + k) / 2 + k; }

inline std::pair<Sym, Sym> cantorUnpair(Sym m) {
  // w = index of the diagonal: largest w with w(w+1)/2 <= m.
  Sym w = static_cast<Sym>((std::sqrt(8.0 * static_cast<double>(m) + 1.0) - 1.0) / 2.0);
  while ((w + 1) * (w + 2) / 2 <= m) ++w;
  while (w * (w + 1) / 2 > m) --w;
  Sym k = m - w * (w + 1) / 2;
  return {w - k, k};
}

// ---------------------------------------------------------------------------
// Countable tupling <p_0,p_1,...><n,k> = p_n(k)
//
// With finitely many distinguished components over a default component the
// result is NOT ultimately periodic in general (the distinguished columns sit
// at quadratically spaced pair codes), so the tuple is exposed as a sampled
// view; the projections recover exact UPNames.

class CountableTuple {
 public:
  CountableTuple(std::map<Sym, UPName> components, UPName dflt)
      : components_(std::move(components)), default_(std::move(dflt)) {}

  Sym at(Sym m) const {
    auto [n, k] = cantorUnpair(m);
    return component(n).at(k);
  }

  const UPName& component(Sym n) const {
    auto it = components_.find(n);
    return it == components_.end() ? default_ : it->second;
  }

  /// Tries to realize the tuple as a UPName by sampling; succeeds exactly
  /// when the sampled stream verifies as periodic within the bounds.
  std::optional<UPName> toUPName(std::size_t preBound = 32,
                                 std::size_t perBound = 32,
                                 std::size_t verify = 512) const {
    for (std::size_t per = 1; per <= perBound; ++per)
      for (std::size_t pre = 0; pre <= preBound; ++pre) {
        bool ok = true;
        for (std::size_t i = pre; i + per < verify && ok; ++i)
          ok = at(i) == at(i + per);
        if (ok) {
          Word preW(pre), perW(per);
          for (std::size_t i = 0; i < pre; ++i) preW[i] = at(i);
          for (std::size_t i = 0; i < per; ++i) perW[i] = at(pre + i);
          return UPName(std::move(preW), std::move(perW));
        }
      }
    return std::nullopt;
  }

 private:
  std::map<Sym, UPName> components_;
  UPName default_;
};

inline CountableTuple tupleCountable(std::map<Sym, UPName> components,
                                     UPName dflt) {
  return CountableTuple(std::move(components), std::move(dflt));
}

inline UPName projI(const CountableTuple& t, Sym i) { return t.component(i); }

// ---------------------------------------------------------------------------
// The +-1 shifts of the precompletion machinery

inline UPName shiftPlus(const UPName& p) {
  Word pre = p.pre(), per = p.per();
  for (Sym& s : pre) ++s;
  for (Sym& s : per) ++s;
  return UPName(std::move(pre), std::move(per));
}

/// p-1: concatenation of p(i)-1 with -1 = epsilon (the entry is dropped).
/// A FiniteWord results when only finitely many entries are nonzero; that is
/// the bottom branch of the completion, not an error.
inline ShiftResult shiftMinus(const UPName& p) {
  Word pre;
  for (Sym s : p.pre())
    if (s > 0) pre.push_back(s - 1);
  Word per;
  for (Sym s : p.per())
    if (s > 0) per.push_back(s - 1);
  if (per.empty()) return FiniteWord{std::move(pre)};
  return UPName(std::move(pre), std::move(per));
}

}  // namespace wb::streams
