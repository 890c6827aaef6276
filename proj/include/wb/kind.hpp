#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wb {

/// The six reducibility notions handled by the workbench.
///
/// SW/W are the strong and ordinary (partial) reducibilities, STW/TW their
/// total counterparts generated by completion, and PW/PTW the parallelized
/// variants generated by parallelization (of the completion, for PTW).
enum class Kind { SW, W, STW, TW, PW, PTW };

inline constexpr std::array<Kind, 6> allKinds{Kind::SW,  Kind::W,  Kind::STW,
                                              Kind::TW,  Kind::PW, Kind::PTW};

inline std::string_view kindName(Kind k) {
  switch (k) {
    case Kind::SW: return "SW";
    case Kind::W: return "W";
    case Kind::STW: return "STW";
    case Kind::TW: return "TW";
    case Kind::PW: return "PW";
    case Kind::PTW: return "PTW";
  }
  return "?";
}

inline std::optional<Kind> parseKind(std::string_view s) {
  for (Kind k : allKinds)
    if (kindName(k) == s) return k;
  return std::nullopt;
}

inline Kind parseKindOrThrow(std::string_view s) {
  if (auto k = parseKind(s)) return *k;
  throw std::invalid_argument("unknown reducibility kind: " + std::string(s));
}

namespace detail {

// Reflexive-transitive closure of the edge list
//   SW->W, W->TW, SW->STW, STW->TW, W->PW, TW->PTW, PW->PTW.
inline const std::array<std::array<bool, 6>, 6>& kindImplicationTable() {
  static const auto table = [] {
    std::array<std::array<bool, 6>, 6> t{};
    auto idx = [](Kind k) { return static_cast<int>(k); };
    for (int i = 0; i < 6; ++i) t[i][i] = true;
    const std::pair<Kind, Kind> edges[] = {
        {Kind::SW, Kind::W},   {Kind::W, Kind::TW},  {Kind::SW, Kind::STW},
        {Kind::STW, Kind::TW}, {Kind::W, Kind::PW},  {Kind::TW, Kind::PTW},
        {Kind::PW, Kind::PTW}};
    for (auto [a, b] : edges) t[idx(a)][idx(b)] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
          if (t[i][j])
            for (int k = 0; k < 6; ++k)
              if (t[j][k] && !t[i][k]) t[i][k] = changed = true;
    }
    return t;
  }();
  return table;
}

}  // namespace detail

/// True iff a fact holding at kind k1 entails the same fact at kind k2.
inline bool kindImplies(Kind k1, Kind k2) {
  return detail::kindImplicationTable()[static_cast<int>(k1)]
                                       [static_cast<int>(k2)];
}

}  // namespace wb
