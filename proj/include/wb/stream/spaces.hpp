#pragma once

#include "wb/stream/upname.hpp"

namespace wb::streams {

struct Bottom {
  bool operator==(const Bottom&) const { return true; }
};

/// A decoded point: bottom, a natural number, or a Baire point.
using Point = std::variant<Bottom, Sym, UPName>;

inline bool isBottom(const Point& p) {
  return std::holds_alternative<Bottom>(p);
}

inline std::string pointStr(const Point& p) {
  if (isBottom(p)) return "_|_";
  if (auto* n = std::get_if<Sym>(&p)) return std::to_string(*n);
  return std::get<UPName>(p).str();
}

inline bool samePoint(const Point& a, const Point& b) {
  if (a.index() != b.index()) return false;
  if (isBottom(a)) return true;
  if (auto* n = std::get_if<Sym>(&a)) return *n == std::get<Sym>(b);
  return std::get<UPName>(a) == std::get<UPName>(b);
}

/// Represented space at desk scale: a name and a partial decoder on UPNames.
/// Decoder surjectivity is declared, not checked.
struct SpaceDescriptor {
  std::string name;
  std::function<std::optional<Point>(const UPName&)> decoder;
  bool precomplete = false;
};

inline SpaceDescriptor baireSpace() {
  return {"N^N", [](const UPName& p) -> std::optional<Point> { return Point(p); },
          false};
}

/// delta_N(p) = p(0).
inline SpaceDescriptor natSpace() {
  return {"N",
          [](const UPName& p) -> std::optional<Point> { return Point(p.at(0)); },
          false};
}

/// Binary sequences; defined only on {0,1}-valued names.
inline SpaceDescriptor cantorSpace() {
  return {"2^N",
          [](const UPName& p) -> std::optional<Point> {
            if (p.maxSymbol() > 1) return std::nullopt;
            return Point(p);
          },
          false};
}

/// Decoding through the completion X-bar: read the name through the
/// "subtract one, drop empties" transform; names whose transform is finite
/// (or falls outside the decoder) denote bottom. Total on all UPNames.
inline Point decodeCompletion(const SpaceDescriptor& space, const UPName& p) {
  ShiftResult sm = shiftMinus(p);
  if (isFinite(sm)) return Bottom{};
  const UPName& q = std::get<UPName>(sm);
  if (auto v = space.decoder(q)) return *v;
  return Bottom{};
}

}  // namespace wb::streams
