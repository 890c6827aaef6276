#pragma once

#include "wb/closure.hpp"
#include "wb/seed_text.hpp"

namespace wb {

/// The shipped seed knowledge base (data/seed.kb, embedded at build time).
inline KnowledgeBase seedKB() {
  return loadKB(detail::seed_kb_text(), Fact::Src::Seed);
}

inline const char* seedKBText() { return detail::seed_kb_text(); }

}  // namespace wb
