#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace wb {

class Term;
using TermPtr = std::shared_ptr<const Term>;

enum class UnOp { comp, par, fpar, neg };
enum class BinOp { prod, coprod, meet, boxsum, sum, star, cimp, mimp };
enum class MedOp { otimes, oplus, mimpM };

inline std::string_view opName(UnOp o) {
  switch (o) {
    case UnOp::comp: return "comp";
    case UnOp::par: return "par";
    case UnOp::fpar: return "fpar";
    case UnOp::neg: return "neg";
  }
  return "?";
}

inline std::string_view opName(BinOp o) {
  switch (o) {
    case BinOp::prod: return "prod";
    case BinOp::coprod: return "coprod";
    case BinOp::meet: return "meet";
    case BinOp::boxsum: return "boxsum";
    case BinOp::sum: return "sum";
    case BinOp::star: return "star";
    case BinOp::cimp: return "cimp";
    case BinOp::mimp: return "mimp";
  }
  return "?";
}

inline std::string_view opName(MedOp o) {
  switch (o) {
    case MedOp::otimes: return "otimes";
    case MedOp::oplus: return "oplus";
    case MedOp::mimpM: return "mimpM";
  }
  return "?";
}

/// Degree-expression AST. Immutable and shareable; all nodes are built through
/// the static factories below, which also precompute a structural hash.
class Term {
 public:
  struct Const0 {};
  struct Const1 {};
  struct ConstInf {};
  struct Atom {
    std::string name;
  };
  struct Unary {
    UnOp op;
    TermPtr child;
  };
  struct Binary {
    BinOp op;
    TermPtr left, right;
  };
  struct Medvedev {
    std::string symbol;
  };
  struct MedApp {
    MedOp op;
    TermPtr left, right;
  };

  // Variant order fixes the constructor rank used by the total term order:
  // constants < atoms < unary < binary < medvedev < medvedev operations.
  using Node =
      std::variant<Const0, Const1, ConstInf, Atom, Unary, Binary, Medvedev, MedApp>;

  static TermPtr zero() {
    static const TermPtr t = make(Const0{});
    return t;
  }
  static TermPtr one() {
    static const TermPtr t = make(Const1{});
    return t;
  }
  static TermPtr inf() {
    static const TermPtr t = make(ConstInf{});
    return t;
  }
  static TermPtr atom(std::string name) { return make(Atom{std::move(name)}); }
  static TermPtr unary(UnOp op, TermPtr c) {
    return make(Unary{op, std::move(c)});
  }
  static TermPtr binary(BinOp op, TermPtr l, TermPtr r) {
    return make(Binary{op, std::move(l), std::move(r)});
  }
  static TermPtr medvedev(std::string symbol) {
    return make(Medvedev{std::move(symbol)});
  }
  static TermPtr medApp(MedOp op, TermPtr l, TermPtr r) {
    return make(MedApp{op, std::move(l), std::move(r)});
  }

  static TermPtr comp(TermPtr t) { return unary(UnOp::comp, std::move(t)); }
  static TermPtr par(TermPtr t) { return unary(UnOp::par, std::move(t)); }
  static TermPtr fpar(TermPtr t) { return unary(UnOp::fpar, std::move(t)); }
  static TermPtr neg(TermPtr t) { return unary(UnOp::neg, std::move(t)); }

  const Node& node() const { return node_; }
  std::size_t hash() const { return hash_; }

  bool is(UnOp op) const {
    auto* u = std::get_if<Unary>(&node_);
    return u && u->op == op;
  }
  bool is(BinOp op) const {
    auto* b = std::get_if<Binary>(&node_);
    return b && b->op == op;
  }
  bool isConstInf() const { return std::holds_alternative<ConstInf>(node_); }
  bool isConst0() const { return std::holds_alternative<Const0>(node_); }
  bool isConst1() const { return std::holds_alternative<Const1>(node_); }
  bool isAtom() const { return std::holds_alternative<Atom>(node_); }

  const Unary* asUnary() const { return std::get_if<Unary>(&node_); }
  const Binary* asBinary() const { return std::get_if<Binary>(&node_); }
  const Atom* asAtom() const { return std::get_if<Atom>(&node_); }
  const Medvedev* asMedvedev() const { return std::get_if<Medvedev>(&node_); }
  const MedApp* asMedApp() const { return std::get_if<MedApp>(&node_); }

  /// A term denotes a Medvedev c_A-image iff it is built from mass-problem
  /// symbols with the Medvedev operations only.
  bool medvedevTyped() const {
    if (asMedvedev()) return true;
    if (auto* m = asMedApp())
      return m->left->medvedevTyped() && m->right->medvedevTyped();
    return false;
  }

  std::size_t size() const {
    std::size_t n = 1;
    forEachChild([&](const TermPtr& c) { n += c->size(); });
    return n;
  }

  template <typename F>
  void forEachChild(F&& f) const {
    if (auto* u = asUnary()) {
      f(u->child);
    } else if (auto* b = asBinary()) {
      f(b->left);
      f(b->right);
    } else if (auto* m = asMedApp()) {
      f(m->left);
      f(m->right);
    }
  }

 private:
  explicit Term(Node n) : node_(std::move(n)), hash_(computeHash(node_)) {}

  static TermPtr make(Node n) {
    return std::shared_ptr<const Term>(new Term(std::move(n)));
  }

  static std::size_t mix(std::size_t h, std::size_t v) {
    return h * 1000003u ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  }

  static std::size_t computeHash(const Node& n) {
    std::size_t h = mix(0x5eedu, n.index());
    if (auto* a = std::get_if<Atom>(&n)) {
      h = mix(h, std::hash<std::string>{}(a->name));
    } else if (auto* m = std::get_if<Medvedev>(&n)) {
      h = mix(h, std::hash<std::string>{}(m->symbol));
    } else if (auto* u = std::get_if<Unary>(&n)) {
      h = mix(h, static_cast<std::size_t>(u->op));
      h = mix(h, u->child->hash());
    } else if (auto* b = std::get_if<Binary>(&n)) {
      h = mix(h, static_cast<std::size_t>(b->op));
      h = mix(h, b->left->hash());
      h = mix(h, b->right->hash());
    } else if (auto* ma = std::get_if<MedApp>(&n)) {
      h = mix(h, static_cast<std::size_t>(ma->op));
      h = mix(h, ma->left->hash());
      h = mix(h, ma->right->hash());
    }
    return h;
  }

  Node node_;
  std::size_t hash_;
};

bool operator==(const Term& a, const Term& b);

inline bool equal(const TermPtr& a, const TermPtr& b) {
  return a == b || *a == *b;
}

inline bool operator==(const Term& a, const Term& b) {
  if (a.hash() != b.hash()) return false;
  if (a.node().index() != b.node().index()) return false;
  if (auto* x = a.asAtom()) return x->name == b.asAtom()->name;
  if (auto* x = a.asMedvedev()) return x->symbol == b.asMedvedev()->symbol;
  if (auto* x = a.asUnary()) {
    auto* y = b.asUnary();
    return x->op == y->op && equal(x->child, y->child);
  }
  if (auto* x = a.asBinary()) {
    auto* y = b.asBinary();
    return x->op == y->op && equal(x->left, y->left) && equal(x->right, y->right);
  }
  if (auto* x = a.asMedApp()) {
    auto* y = b.asMedApp();
    return x->op == y->op && equal(x->left, y->left) && equal(x->right, y->right);
  }
  return true;  // constants
}

/// Total order on terms: constructor rank, then operator/name, then children
/// lexicographically. Fixed once; used for rewrite tie-breaking.
inline int compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  if (a->node().index() != b->node().index())
    return a->node().index() < b->node().index() ? -1 : 1;
  if (auto* x = a->asAtom()) return x->name.compare(b->asAtom()->name);
  if (auto* x = a->asMedvedev()) return x->symbol.compare(b->asMedvedev()->symbol);
  if (auto* x = a->asUnary()) {
    auto* y = b->asUnary();
    if (x->op != y->op) return x->op < y->op ? -1 : 1;
    return compare(x->child, y->child);
  }
  if (auto* x = a->asBinary()) {
    auto* y = b->asBinary();
    if (x->op != y->op) return x->op < y->op ? -1 : 1;
    if (int c = compare(x->left, y->left)) return c;
    return compare(x->right, y->right);
  }
  if (auto* x = a->asMedApp()) {
    auto* y = b->asMedApp();
    if (x->op != y->op) return x->op < y->op ? -1 : 1;
    if (int c = compare(x->left, y->left)) return c;
    return compare(x->right, y->right);
  }
  return 0;
}

struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return compare(a, b) < 0;
  }
};

struct TermHash {
  std::size_t operator()(const TermPtr& t) const { return t->hash(); }
};

struct TermEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const {
    return equal(a, b);
  }
};

/// Canonical fully parenthesized prefix form; parseTerm(printTerm(t)) == t.
inline std::string printTerm(const TermPtr& t) {
  if (t->isConst0()) return "0";
  if (t->isConst1()) return "1";
  if (t->isConstInf()) return "INF";
  if (auto* a = t->asAtom()) return a->name;
  if (auto* m = t->asMedvedev()) return "medv(" + m->symbol + ")";
  if (auto* u = t->asUnary())
    return std::string(opName(u->op)) + "(" + printTerm(u->child) + ")";
  if (auto* b = t->asBinary())
    return std::string(opName(b->op)) + "(" + printTerm(b->left) + "," +
           printTerm(b->right) + ")";
  auto* m = t->asMedApp();
  return std::string(opName(m->op)) + "(" + printTerm(m->left) + "," +
         printTerm(m->right) + ")";
}

}  // namespace wb
