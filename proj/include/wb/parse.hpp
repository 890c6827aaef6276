#pragma once

#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wb/term.hpp"

namespace wb {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, std::size_t position)
      : std::runtime_error(std::move(msg)), pos(position) {}
  std::size_t pos;
};

namespace detail {

inline std::optional<UnOp> unOpByName(std::string_view s) {
  if (s == "comp") return UnOp::comp;
  if (s == "par") return UnOp::par;
  if (s == "fpar") return UnOp::fpar;
  if (s == "neg") return UnOp::neg;
  return std::nullopt;
}

inline std::optional<BinOp> binOpByName(std::string_view s) {
  if (s == "prod") return BinOp::prod;
  if (s == "coprod") return BinOp::coprod;
  if (s == "meet") return BinOp::meet;
  if (s == "boxsum") return BinOp::boxsum;
  if (s == "sum") return BinOp::sum;
  if (s == "star") return BinOp::star;
  if (s == "cimp") return BinOp::cimp;
  if (s == "mimp") return BinOp::mimp;
  return std::nullopt;
}

inline std::optional<MedOp> medOpByName(std::string_view s) {
  if (s == "otimes") return MedOp::otimes;
  if (s == "oplus") return MedOp::oplus;
  if (s == "mimpM") return MedOp::mimpM;
  return std::nullopt;
}

// Recursive-descent parser for the prefix term grammar. Whitespace is
// insignificant; "#" starts a comment running to end of line.
class TermParser {
 public:
  explicit TermParser(std::string_view text, std::size_t start = 0)
      : text_(text), pos_(start) {}

  TermPtr parse() {
    TermPtr t = term();
    skipWs();
    if (pos_ != text_.size())
      fail("trailing input after term");
    return t;
  }

  TermPtr parsePrefix() { return term(); }

  std::size_t position() const { return pos_; }

  bool atEnd() {
    skipWs();
    return pos_ >= text_.size();
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError("syntax error at position " + std::to_string(pos_) + ": " +
                         what,
                     pos_);
  }

  void skipWs() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool eat(char c) {
    skipWs();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) {
      if (pos_ >= text_.size())
        fail(std::string("expected '") + c + "' at end-of-input");
      fail(std::string("expected '") + c + "'");
    }
  }

  std::string ident() {
    skipWs();
    if (pos_ >= text_.size() ||
        !std::isalpha(static_cast<unsigned char>(text_[pos_])))
      fail(pos_ >= text_.size() ? "expected identifier at end-of-input"
                                : "expected identifier");
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool nextIsLParen() {
    std::size_t save = pos_;
    skipWs();
    bool r = pos_ < text_.size() && text_[pos_] == '(';
    pos_ = save;
    return r;
  }

  TermPtr term() {
    skipWs();
    if (pos_ >= text_.size()) fail("expected term at end-of-input");
    char c = text_[pos_];
    if (c == '0') {
      ++pos_;
      return Term::zero();
    }
    if (c == '1') {
      ++pos_;
      return Term::one();
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail("expected term");

    std::string name = ident();
    if (name == "INF") return Term::inf();

    // Operator names act as operators only when applied; a bare occurrence
    // is an ordinary atom, which keeps print/parse a bijection.
    if (nextIsLParen()) {
      if (auto u = unOpByName(name)) {
        expect('(');
        TermPtr child = term();
        expect(')');
        return Term::unary(*u, std::move(child));
      }
      if (auto b = binOpByName(name)) {
        expect('(');
        TermPtr l = term();
        expect(',');
        TermPtr r = term();
        expect(')');
        return Term::binary(*b, std::move(l), std::move(r));
      }
      if (auto m = medOpByName(name)) {
        expect('(');
        TermPtr l = term();
        expect(',');
        TermPtr r = term();
        expect(')');
        return Term::medApp(*m, std::move(l), std::move(r));
      }
      if (name == "medv") {
        expect('(');
        std::string sym = ident();
        expect(')');
        return Term::medvedev(std::move(sym));
      }
      fail("'" + name + "' is not an operation");
    }
    return Term::atom(std::move(name));
  }

  std::string_view text_;
  std::size_t pos_;
};

}  // namespace detail

/// Parses the prefix term grammar. Unknown atom names are accepted here and
/// validated later against a knowledge base.
inline TermPtr parseTerm(std::string_view text) {
  return detail::TermParser(text).parse();
}

}  // namespace wb
