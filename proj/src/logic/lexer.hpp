#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "qwi/error.hpp"

namespace qwi::detail {

enum class Tok { ident, one, lparen, rparen, comma, tilde, amp, bar, arrow, dblarrow, less, equals, star, inv, assign, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  int line = 1;
  int column = 1;
};

inline std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (s[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < s.size() && s[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      t.kind = Tok::ident;
      t.text = std::string(s.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto starts = [&](std::string_view lit) { return s.substr(i, lit.size()) == lit; };
    struct Lit {
      std::string_view text;
      Tok kind;
    };
    static constexpr Lit lits[] = {{"<->", Tok::dblarrow}, {"->", Tok::arrow}, {"^-1", Tok::inv}, {":=", Tok::assign},
                                   {"(", Tok::lparen},     {")", Tok::rparen}, {",", Tok::comma},  {"~", Tok::tilde},
                                   {"&", Tok::amp},        {"|", Tok::bar},    {"<", Tok::less},   {"=", Tok::equals},
                                   {"*", Tok::star},       {"1", Tok::one}};
    bool matched = false;
    for (const auto& l : lits) {
      if (starts(l.text)) {
        t.kind = l.kind;
        t.text = std::string(l.text);
        advance(l.text.size());
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    if (t.kind == Tok::one && i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      throw ParseError("only the constant 1 is allowed", t.line, t.column);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& next() {
    const Token& t = peek();
    if (pos_ < toks_.size() - 1) ++pos_;
    return t;
  }
  const Token& expect(Tok k, std::string_view what) {
    if (!at(k)) fail("expected " + std::string(what));
    return next();
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string found = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    throw ParseError(what + ", found " + found, t.line, t.column);
  }
  std::size_t mark() const { return pos_; }
  void reset(std::size_t m) { pos_ = m; }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Quantifier prefix: `Ax`, `EX`, or a bare `A`/`E` followed by a variable.
// Returns true and fills the fields when the stream is at a quantifier.
inline bool accept_quantifier(TokenStream& ts, bool& universal, std::string& var) {
  const Token& t = ts.peek();
  if (t.kind != Tok::ident || (t.text[0] != 'A' && t.text[0] != 'E')) return false;
  universal = t.text[0] == 'A';
  if (t.text.size() > 1) {
    var = t.text.substr(1);
    ts.next();
    return true;
  }
  if (ts.peek(1).kind != Tok::ident) return false;
  ts.next();
  var = ts.next().text;
  return true;
}

// Binary-connective precedence, loosest first.
inline int precedence(int op) {
  // matches Connective order: not, and, or, implies, iff
  static constexpr int table[] = {5, 4, 3, 2, 1};
  return table[op];
}

}  // namespace qwi::detail
