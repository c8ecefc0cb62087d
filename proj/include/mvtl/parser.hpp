#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "formula.hpp"
#include "graded.hpp"

namespace mvtl {

namespace detail {

enum class tok : std::uint8_t {
  ident,
  number,
  lparen,
  rparen,
  lbracket,
  rbracket,
  tilde,
  amp,
  bar,
  arrow,
  ge,
  le,
  end,
};

struct token {
  tok kind;
  std::string_view text;
  std::size_t pos;
};

inline std::vector<token> tokenize(std::string_view s) {
  std::vector<token> out;
  std::size_t i = 0;
  auto ident_char = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  };
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      ++i;
      continue;
    }
    std::size_t start = i;
    auto single = [&](tok k) {
      out.push_back({k, s.substr(start, 1), start});
      ++i;
    };
    switch (c) {
      case '(': single(tok::lparen); continue;
      case ')': single(tok::rparen); continue;
      case '[': single(tok::lbracket); continue;
      case ']': single(tok::rbracket); continue;
      case '~': single(tok::tilde); continue;
      case '&': single(tok::amp); continue;
      case '|': single(tok::bar); continue;
      default: break;
    }
    if (c == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({tok::arrow, s.substr(start, 2), start});
      i += 2;
    } else if ((c == '>' || c == '<') && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({c == '>' ? tok::ge : tok::le, s.substr(start, 2), start});
      i += 2;
    } else if (c >= '0' && c <= '9') {
      while (i < s.size() && ((s[i] >= '0' && s[i] <= '9') || s[i] == '.' || s[i] == '/')) ++i;
      out.push_back({tok::number, s.substr(start, i - start), start});
    } else if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
      while (i < s.size() && ident_char(s[i])) ++i;
      out.push_back({tok::ident, s.substr(start, i - start), start});
    } else {
      throw syntax_error(std::string("unexpected character '") + c + "'", start);
    }
  }
  out.push_back({tok::end, {}, s.size()});
  return out;
}

/// Recursive descent over the token stream. Object level:
///   impl  := until ("->" impl)?
///   until := disj (("U" | "U[" INT "]") until)?
///   disj  := conj ("|" conj)*
///   conj  := unary ("&" unary)*
///   unary := "~" unary | "T(" impl ")" | "X" unary | ("F"|"G") ("[" INT "]")? unary
///          | "(" impl ")" | "top" | "bot" | IDENT
/// Meta level mirrors and/not/X/F/G/U over atoms "(" impl ")" (">=" | "<=") DEGREE.
class parser {
 public:
  explicit parser(std::string_view text) : toks_(tokenize(text)) {}

  formula whole_formula() {
    auto f = impl();
    expect_end();
    return f;
  }

  graded_formula whole_graded() {
    auto a = meta_until();
    expect_end();
    return a;
  }

 private:
  const token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(i_ + ahead, toks_.size() - 1)];
  }
  const token& advance() { return toks_[i_ < toks_.size() - 1 ? i_++ : i_]; }
  bool is_word(const token& t, std::string_view w) const { return t.kind == tok::ident && t.text == w; }

  [[noreturn]] void fail(const std::string& msg, const token& t) const {
    if (t.kind == tok::end) throw syntax_error(msg + ", found end of input", t.pos);
    throw syntax_error(msg + ", found '" + std::string(t.text) + "'", t.pos);
  }

  void expect(tok k, const char* what) {
    if (peek().kind != k) fail(std::string("expected ") + what, peek());
    advance();
  }

  void expect_end() {
    if (peek().kind != tok::end) fail("unexpected trailing input", peek());
  }

  std::uint32_t bracket_bound() {
    expect(tok::lbracket, "'['");
    const token& t = peek();
    if (t.kind != tok::number || t.text.find_first_of("./") != std::string_view::npos)
      fail("expected a non-negative integer bound", t);
    if (t.text.size() > 9) fail("bound too large", t);
    std::uint32_t v = 0;
    for (char c : t.text) v = v * 10 + static_cast<std::uint32_t>(c - '0');
    advance();
    expect(tok::rbracket, "']'");
    return v;
  }

  // {{{ object level

  formula impl() {
    auto lhs = until();
    if (peek().kind == tok::arrow) {
      advance();
      return formula::implies(std::move(lhs), impl());
    }
    return lhs;
  }

  formula until() {
    auto lhs = disj();
    if (is_word(peek(), "U")) {
      advance();
      if (peek().kind == tok::lbracket) {
        auto t = bracket_bound();
        return formula::until_within(t, std::move(lhs), until());
      }
      return formula::until(std::move(lhs), until());
    }
    return lhs;
  }

  formula disj() {
    auto f = conj();
    while (peek().kind == tok::bar) {
      advance();
      f = formula::disjunction(std::move(f), conj());
    }
    return f;
  }

  formula conj() {
    auto f = unary();
    while (peek().kind == tok::amp) {
      advance();
      f = formula::conjunction(std::move(f), unary());
    }
    return f;
  }

  formula unary() {
    const token& t = peek();
    switch (t.kind) {
      case tok::tilde:
        advance();
        return formula::negation(unary());
      case tok::lparen: {
        advance();
        auto f = impl();
        expect(tok::rparen, "')'");
        return f;
      }
      case tok::ident: break;
      default: fail("expected a formula", t);
    }
    if (is_word(t, "T")) {
      if (typ_depth_ > 0) throw nested_typicality_error(t.pos);
      advance();
      expect(tok::lparen, "'(' after T");
      ++typ_depth_;
      auto f = impl();
      --typ_depth_;
      expect(tok::rparen, "')'");
      return formula::typ(std::move(f));
    }
    if (is_word(t, "X")) {
      advance();
      return formula::next(unary());
    }
    if (is_word(t, "F") || is_word(t, "G")) {
      bool ev = t.text == "F";
      advance();
      if (peek().kind == tok::lbracket) {
        auto b = bracket_bound();
        return ev ? formula::eventually_within(b, unary()) : formula::always_within(b, unary());
      }
      return ev ? formula::eventually(unary()) : formula::always(unary());
    }
    if (is_word(t, "top")) {
      advance();
      return formula::top();
    }
    if (is_word(t, "bot")) {
      advance();
      return formula::bot();
    }
    if (is_word(t, "U")) fail("expected a formula", t);
    advance();
    return formula::prop(std::string(t.text));
  }

  // }}}

  // {{{ meta level

  graded_formula meta_until() {
    auto lhs = meta_and();
    if (is_word(peek(), "U")) {
      advance();
      return graded_formula::until(std::move(lhs), meta_until());
    }
    return lhs;
  }

  graded_formula meta_and() {
    auto a = meta_unary();
    while (peek().kind == tok::amp) {
      advance();
      a = graded_formula::conjunction(std::move(a), meta_unary());
    }
    return a;
  }

  /// Index of the ')' matching the '(' at position i_, or npos.
  std::size_t matching_paren() const {
    int depth = 0;
    for (std::size_t j = i_; j < toks_.size(); ++j) {
      if (toks_[j].kind == tok::lparen) ++depth;
      if (toks_[j].kind == tok::rparen && --depth == 0) return j;
    }
    return std::string_view::npos;
  }

  graded_formula meta_unary() {
    const token& t = peek();
    if (t.kind == tok::tilde) {
      advance();
      return graded_formula::negation(meta_unary());
    }
    if (is_word(t, "X")) {
      advance();
      return graded_formula::next(meta_unary());
    }
    if (is_word(t, "F")) {
      advance();
      return graded_formula::eventually(meta_unary());
    }
    if (is_word(t, "G")) {
      advance();
      return graded_formula::always(meta_unary());
    }
    if (t.kind != tok::lparen) fail("expected a graded implication '(A -> B) >= q'", t);
    auto close = matching_paren();
    if (close == std::string_view::npos) fail("unbalanced '('", t);
    auto after = toks_[close + 1].kind;
    if (after == tok::ge || after == tok::le) return graded_atom();
    advance();
    auto a = meta_until();
    expect(tok::rparen, "')'");
    return a;
  }

  graded_formula graded_atom() {
    const token& open = peek();
    advance();
    auto f = impl();
    expect(tok::rparen, "')'");
    if (f.kind() != op::implies) throw syntax_error("graded comparison needs an implication A -> B", open.pos);
    const token& cmp = advance();
    const token& q = peek();
    if (q.kind != tok::number) fail("expected a threshold degree", q);
    auto r = parse_rational(q.text);
    if (!r) throw syntax_error("malformed degree '" + std::string(q.text) + "'", q.pos);
    auto d = degree::try_make(*r);
    if (!d) throw threshold_range_error(std::string(q.text), q.pos);
    advance();
    return graded_formula::atom(
        {f.lhs(), f.rhs(), cmp.kind == tok::ge ? comparison::ge : comparison::le, *d});
  }

  // }}}

  std::vector<token> toks_;
  std::size_t i_ = 0;
  int typ_depth_ = 0;
};

}  // namespace detail

inline formula parse_formula(std::string_view text) { return detail::parser(text).whole_formula(); }

inline graded_formula parse_graded(std::string_view text) { return detail::parser(text).whole_graded(); }

/// A single graded implication "(A -> B) >= q".
inline graded_implication parse_graded_implication(std::string_view text) {
  auto a = parse_graded(text);
  if (a.kind() != meta_op::atom) throw syntax_error("expected a single graded implication", 0);
  return a.leaf();
}

}  // namespace mvtl
