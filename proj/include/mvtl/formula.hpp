#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace mvtl {

enum class op : std::uint8_t {
  prop,
  top,
  bot,
  not_,
  and_,
  or_,
  implies,
  typ,
  next,
  eventually,
  always,
  until,
  bounded_eventually,
  bounded_always,
  bounded_until,
};

inline bool is_reserved_word(std::string_view s) {
  return s == "T" || s == "X" || s == "F" || s == "G" || s == "U" || s == "top" || s == "bot";
}

inline bool is_identifier(std::string_view s) {
  if (s.empty() || is_reserved_word(s)) return false;
  auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
  if (!alpha(s.front())) return false;
  for (char c : s)
    if (!alpha(c) && !(c >= '0' && c <= '9')) return false;
  return true;
}

/// Object-level formula: propositions, connectives, typicality and LTL operators.
/// Immutable; copies share structure.
class formula {
 public:
  static formula prop(std::string name) {
    if (!is_identifier(name)) throw std::invalid_argument("invalid proposition name '" + name + "'");
    return formula(op::prop, std::move(name), 0, {}, {});
  }
  static formula top() { return formula(op::top, {}, 0, {}, {}); }
  static formula bot() { return formula(op::bot, {}, 0, {}, {}); }
  static formula negation(formula f) { return unary(op::not_, std::move(f)); }
  static formula conjunction(formula f, formula g) { return binary(op::and_, std::move(f), std::move(g)); }
  static formula disjunction(formula f, formula g) { return binary(op::or_, std::move(f), std::move(g)); }
  static formula implies(formula f, formula g) { return binary(op::implies, std::move(f), std::move(g)); }

  /// T(f); f must not contain T.
  static formula typ(formula f) {
    if (f.contains_typ()) throw nested_typicality_error(0);
    return unary(op::typ, std::move(f));
  }

  static formula next(formula f) { return unary(op::next, std::move(f)); }
  static formula eventually(formula f) { return unary(op::eventually, std::move(f)); }
  static formula always(formula f) { return unary(op::always, std::move(f)); }
  static formula until(formula f, formula g) { return binary(op::until, std::move(f), std::move(g)); }
  static formula eventually_within(std::uint32_t t, formula f) {
    return formula(op::bounded_eventually, {}, t, std::move(f), {});
  }
  static formula always_within(std::uint32_t t, formula f) {
    return formula(op::bounded_always, {}, t, std::move(f), {});
  }
  static formula until_within(std::uint32_t t, formula f, formula g) {
    return formula(op::bounded_until, {}, t, std::move(f), std::move(g));
  }

  formula() : formula(top()) {}

  op kind() const noexcept { return node_->kind; }
  const std::string& name() const noexcept { return node_->name; }
  std::uint32_t bound() const noexcept { return node_->bound; }
  const formula& lhs() const { return *node_->lhs; }
  const formula& rhs() const { return *node_->rhs; }
  const formula& operand() const { return *node_->lhs; }

  bool is_binary() const noexcept {
    switch (kind()) {
      case op::and_:
      case op::or_:
      case op::implies:
      case op::until:
      case op::bounded_until:
        return true;
      default:
        return false;
    }
  }
  bool is_unary() const noexcept { return !is_binary() && node_->lhs != nullptr; }

  bool contains_typ() const noexcept { return node_->has_typ; }
  bool contains_temporal() const noexcept { return node_->has_temporal; }
  bool contains_unbounded_temporal() const noexcept { return node_->has_unbounded; }

  /// Node identity, used to key memo tables.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const formula& a, const formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.name() != b.name() || a.bound() != b.bound()) return false;
    if (a.node_->lhs && !(*a.node_->lhs == *b.node_->lhs)) return false;
    if (a.node_->rhs && !(*a.node_->rhs == *b.node_->rhs)) return false;
    return true;
  }

 private:
  struct node {
    op kind;
    std::string name;
    std::uint32_t bound;
    std::unique_ptr<formula> lhs;
    std::unique_ptr<formula> rhs;
    bool has_typ = false;
    bool has_temporal = false;
    bool has_unbounded = false;
  };

  formula(op k, std::string name, std::uint32_t bound, std::optional<formula> lhs,
          std::optional<formula> rhs) {
    auto n = std::make_shared<node>();
    n->kind = k;
    n->name = std::move(name);
    n->bound = bound;
    bool unbounded = k == op::eventually || k == op::always || k == op::until;
    bool temporal = unbounded || k == op::next || k == op::bounded_eventually ||
                    k == op::bounded_always || k == op::bounded_until;
    n->has_typ = k == op::typ;
    n->has_temporal = temporal;
    n->has_unbounded = unbounded;
    for (auto* child : {&lhs, &rhs}) {
      if (!*child) continue;
      n->has_typ |= (*child)->contains_typ();
      n->has_temporal |= (*child)->contains_temporal();
      n->has_unbounded |= (*child)->contains_unbounded_temporal();
    }
    if (lhs) n->lhs = std::make_unique<formula>(std::move(*lhs));
    if (rhs) n->rhs = std::make_unique<formula>(std::move(*rhs));
    node_ = std::move(n);
  }

  static formula unary(op k, formula f) { return formula(k, {}, 0, std::move(f), {}); }
  static formula binary(op k, formula f, formula g) { return formula(k, {}, 0, std::move(f), std::move(g)); }

  std::shared_ptr<const node> node_;
};

// {{{ printing

inline void print_to(std::string& out, const formula& f) {
  auto bin = [&](std::string_view sym) {
    out += '(';
    print_to(out, f.lhs());
    out += ' ';
    out += sym;
    out += ' ';
    print_to(out, f.rhs());
    out += ')';
  };
  auto pre = [&](std::string_view sym) {
    out += sym;
    print_to(out, f.operand());
  };
  switch (f.kind()) {
    case op::prop: out += f.name(); break;
    case op::top: out += "top"; break;
    case op::bot: out += "bot"; break;
    case op::not_: pre("~"); break;
    case op::and_: bin("&"); break;
    case op::or_: bin("|"); break;
    case op::implies: bin("->"); break;
    case op::typ:
      out += "T(";
      print_to(out, f.operand());
      out += ')';
      break;
    case op::next: pre("X "); break;
    case op::eventually: pre("F "); break;
    case op::always: pre("G "); break;
    case op::until: bin("U"); break;
    case op::bounded_eventually: pre("F[" + std::to_string(f.bound()) + "] "); break;
    case op::bounded_always: pre("G[" + std::to_string(f.bound()) + "] "); break;
    case op::bounded_until: bin("U[" + std::to_string(f.bound()) + "]"); break;
  }
}

/// Canonical text; binary operators are always parenthesized.
inline std::string print_formula(const formula& f) {
  std::string out;
  print_to(out, f);
  return out;
}

/// Index of the preference relation attached to f: its canonical text.
inline std::string formula_key(const formula& f) { return print_formula(f); }

// }}}

// {{{ structural queries

inline void collect_props(const formula& f, std::set<std::string>& out) {
  if (f.kind() == op::prop) {
    out.insert(f.name());
    return;
  }
  if (f.is_binary()) {
    collect_props(f.lhs(), out);
    collect_props(f.rhs(), out);
  } else if (f.is_unary()) {
    collect_props(f.operand(), out);
  }
}

inline std::set<std::string> props_of(const formula& f) {
  std::set<std::string> out;
  collect_props(f, out);
  return out;
}

/// Arguments A of every T(A) occurring in f, deduplicated by key, in order of first occurrence.
inline void collect_typicality_subjects(const formula& f, std::vector<formula>& out) {
  if (f.kind() == op::typ) {
    auto key = formula_key(f.operand());
    for (const auto& g : out)
      if (formula_key(g) == key) return;
    out.push_back(f.operand());
    return;
  }
  if (f.is_binary()) {
    collect_typicality_subjects(f.lhs(), out);
    collect_typicality_subjects(f.rhs(), out);
  } else if (f.is_unary()) {
    collect_typicality_subjects(f.operand(), out);
  }
}

// }}}

}  // namespace mvtl
