#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "degree.hpp"
#include "formula.hpp"

namespace mvtl {

enum class comparison : std::uint8_t { ge, le };

/// (lhs -> rhs) >= threshold, or <= threshold.
struct graded_implication {
  formula lhs;
  formula rhs;
  comparison cmp = comparison::ge;
  degree threshold = degree::one();

  bool holds(const degree& d) const { return cmp == comparison::ge ? d >= threshold : d <= threshold; }

  friend bool operator==(const graded_implication&, const graded_implication&) = default;
};

inline std::string print_graded_implication(const graded_implication& g) {
  return print_formula(formula::implies(g.lhs, g.rhs)) + (g.cmp == comparison::ge ? " >= " : " <= ") +
         g.threshold.str();
}

enum class meta_op : std::uint8_t { atom, and_, not_, next, eventually, always, until };

/// Boolean and temporal combination of graded implications, evaluated two-valued at time points.
class graded_formula {
 public:
  static graded_formula atom(graded_implication g) {
    auto n = std::make_shared<node>();
    n->kind = meta_op::atom;
    n->leaf = std::move(g);
    return graded_formula(std::move(n));
  }
  static graded_formula conjunction(graded_formula a, graded_formula b) {
    return make(meta_op::and_, std::move(a), std::move(b));
  }
  static graded_formula negation(graded_formula a) { return make(meta_op::not_, std::move(a), {}); }
  static graded_formula next(graded_formula a) { return make(meta_op::next, std::move(a), {}); }
  static graded_formula eventually(graded_formula a) { return make(meta_op::eventually, std::move(a), {}); }
  static graded_formula always(graded_formula a) { return make(meta_op::always, std::move(a), {}); }
  static graded_formula until(graded_formula a, graded_formula b) {
    return make(meta_op::until, std::move(a), std::move(b));
  }

  meta_op kind() const noexcept { return node_->kind; }
  const graded_implication& leaf() const { return *node_->leaf; }
  const graded_formula& lhs() const { return *node_->lhs; }
  const graded_formula& rhs() const { return *node_->rhs; }
  const graded_formula& operand() const { return *node_->lhs; }
  const void* id() const noexcept { return node_.get(); }

  template <typename Fn>
  void for_each_atom(Fn&& fn) const {
    switch (kind()) {
      case meta_op::atom: fn(leaf()); break;
      case meta_op::and_:
      case meta_op::until:
        lhs().for_each_atom(fn);
        rhs().for_each_atom(fn);
        break;
      default: operand().for_each_atom(fn); break;
    }
  }

  friend bool operator==(const graded_formula& a, const graded_formula& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() == meta_op::atom) return a.leaf() == b.leaf();
    if (!(a.lhs() == b.lhs())) return false;
    return !a.node_->rhs || a.rhs() == b.rhs();
  }

 private:
  struct node {
    meta_op kind;
    std::optional<graded_implication> leaf;
    std::unique_ptr<graded_formula> lhs;
    std::unique_ptr<graded_formula> rhs;
  };

  explicit graded_formula(std::shared_ptr<const node> n) : node_(std::move(n)) {}

  static graded_formula make(meta_op k, graded_formula a, std::optional<graded_formula> b) {
    auto n = std::make_shared<node>();
    n->kind = k;
    n->lhs = std::make_unique<graded_formula>(std::move(a));
    if (b) n->rhs = std::make_unique<graded_formula>(std::move(*b));
    return graded_formula(std::move(n));
  }

  std::shared_ptr<const node> node_;
};

inline void print_to(std::string& out, const graded_formula& a) {
  switch (a.kind()) {
    case meta_op::atom: out += print_graded_implication(a.leaf()); break;
    case meta_op::and_:
    case meta_op::until:
      out += '(';
      print_to(out, a.lhs());
      out += a.kind() == meta_op::and_ ? " & " : " U ";
      print_to(out, a.rhs());
      out += ')';
      break;
    case meta_op::not_:
      out += '~';
      print_to(out, a.operand());
      break;
    case meta_op::next:
      out += "X ";
      print_to(out, a.operand());
      break;
    case meta_op::eventually:
      out += "F ";
      print_to(out, a.operand());
      break;
    case meta_op::always:
      out += "G ";
      print_to(out, a.operand());
      break;
  }
}

inline std::string print_graded(const graded_formula& a) {
  std::string out;
  print_to(out, a);
  return out;
}

/// A weighted defeasible property (T(subject) -> consequent, weight).
struct weighted_conditional {
  formula subject;
  formula consequent;
  rational weight;
};

}  // namespace mvtl
