#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>

#include "degree.hpp"

namespace mvtl {

/// Truth functions for the connectives: t-norm for conjunction, s-norm for
/// disjunction, implication and negation. Two algebras ship (Goedel, Zadeh);
/// further ones can be built by filling in the function table.
struct algebra {
  using binary_fn = degree (*)(const degree&, const degree&);
  using unary_fn = degree (*)(const degree&);

  std::string_view name;
  binary_fn tnorm;
  binary_fn snorm;
  binary_fn implication;
  unary_fn negation;
  // t-norm and s-norm are min/max; unbounded temporal operators require it.
  bool idempotent;

  static algebra goedel() {
    return {"goedel", &min_fn, &max_fn, &goedel_implication, &goedel_negation, true};
  }

  static algebra zadeh() {
    return {"zadeh", &min_fn, &max_fn, &zadeh_implication, &zadeh_negation, true};
  }

  static std::optional<algebra> by_name(std::string_view n) {
    if (n == "goedel" || n == "godel" || n == "g") return goedel();
    if (n == "zadeh" || n == "z") return zadeh();
    return std::nullopt;
  }

  static degree min_fn(const degree& a, const degree& b) { return std::min(a, b); }
  static degree max_fn(const degree& a, const degree& b) { return std::max(a, b); }

  static degree goedel_implication(const degree& a, const degree& b) {
    return a <= b ? degree::one() : b;
  }
  static degree goedel_negation(const degree& a) {
    return a.is_zero() ? degree::one() : degree::zero();
  }

  static degree zadeh_implication(const degree& a, const degree& b) {
    return std::max(a.complement(), b);
  }
  static degree zadeh_negation(const degree& a) { return a.complement(); }
};

inline degree tnorm(const degree& a, const degree& b, const algebra& alg) { return alg.tnorm(a, b); }
inline degree snorm(const degree& a, const degree& b, const algebra& alg) { return alg.snorm(a, b); }
inline degree implication(const degree& a, const degree& b, const algebra& alg) {
  return alg.implication(a, b);
}
inline degree negation(const degree& a, const algebra& alg) { return alg.negation(a); }

}  // namespace mvtl
