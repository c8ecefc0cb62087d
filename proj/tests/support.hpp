// Shared generators and reference evaluators for the test suites.
#pragma once

#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include <mvtl/temporal.hpp>
#include <mvtl/weighted_kb.hpp>

namespace mvtl::check {

using rng = std::mt19937_64;

inline int uniform(rng& r, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(r); }

inline degree random_degree(rng& r, const scale& sc) { return sc.at(uniform(r, 0, static_cast<int>(sc.n()))); }

struct formula_options {
  std::vector<std::string> props{"a", "b", "c"};
  bool temporal = true;
  bool unbounded = true;
  bool typicality = true;
  std::uint32_t max_bound = 4;
};

/// Random formula of depth at most `depth`. T never nests.
inline formula random_formula(rng& r, int depth, const formula_options& o, bool inside_typ = false) {
  auto leaf = [&] {
    int k = uniform(r, 0, 9);
    if (k == 0) return formula::top();
    if (k == 1) return formula::bot();
    return formula::prop(o.props[uniform(r, 0, static_cast<int>(o.props.size()) - 1)]);
  };
  if (depth <= 0 || uniform(r, 0, 5) == 0) return leaf();
  std::vector<op> ops{op::not_, op::and_, op::or_, op::implies};
  if (o.typicality && !inside_typ) ops.push_back(op::typ);
  if (o.temporal) {
    for (op k : {op::next, op::bounded_eventually, op::bounded_always, op::bounded_until}) ops.push_back(k);
    if (o.unbounded)
      for (op k : {op::eventually, op::always, op::until}) ops.push_back(k);
  }
  op k = ops[uniform(r, 0, static_cast<int>(ops.size()) - 1)];
  auto sub = [&](bool typ_below = false) { return random_formula(r, depth - 1, o, inside_typ || typ_below); };
  auto t = static_cast<std::uint32_t>(uniform(r, 0, static_cast<int>(o.max_bound)));
  switch (k) {
    case op::not_: return formula::negation(sub());
    case op::and_: { auto a = sub(); return formula::conjunction(a, sub()); }
    case op::or_: { auto a = sub(); return formula::disjunction(a, sub()); }
    case op::implies: { auto a = sub(); return formula::implies(a, sub()); }
    case op::typ: return formula::typ(sub(true));
    case op::next: return formula::next(sub());
    case op::eventually: return formula::eventually(sub());
    case op::always: return formula::always(sub());
    case op::until: { auto a = sub(); return formula::until(a, sub()); }
    case op::bounded_eventually: return formula::eventually_within(t, sub());
    case op::bounded_always: return formula::always_within(t, sub());
    case op::bounded_until: { auto a = sub(); return formula::until_within(t, a, sub()); }
    default: return leaf();
  }
}

/// Random coherent-mode lasso model over the given props.
inline temporal_interpretation random_lasso(rng& r, const scale& sc, const std::vector<std::string>& props,
                                            int max_worlds = 3, int max_prefix = 3, int max_loop = 3) {
  int nw = uniform(r, 1, max_worlds);
  std::vector<std::string> worlds;
  for (int i = 0; i < nw; ++i) worlds.push_back("w" + std::to_string(i + 1));
  auto m = temporal_interpretation::shaped(worlds, static_cast<std::size_t>(uniform(r, 0, max_prefix)),
                                           static_cast<std::size_t>(uniform(r, 1, max_loop)));
  for (auto& row : m.valuation)
    for (auto& cell : row)
      for (const auto& p : props) cell[p] = random_degree(r, sc);
  return m;
}

/// Random strict partial order on n elements: a random rank with ties, plus
/// occasional removal of pairs that keeps transitivity.
inline strict_order random_strict_order(rng& r, std::size_t n) {
  std::vector<int> rank(n);
  for (auto& x : rank) x = uniform(r, 0, static_cast<int>(n));
  auto o = strict_order::from_scores(rank);
  if (uniform(r, 0, 1) == 0) return o;
  // drop a random pair and restore transitivity by keeping only pairs implied by the rest
  auto ps = o.pairs();
  if (ps.empty()) return o;
  auto [i, j] = ps[static_cast<std::size_t>(uniform(r, 0, static_cast<int>(ps.size()) - 1))];
  o.erase(i, j);
  for (std::size_t k = 0; k < n; ++k) {
    if (o.contains(i, k) && o.contains(k, j)) o.insert(i, j);
  }
  return o.is_transitive() ? o : strict_order::from_scores(rank);
}

/// Two students over time points 0..8, then constant: w has classes and no
/// boss and gets the degree at 8; w' has classes and a boss and gets it at 7.
inline temporal_interpretation student_model() {
  auto m = temporal_interpretation::shaped({"w", "w'"}, 8, 1);
  for (std::size_t pos = 0; pos < m.positions(); ++pos) {
    for (std::size_t x = 0; x < 2; ++x) {
      m.valuation[pos][x]["student"] = degree::one();
      m.valuation[pos][x]["has_Classes"] = degree::one();
      m.valuation[pos][x]["has_Boss"] = x == 0 ? degree::zero() : degree::one();
      m.valuation[pos][x]["holds_Degree"] = degree::zero();
    }
  }
  m.valuation[8][0]["holds_Degree"] = degree::one();
  m.valuation[7][1]["holds_Degree"] = degree::one();
  return m;
}

inline weighted_kb student_kb() {
  auto s = formula::prop("student");
  weighted_kb kb;
  kb.weighted = {{s, formula::prop("has_Classes"), rational(50)},
                 {s, formula::eventually(formula::prop("holds_Degree")), rational(30)},
                 {s, formula::prop("has_Boss"), rational(-40)}};
  return kb;
}

/// Direct reading of the valuation clauses over the time line, with unbounded
/// operators unfolded to a fixed horizon. No lasso arithmetic beyond looking up
/// stored valuations and preferences.
class unfolding_oracle {
 public:
  unfolding_oracle(const temporal_interpretation& m, algebra alg, std::uint64_t horizon = 50)
      : m_(m), alg_(alg), h_(horizon) {}

  degree value(std::uint64_t n, std::size_t w, const formula& f) {
    auto key = std::make_tuple(f.id(), n, w);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    keep_.push_back(f);
    auto d = compute(n, w, f);
    memo_.emplace(key, d);
    return d;
  }

  degree implication_degree(std::uint64_t n, const formula& f, const formula& g) {
    degree d = degree::one();
    for (std::size_t w = 0; w < m_.size(); ++w) d = std::min(d, alg_.implication(value(n, w, f), value(n, w, g)));
    return d;
  }

  bool sat(std::uint64_t n, const graded_formula& a) {
    switch (a.kind()) {
      case meta_op::atom: return a.leaf().holds(implication_degree(n, a.leaf().lhs, a.leaf().rhs));
      case meta_op::and_: return sat(n, a.lhs()) && sat(n, a.rhs());
      case meta_op::not_: return !sat(n, a.operand());
      case meta_op::next: return sat(n + 1, a.operand());
      case meta_op::eventually:
        for (std::uint64_t m = n; m <= n + h_; ++m)
          if (sat(m, a.operand())) return true;
        return false;
      case meta_op::always:
        for (std::uint64_t m = n; m <= n + h_; ++m)
          if (!sat(m, a.operand())) return false;
        return true;
      case meta_op::until:
        for (std::uint64_t m = n; m <= n + h_; ++m) {
          if (sat(m, a.rhs())) return true;
          if (!sat(m, a.operand())) return false;
        }
        return false;
    }
    return false;
  }

 private:
  degree fold_until(std::uint64_t n, std::size_t w, const formula& f, std::uint64_t last) {
    degree acc = degree::zero();
    degree prefix = degree::one();
    for (std::uint64_t m = n; m <= last; ++m) {
      acc = alg_.snorm(acc, alg_.tnorm(value(m, w, f.rhs()), prefix));
      prefix = alg_.tnorm(prefix, value(m, w, f.lhs()));
    }
    return acc;
  }

  degree compute(std::uint64_t n, std::size_t w, const formula& f) {
    auto pos = m_.position(n);
    switch (f.kind()) {
      case op::prop: return m_.value(pos, w, f.name());
      case op::top: return degree::one();
      case op::bot: return degree::zero();
      case op::not_: return alg_.negation(value(n, w, f.operand()));
      case op::and_: return alg_.tnorm(value(n, w, f.lhs()), value(n, w, f.rhs()));
      case op::or_: return alg_.snorm(value(n, w, f.lhs()), value(n, w, f.rhs()));
      case op::implies: return alg_.implication(value(n, w, f.lhs()), value(n, w, f.rhs()));
      case op::typ: {
        const auto& a = f.operand();
        for (std::size_t u = 0; u < m_.size(); ++u)
          if (u != w && below(n, pos, a, u, w)) return degree::zero();
        return value(n, w, a);
      }
      case op::next: return value(n + 1, w, f.operand());
      case op::eventually: return fold(n, n + h_, w, f.operand(), false);
      case op::always: return fold(n, n + h_, w, f.operand(), true);
      case op::until: return fold_until(n, w, f, n + h_);
      case op::bounded_eventually: return fold(n, n + f.bound(), w, f.operand(), false);
      case op::bounded_always: return fold(n, n + f.bound(), w, f.operand(), true);
      case op::bounded_until: return fold_until(n, w, f, n + f.bound());
    }
    return degree::zero();
  }

  degree fold(std::uint64_t from, std::uint64_t to, std::size_t w, const formula& a, bool meet) {
    degree acc = meet ? degree::one() : degree::zero();
    for (std::uint64_t m = from; m <= to; ++m)
      acc = meet ? alg_.tnorm(acc, value(m, w, a)) : alg_.snorm(acc, value(m, w, a));
    return acc;
  }

  // u <_A w at time n
  bool below(std::uint64_t n, std::size_t pos, const formula& a, std::size_t u, std::size_t w) {
    switch (m_.mode) {
      case pref_mode::explicit_: return m_.prefs[pos].at(formula_key(a)).contains(u, w);
      case pref_mode::coherent: return value(n, u, a) > value(n, w, a);
      case pref_mode::weighted: return weight(n, a, u) > weight(n, a, w);
    }
    return false;
  }

  rational weight(std::uint64_t n, const formula& a, std::size_t x) {
    rational s = 0;
    for (const auto& c : m_.weighted)
      if (formula_key(c.subject) == formula_key(a)) s += c.weight * value(n, x, c.consequent).value();
    return s;
  }

  const temporal_interpretation& m_;
  algebra alg_;
  std::uint64_t h_;
  std::map<std::tuple<const void*, std::uint64_t, std::size_t>, degree> memo_;
  std::vector<formula> keep_;
};

}  // namespace mvtl::check
