#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "graded.hpp"
#include "preferential.hpp"
#include "relation.hpp"

namespace mvtl {

/// Temporal multi-preferential interpretation over an ultimately periodic
/// time line: positions 0..prefix+loop-1 are stored, and time n >= prefix+loop
/// denotes position prefix + (n - prefix) mod loop.
struct temporal_interpretation {
  std::vector<std::string> worlds;
  std::size_t prefix = 0;
  std::size_t loop = 1;
  std::vector<std::vector<std::map<std::string, degree>>> valuation;  // [position][world]
  std::vector<std::map<std::string, strict_order>> prefs;              // [position]
  pref_mode mode = pref_mode::coherent;
  std::vector<weighted_conditional> weighted;

  std::size_t size() const noexcept { return worlds.size(); }
  std::size_t positions() const noexcept { return prefix + loop; }

  std::size_t position(std::uint64_t n) const noexcept {
    if (n < positions()) return static_cast<std::size_t>(n);
    return prefix + static_cast<std::size_t>((n - prefix) % loop);
  }

  std::size_t successor(std::size_t pos) const noexcept { return pos + 1 < positions() ? pos + 1 : prefix; }

  std::size_t world_index(std::string_view name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == name) return i;
    throw model_error("unknown world '" + std::string(name) + "'");
  }

  const degree& value(std::size_t pos, std::size_t w, const std::string& p) const {
    auto it = valuation[pos][w].find(p);
    if (it == valuation[pos][w].end())
      throw missing_prop_error(p, worlds[w] + " at position " + std::to_string(pos));
    return it->second;
  }

  /// Blank model with the given shape; every table sized, nothing valued.
  static temporal_interpretation shaped(std::vector<std::string> worlds, std::size_t prefix, std::size_t loop,
                                        pref_mode mode = pref_mode::coherent) {
    temporal_interpretation t;
    t.worlds = std::move(worlds);
    t.prefix = prefix;
    t.loop = loop;
    t.mode = mode;
    t.valuation.assign(prefix + loop, std::vector<std::map<std::string, degree>>(t.worlds.size()));
    t.prefs.assign(prefix + loop, {});
    return t;
  }

  /// A time-constant model: the static interpretation at every time point.
  static temporal_interpretation constant(const preferential_interpretation& m) {
    auto t = shaped(m.worlds, 0, 1, m.mode);
    t.valuation[0] = m.valuation;
    t.prefs[0] = m.prefs;
    t.weighted = m.weighted;
    return t;
  }

  void validate() const {
    if (worlds.empty()) throw model_error("interpretation has no worlds");
    if (loop == 0) throw model_error("loop length must be positive");
    for (std::size_t i = 0; i < worlds.size(); ++i)
      for (std::size_t j = i + 1; j < worlds.size(); ++j)
        if (worlds[i] == worlds[j]) throw model_error("duplicate world '" + worlds[i] + "'");
    if (valuation.size() != positions() || prefs.size() != positions())
      throw model_error("tables do not match the lasso shape");
    for (std::size_t pos = 0; pos < positions(); ++pos) {
      if (valuation[pos].size() != worlds.size()) throw model_error("valuation table does not match world count");
      for (const auto& [key, r] : prefs[pos]) {
        auto where = "preference for \"" + key + "\" at position " + std::to_string(pos);
        if (r.size() != worlds.size()) throw model_error(where + " has wrong size");
        if (!r.is_irreflexive()) throw model_error(where + " is not irreflexive");
        if (!r.is_transitive()) throw model_error(where + " is not transitive");
      }
    }
  }
};

/// Evaluation session over one temporal interpretation. Degrees are computed
/// bottom-up for all positions and worlds at once and memoized per formula node.
/// Not thread-safe; use one evaluator per thread.
class temporal_evaluator {
 public:
  using table = std::vector<std::vector<degree>>;  // [position][world]

  temporal_evaluator(const temporal_interpretation& model, algebra alg) : m_(model), alg_(alg) {}

  const temporal_interpretation& model() const noexcept { return m_; }
  const algebra& alg() const noexcept { return alg_; }

  degree value(std::uint64_t n, std::size_t w, const formula& f) { return values(f)[m_.position(n)][w]; }

  const table& values(const formula& f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second.second;
    auto t = compute(f);
    return memo_.emplace(f.id(), std::make_pair(f, std::move(t))).first->second.second;
  }

  /// Times m in [n, end) whose positions cover every position reachable from n.
  std::uint64_t horizon(std::size_t pos, std::size_t loops) const {
    return std::max<std::uint64_t>(pos, m_.prefix) + loops * m_.loop;
  }

  /// Weighted score of world w for subject key at position pos.
  rational world_weight(std::size_t pos, const std::string& key, std::size_t w) {
    rational sum = 0;
    for (const auto& c : m_.weighted)
      if (formula_key(c.subject) == key) sum += c.weight * values(c.consequent)[pos][w].value();
    return sum;
  }

  /// The relation <^pos_A in effect for subject A.
  strict_order preference_at(std::size_t pos, const formula& subject) {
    auto key = formula_key(subject);
    switch (m_.mode) {
      case pref_mode::explicit_: {
        auto it = m_.prefs[pos].find(key);
        if (it == m_.prefs[pos].end()) throw missing_preference_error(key);
        return it->second;
      }
      case pref_mode::coherent: return strict_order::from_scores(values(subject)[pos]);
      case pref_mode::weighted: {
        bool distinguished = std::any_of(m_.weighted.begin(), m_.weighted.end(),
                                         [&](const auto& c) { return formula_key(c.subject) == key; });
        if (!distinguished) throw missing_preference_error(key);
        std::vector<rational> score;
        for (std::size_t w = 0; w < m_.size(); ++w) score.push_back(world_weight(pos, key, w));
        return strict_order::from_scores(score);
      }
    }
    throw missing_preference_error(key);
  }

  degree implication_degree_at(std::uint64_t n, const formula& f, const formula& g) {
    auto pos = m_.position(n);
    const auto& a = values(f)[pos];
    const auto& b = values(g)[pos];
    degree d = degree::one();
    for (std::size_t w = 0; w < m_.size(); ++w) d = std::min(d, alg_.implication(a[w], b[w]));
    return d;
  }

  /// Meta-level satisfaction of a temporal graded formula at every position.
  const std::vector<bool>& satisfaction(const graded_formula& a) {
    if (auto it = meta_memo_.find(a.id()); it != meta_memo_.end()) return it->second.second;
    auto s = compute_meta(a);
    return meta_memo_.emplace(a.id(), std::make_pair(a, std::move(s))).first->second.second;
  }

  bool msat(std::uint64_t n, const graded_formula& a) { return satisfaction(a)[m_.position(n)]; }

 private:
  table compute(const formula& f) {
    const std::size_t np = m_.positions(), nw = m_.size();
    table out(np, std::vector<degree>(nw));
    auto pointwise = [&](auto&& fn) {
      for (std::size_t p = 0; p < np; ++p)
        for (std::size_t w = 0; w < nw; ++w) out[p][w] = fn(p, w);
    };
    switch (f.kind()) {
      case op::prop: pointwise([&](auto p, auto w) { return m_.value(p, w, f.name()); }); break;
      case op::top: pointwise([](auto, auto) { return degree::one(); }); break;
      case op::bot: pointwise([](auto, auto) { return degree::zero(); }); break;
      case op::not_: {
        const auto& a = values(f.operand());
        pointwise([&](auto p, auto w) { return alg_.negation(a[p][w]); });
        break;
      }
      case op::and_:
      case op::or_:
      case op::implies: {
        const auto& a = values(f.lhs());
        const auto& b = values(f.rhs());
        auto fn = f.kind() == op::and_ ? alg_.tnorm : f.kind() == op::or_ ? alg_.snorm : alg_.implication;
        pointwise([&](auto p, auto w) { return fn(a[p][w], b[p][w]); });
        break;
      }
      case op::typ: {
        const auto& a = values(f.operand());
        for (std::size_t p = 0; p < np; ++p) {
          auto r = preference_at(p, f.operand());
          for (std::size_t w = 0; w < nw; ++w) out[p][w] = r.is_minimal(w) ? a[p][w] : degree::zero();
        }
        break;
      }
      case op::next: {
        const auto& a = values(f.operand());
        pointwise([&](auto p, auto w) { return a[m_.successor(p)][w]; });
        break;
      }
      case op::eventually:
      case op::always: {
        require_idempotent();
        const auto& a = values(f.operand());
        bool ev = f.kind() == op::eventually;
        pointwise([&](std::size_t p, std::size_t w) {
          degree acc = a[p][w];
          for (std::uint64_t m = p + 1; m < horizon(p, 1); ++m) {
            const auto& x = a[m_.position(m)][w];
            acc = ev ? alg_.snorm(acc, x) : alg_.tnorm(acc, x);
          }
          return acc;
        });
        break;
      }
      case op::until: {
        require_idempotent();
        const auto& a = values(f.lhs());
        const auto& b = values(f.rhs());
        pointwise([&](std::size_t p, std::size_t w) { return until_fold(a, b, p, w, horizon(p, 2) + 1); });
        break;
      }
      case op::bounded_eventually:
      case op::bounded_always: {
        const auto& a = values(f.operand());
        bool ev = f.kind() == op::bounded_eventually;
        pointwise([&](std::size_t p, std::size_t w) {
          std::uint64_t last = p + effective_bound(p, f.bound());
          degree acc = a[p][w];
          for (std::uint64_t m = p + 1; m <= last; ++m) {
            const auto& x = a[m_.position(m)][w];
            acc = ev ? alg_.snorm(acc, x) : alg_.tnorm(acc, x);
          }
          return acc;
        });
        break;
      }
      case op::bounded_until: {
        const auto& a = values(f.lhs());
        const auto& b = values(f.rhs());
        pointwise([&](std::size_t p, std::size_t w) {
          return until_fold(a, b, p, w, p + effective_bound(p, f.bound()) + 1);
        });
        break;
      }
    }
    return out;
  }

  /// s-norm over m in [p, end) of B(m) t-norm (t-norm over k in [p, m) of A(k)).
  degree until_fold(const table& a, const table& b, std::size_t p, std::size_t w, std::uint64_t end) const {
    degree best = degree::zero();
    degree prefix = degree::one();
    for (std::uint64_t m = p; m < end; ++m) {
      auto pos = m_.position(m);
      best = alg_.snorm(best, alg_.tnorm(b[pos][w], prefix));
      prefix = alg_.tnorm(prefix, a[pos][w]);
    }
    return best;
  }

  /// Bounded folds are computed literally; for idempotent algebras a bound far
  /// past the lasso is cut back to two loops beyond the prefix, which leaves the
  /// fold unchanged since later terms repeat earlier ones.
  std::uint64_t effective_bound(std::size_t p, std::uint64_t t) const {
    if (!alg_.idempotent) return t;
    std::uint64_t saturated = horizon(p, 2) - p;
    if (t > 4 * (m_.positions() + saturated) + 16) return saturated;
    return t;
  }

  void require_idempotent() const {
    if (!alg_.idempotent) throw non_idempotent_algebra_error(std::string(alg_.name));
  }

  std::vector<bool> compute_meta(const graded_formula& a) {
    const std::size_t np = m_.positions();
    std::vector<bool> out(np, false);
    switch (a.kind()) {
      case meta_op::atom: {
        const auto& g = a.leaf();
        for (std::size_t p = 0; p < np; ++p) out[p] = g.holds(implication_degree_at(p, g.lhs, g.rhs));
        break;
      }
      case meta_op::and_: {
        const auto& x = satisfaction(a.lhs());
        const auto& y = satisfaction(a.rhs());
        for (std::size_t p = 0; p < np; ++p) out[p] = x[p] && y[p];
        break;
      }
      case meta_op::not_: {
        const auto& x = satisfaction(a.operand());
        for (std::size_t p = 0; p < np; ++p) out[p] = !x[p];
        break;
      }
      case meta_op::next: {
        const auto& x = satisfaction(a.operand());
        for (std::size_t p = 0; p < np; ++p) out[p] = x[m_.successor(p)];
        break;
      }
      case meta_op::eventually:
      case meta_op::always: {
        const auto& x = satisfaction(a.operand());
        bool ev = a.kind() == meta_op::eventually;
        for (std::size_t p = 0; p < np; ++p) {
          bool acc = !ev;
          for (std::uint64_t m = p; m < horizon(p, 1); ++m) {
            bool v = x[m_.position(m)];
            acc = ev ? (acc || v) : (acc && v);
          }
          out[p] = acc;
        }
        break;
      }
      case meta_op::until: {
        const auto& x = satisfaction(a.lhs());
        const auto& y = satisfaction(a.rhs());
        for (std::size_t p = 0; p < np; ++p) {
          bool found = false;
          for (std::uint64_t m = p; m <= horizon(p, 2) && !found; ++m) {
            auto pos = m_.position(m);
            if (y[pos]) found = true;
            else if (!x[pos]) break;
          }
          out[p] = found;
        }
        break;
      }
    }
    return out;
  }

  const temporal_interpretation& m_;
  algebra alg_;
  std::map<const void*, std::pair<formula, table>> memo_;
  std::map<const void*, std::pair<graded_formula, std::vector<bool>>> meta_memo_;
};

// {{{ free-function surface

inline degree teval(const temporal_interpretation& m, std::uint64_t n, std::size_t w, const formula& f,
                    const algebra& alg) {
  return temporal_evaluator(m, alg).value(n, w, f);
}

enum class bounded_op : std::uint8_t { eventually, always, until };

/// F[t] a, G[t] a, or a U[t] b at (n, w).
inline degree teval_bounded(const temporal_interpretation& m, std::uint64_t n, std::size_t w, bounded_op kind,
                            std::uint32_t t, const formula& a, const formula& b, const algebra& alg) {
  switch (kind) {
    case bounded_op::eventually: return teval(m, n, w, formula::eventually_within(t, a), alg);
    case bounded_op::always: return teval(m, n, w, formula::always_within(t, a), alg);
    case bounded_op::until: return teval(m, n, w, formula::until_within(t, a, b), alg);
  }
  return degree::zero();
}

inline degree implication_degree_at(const temporal_interpretation& m, std::uint64_t n, const formula& f,
                                    const formula& g, const algebra& alg) {
  return temporal_evaluator(m, alg).implication_degree_at(n, f, g);
}

inline bool msat(const temporal_interpretation& m, std::uint64_t n, const graded_formula& a, const algebra& alg) {
  return temporal_evaluator(m, alg).msat(n, a);
}

/// Satisfaction at time point 0.
inline bool satisfies_temporal(const temporal_interpretation& m, const graded_formula& a, const algebra& alg) {
  return msat(m, 0, a, alg);
}

/// The static interpretation at time n.
inline preferential_interpretation slice(const temporal_interpretation& m, std::uint64_t n) {
  auto pos = m.position(n);
  preferential_interpretation s;
  s.worlds = m.worlds;
  s.valuation = m.valuation[pos];
  s.prefs = m.prefs[pos];
  s.mode = m.mode;
  s.weighted = m.weighted;
  return s;
}

// }}}

}  // namespace mvtl
