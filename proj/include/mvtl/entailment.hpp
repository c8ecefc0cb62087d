#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "graded.hpp"
#include "io.hpp"
#include "relation.hpp"
#include "temporal.hpp"

namespace mvtl {

enum class pref_enumeration : std::uint8_t { coherent_only, all_strict_orders };

/// The finite family of models over which entailment is decided.
struct search_space {
  std::size_t worlds = 1;
  scale sc{1};
  std::vector<std::string> props;
  std::size_t prefix = 0;
  std::size_t loop = 1;
  pref_enumeration prefs = pref_enumeration::coherent_only;
  algebra alg = algebra::goedel();
  double guard = 4e6;

  std::string describe() const {
    std::ostringstream os;
    os << "worlds=" << worlds << " scale=" << sc.n() << " props=";
    for (std::size_t i = 0; i < props.size(); ++i) os << (i ? "," : "") << props[i];
    os << " prefix=" << prefix << " loop=" << loop
       << " prefs=" << (prefs == pref_enumeration::coherent_only ? "coherent" : "all") << " algebra=" << alg.name;
    return os.str();
  }
};

/// Enumerates every model of a search space in a fixed order: valuations vary
/// slowest-last over (position, world, prop) cells; in all-orders mode every
/// assignment of strict partial orders to (position, subject) slots is tried
/// for each valuation.
class model_space {
 public:
  model_space(const search_space& s, std::vector<formula> subjects) : s_(s), subjects_(std::move(subjects)) {
    if (s_.worlds == 0) throw std::invalid_argument("search space needs at least one world");
    if (s_.loop == 0) throw std::invalid_argument("loop length must be positive");
    std::set<std::string> uniq(s_.props.begin(), s_.props.end());
    s_.props.assign(uniq.begin(), uniq.end());
    if (s_.prefs == pref_enumeration::all_strict_orders) {
      if (s_.worlds > 3) throw space_too_large_error("all-orders enumeration allows at most 3 worlds", cardinality_raw());
      if (subjects_.size() > 2)
        throw space_too_large_error("all-orders enumeration allows at most 2 typicality subjects", cardinality_raw());
      orders_ = all_strict_partial_orders(s_.worlds);
    }
    double card = cardinality_raw();
    if (card > s_.guard) throw space_too_large_error("search space exceeds the enumeration guard", card);
  }

  double cardinality() const { return cardinality_raw(); }
  const search_space& space() const { return s_; }

  /// Calls fn(model) for each model until fn returns false. Returns the number of models visited.
  template <typename Fn>
  std::uint64_t for_each(Fn&& fn) const {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < s_.worlds; ++i) names.push_back("w" + std::to_string(i + 1));
    auto mode = s_.prefs == pref_enumeration::coherent_only ? pref_mode::coherent : pref_mode::explicit_;
    auto m = temporal_interpretation::shaped(names, s_.prefix, s_.loop, mode);
    const std::size_t np = m.positions(), nw = s_.worlds, nprops = s_.props.size();
    std::vector<int> cells(np * nw * nprops, 0);
    std::vector<std::size_t> slots(orders_.empty() ? 0 : np * subjects_.size(), 0);
    std::vector<std::string> keys;
    for (const auto& f : subjects_) keys.push_back(formula_key(f));

    auto write_cells = [&] {
      std::size_t c = 0;
      for (std::size_t p = 0; p < np; ++p)
        for (std::size_t w = 0; w < nw; ++w)
          for (std::size_t k = 0; k < nprops; ++k) m.valuation[p][w][s_.props[k]] = s_.sc.at(cells[c++]);
    };
    auto write_slots = [&] {
      for (std::size_t p = 0; p < np && !orders_.empty(); ++p)
        for (std::size_t k = 0; k < keys.size(); ++k) m.prefs[p][keys[k]] = orders_[slots[p * keys.size() + k]];
    };
    auto bump = [](auto& digits, auto radix) {
      for (std::size_t i = digits.size(); i-- > 0;) {
        if (static_cast<std::size_t>(digits[i]) + 1 < static_cast<std::size_t>(radix)) {
          ++digits[i];
          return true;
        }
        digits[i] = 0;
      }
      return false;
    };

    std::uint64_t visited = 0;
    do {
      write_cells();
      std::fill(slots.begin(), slots.end(), 0);
      do {
        write_slots();
        ++visited;
        if (!fn(static_cast<const temporal_interpretation&>(m))) return visited;
      } while (bump(slots, orders_.size()));
    } while (bump(cells, s_.sc.size()));
    return visited;
  }

 private:
  double cardinality_raw() const {
    double positions = static_cast<double>(s_.prefix + s_.loop);
    double card = std::pow(static_cast<double>(s_.sc.size()),
                           positions * static_cast<double>(s_.worlds) * static_cast<double>(s_.props.size()));
    if (s_.prefs == pref_enumeration::all_strict_orders) {
      double n_orders = static_cast<double>(all_strict_partial_orders_count(s_.worlds));
      card *= std::pow(n_orders, positions * static_cast<double>(subjects_.size()));
    }
    return card;
  }

  static std::size_t all_strict_partial_orders_count(std::size_t n) {
    // labelled posets on n points: 1, 1, 3, 19, 219, 4231
    static constexpr std::size_t counts[] = {1, 1, 3, 19, 219, 4231};
    return n < 6 ? counts[n] : static_cast<std::size_t>(-1);
  }

  search_space s_;
  std::vector<formula> subjects_;
  std::vector<strict_order> orders_;
};

// {{{ entailment

struct verdict {
  bool entailed = true;
  std::optional<temporal_interpretation> countermodel;
  std::uint64_t models_checked = 0;
  std::string space;
};

namespace detail {

inline void collect_subjects(const graded_formula& a, std::vector<formula>& out) {
  a.for_each_atom([&](const graded_implication& g) {
    collect_typicality_subjects(g.lhs, out);
    collect_typicality_subjects(g.rhs, out);
  });
}

inline void collect_props(const graded_formula& a, std::set<std::string>& out) {
  a.for_each_atom([&](const graded_implication& g) {
    mvtl::collect_props(g.lhs, out);
    mvtl::collect_props(g.rhs, out);
  });
}

}  // namespace detail

/// K entails alpha relative to the space: every enumerated model satisfying all
/// of K at time 0 satisfies alpha at time 0. Returns the first countermodel otherwise.
inline verdict entails(const std::vector<graded_formula>& kb, const graded_formula& query, search_space s) {
  std::vector<formula> subjects;
  std::set<std::string> props(s.props.begin(), s.props.end());
  for (const auto& a : kb) {
    detail::collect_subjects(a, subjects);
    detail::collect_props(a, props);
  }
  detail::collect_subjects(query, subjects);
  detail::collect_props(query, props);
  s.props.assign(props.begin(), props.end());
  model_space space(s, subjects);

  verdict v;
  v.space = space.space().describe();
  v.models_checked = space.for_each([&](const temporal_interpretation& m) {
    temporal_evaluator ev(m, s.alg);
    for (const auto& a : kb)
      if (!ev.msat(0, a)) return true;
    if (ev.msat(0, query)) return true;
    v.entailed = false;
    v.countermodel = m;
    return false;
  });
  return v;
}

/// Entailment of (A -> B) >= 1 from graded implications on single-position models.
inline verdict one_entails(const std::vector<graded_implication>& kb, const graded_implication& query,
                           search_space s) {
  if (query.cmp != comparison::ge || !query.threshold.is_one())
    throw semantic_error("1-entailment takes a query of the form (A -> B) >= 1");
  s.prefix = 0;
  s.loop = 1;
  std::vector<graded_formula> k;
  for (const auto& g : kb) k.push_back(graded_formula::atom(g));
  return entails(k, graded_formula::atom(query), s);
}

// }}}

// {{{ KLM postulates

enum class postulate : std::uint8_t {
  reflexivity,
  left_logical_equivalence,
  right_weakening,
  and_,
  or_,
  cautious_monotonicity
};

inline std::string_view to_string(postulate p) {
  switch (p) {
    case postulate::reflexivity: return "Reflexivity";
    case postulate::left_logical_equivalence: return "LLE";
    case postulate::right_weakening: return "RW";
    case postulate::and_: return "And";
    case postulate::or_: return "Or";
    case postulate::cautious_monotonicity: return "CM";
  }
  return "?";
}

inline constexpr postulate all_postulates[] = {postulate::reflexivity, postulate::left_logical_equivalence,
                                               postulate::right_weakening,  postulate::and_,
                                               postulate::or_,              postulate::cautious_monotonicity};

struct klm_counterexample {
  std::string a, b, c;
  std::vector<std::string> premises;
  std::string conclusion;
  temporal_interpretation model;
};

struct postulate_result {
  postulate which;
  std::uint64_t instances = 0;
  std::uint64_t models_checked = 0;
  std::uint64_t counterexamples = 0;
  // instances left out in all-orders mode because they exceed the subject guard
  std::uint64_t skipped = 0;
  std::optional<klm_counterexample> first;

  bool passed() const { return counterexamples == 0; }
};

struct klm_report {
  std::string space;
  std::vector<postulate_result> results;

  const postulate_result& at(postulate p) const {
    for (const auto& r : results)
      if (r.which == p) return r;
    throw std::out_of_range("postulate not in report");
  }
};

/// Default formula pool over the propositions a and b.
inline std::vector<formula> default_klm_pool() {
  std::vector<formula> out;
  for (const char* text : {"a", "b", "~a", "a & b", "b & a", "a | b", "a & (a | b)", "top", "bot"})
    out.push_back(parse_formula(text));
  return out;
}

/// Checks each postulate in per-model closure form: for every instantiation of
/// A, B, C from the pool and every enumerated model, premises satisfied in the
/// model imply the conclusion satisfied in it. The validity side conditions of
/// LLE and RW range over all valuations of the space.
inline klm_report klm_suite(search_space s, const std::vector<formula>& pool) {
  for (const auto& f : pool)
    if (f.contains_typ() || f.contains_temporal())
      throw semantic_error("KLM pool formulas must be free of T and temporal operators: " + print_formula(f));
  std::set<std::string> props(s.props.begin(), s.props.end());
  for (const auto& f : pool) collect_props(f, props);
  s.props.assign(props.begin(), props.end());

  const std::size_t k = pool.size();
  auto ge1 = [](const formula& l, const formula& r) {
    return graded_implication{l, r, comparison::ge, degree::one()};
  };

  // valid[i][j]: (P_i -> P_j) >= 1 in every valuation of the space
  std::vector<std::vector<bool>> valid(k, std::vector<bool>(k, true));
  {
    model_space vals([&] {
      auto t = s;
      t.prefs = pref_enumeration::coherent_only;
      return t;
    }(), {});
    vals.for_each([&](const temporal_interpretation& m) {
      temporal_evaluator ev(m, s.alg);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
          if (valid[i][j] && !ev.implication_degree_at(0, pool[i], pool[j]).is_one()) valid[i][j] = false;
      return true;
    });
  }

  struct instance {
    std::size_t a, b, c;
    std::vector<graded_implication> premises;
    graded_implication conclusion;
  };

  klm_report rep;
  rep.space = s.describe();
  for (auto p : all_postulates) {
    std::vector<instance> insts;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        for (std::size_t c = 0; c < k; ++c) {
          const auto &A = pool[a], &B = pool[b], &C = pool[c];
          switch (p) {
            case postulate::reflexivity:
              if (b == 0 && c == 0) insts.push_back({a, b, c, {}, ge1(formula::typ(A), A)});
              break;
            case postulate::left_logical_equivalence:
              if (valid[a][b] && valid[b][a])
                insts.push_back({a, b, c, {ge1(formula::typ(A), C)}, ge1(formula::typ(B), C)});
              break;
            case postulate::right_weakening:
              if (valid[b][c]) insts.push_back({a, b, c, {ge1(formula::typ(A), B)}, ge1(formula::typ(A), C)});
              break;
            case postulate::and_:
              insts.push_back({a, b, c, {ge1(formula::typ(A), B), ge1(formula::typ(A), C)},
                               ge1(formula::typ(A), formula::conjunction(B, C))});
              break;
            case postulate::or_:
              insts.push_back({a, b, c, {ge1(formula::typ(A), C), ge1(formula::typ(B), C)},
                               ge1(formula::typ(formula::disjunction(A, B)), C)});
              break;
            case postulate::cautious_monotonicity:
              insts.push_back({a, b, c, {ge1(formula::typ(A), C), ge1(formula::typ(A), B)},
                               ge1(formula::typ(formula::conjunction(A, B)), C)});
              break;
          }
        }

    postulate_result res;
    res.which = p;
    res.instances = insts.size();
    auto check_in = [&](const temporal_interpretation& m, temporal_evaluator& ev, const instance& in) {
      for (const auto& g : in.premises)
        if (!g.holds(ev.implication_degree_at(0, g.lhs, g.rhs))) return;
      const auto& g = in.conclusion;
      if (g.holds(ev.implication_degree_at(0, g.lhs, g.rhs))) return;
      ++res.counterexamples;
      if (!res.first) {
        klm_counterexample ce{print_formula(pool[in.a]), print_formula(pool[in.b]), print_formula(pool[in.c]),
                              {}, print_graded_implication(g), m};
        for (const auto& pr : in.premises) ce.premises.push_back(print_graded_implication(pr));
        res.first = std::move(ce);
      }
    };

    if (s.prefs == pref_enumeration::coherent_only) {
      model_space space(s, {});
      res.models_checked = space.for_each([&](const temporal_interpretation& m) {
        temporal_evaluator ev(m, s.alg);
        for (const auto& in : insts) check_in(m, ev, in);
        return true;
      });
    } else {
      for (const auto& in : insts) {
        std::vector<formula> subjects;
        for (const auto& g : in.premises) collect_typicality_subjects(g.lhs, subjects);
        collect_typicality_subjects(in.conclusion.lhs, subjects);
        std::optional<model_space> space;
        try {
          space.emplace(s, subjects);
        } catch (const space_too_large_error&) {
          ++res.skipped;
          continue;
        }
        res.models_checked += space->for_each([&](const temporal_interpretation& m) {
          temporal_evaluator ev(m, s.alg);
          check_in(m, ev, in);
          return true;
        });
      }
    }
    rep.results.push_back(std::move(res));
  }
  return rep;
}

// }}}

}  // namespace mvtl
