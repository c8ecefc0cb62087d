#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "graded.hpp"
#include "relation.hpp"

namespace mvtl {

/// How the preference relation for T(A) is obtained.
///   explicit_  stored relations, looked up by formula_key(A)
///   coherent   w < w' iff v(w,A) > v(w',A)
///   weighted   w < w' iff the weighted conditionals about A score w higher than w'
enum class pref_mode : std::uint8_t { explicit_, coherent, weighted };

inline std::string_view to_string(pref_mode m) {
  switch (m) {
    case pref_mode::explicit_: return "explicit";
    case pref_mode::coherent: return "coherent";
    case pref_mode::weighted: return "weighted";
  }
  return "?";
}

/// Finite multi-preferential interpretation: worlds, valuation, and one strict
/// order per formula key.
struct preferential_interpretation {
  std::vector<std::string> worlds;
  std::vector<std::map<std::string, degree>> valuation;
  std::map<std::string, strict_order> prefs;
  pref_mode mode = pref_mode::coherent;
  std::vector<weighted_conditional> weighted;

  std::size_t size() const noexcept { return worlds.size(); }

  std::size_t world_index(std::string_view name) const {
    for (std::size_t i = 0; i < worlds.size(); ++i)
      if (worlds[i] == name) return i;
    throw model_error("unknown world '" + std::string(name) + "'");
  }

  const degree& value(std::size_t w, const std::string& p) const {
    auto it = valuation[w].find(p);
    if (it == valuation[w].end()) throw missing_prop_error(p, worlds[w]);
    return it->second;
  }

  /// Rejects empty world sets, mismatched tables, and stored relations that
  /// are not irreflexive and transitive.
  void validate() const {
    if (worlds.empty()) throw model_error("interpretation has no worlds");
    if (valuation.size() != worlds.size()) throw model_error("valuation table does not match world count");
    for (std::size_t i = 0; i < worlds.size(); ++i)
      for (std::size_t j = i + 1; j < worlds.size(); ++j)
        if (worlds[i] == worlds[j]) throw model_error("duplicate world '" + worlds[i] + "'");
    for (const auto& [key, r] : prefs) {
      if (r.size() != worlds.size()) throw model_error("preference for \"" + key + "\" has wrong size");
      if (!r.is_irreflexive()) throw model_error("preference for \"" + key + "\" is not irreflexive");
      if (!r.is_transitive()) throw model_error("preference for \"" + key + "\" is not transitive");
    }
  }
};

inline degree eval(const preferential_interpretation& m, std::size_t w, const formula& f, const algebra& alg);

/// Sum of weight * v(w, consequent) over the conditionals whose subject has key `key`.
inline rational weighted_score(const preferential_interpretation& m, const std::string& key, std::size_t w,
                               const algebra& alg) {
  rational sum = 0;
  for (const auto& c : m.weighted)
    if (formula_key(c.subject) == key) sum += c.weight * eval(m, w, c.consequent, alg).value();
  return sum;
}

/// The relation <_A in effect for subject A.
inline strict_order preference_for(const preferential_interpretation& m, const formula& subject,
                                   const algebra& alg) {
  auto key = formula_key(subject);
  switch (m.mode) {
    case pref_mode::explicit_: {
      auto it = m.prefs.find(key);
      if (it == m.prefs.end()) throw missing_preference_error(key);
      return it->second;
    }
    case pref_mode::coherent: {
      std::vector<degree> v;
      for (std::size_t w = 0; w < m.size(); ++w) v.push_back(eval(m, w, subject, alg));
      return strict_order::from_scores(v);
    }
    case pref_mode::weighted: {
      bool distinguished = std::any_of(m.weighted.begin(), m.weighted.end(),
                                       [&](const auto& c) { return formula_key(c.subject) == key; });
      if (!distinguished) throw missing_preference_error(key);
      std::vector<rational> score;
      for (std::size_t w = 0; w < m.size(); ++w) score.push_back(weighted_score(m, key, w, alg));
      return strict_order::from_scores(score);
    }
  }
  throw missing_preference_error(key);
}

/// Valuation of f at world w.
inline degree eval(const preferential_interpretation& m, std::size_t w, const formula& f, const algebra& alg) {
  switch (f.kind()) {
    case op::prop: return m.value(w, f.name());
    case op::top: return degree::one();
    case op::bot: return degree::zero();
    case op::not_: return alg.negation(eval(m, w, f.operand(), alg));
    case op::and_: return alg.tnorm(eval(m, w, f.lhs(), alg), eval(m, w, f.rhs(), alg));
    case op::or_: return alg.snorm(eval(m, w, f.lhs(), alg), eval(m, w, f.rhs(), alg));
    case op::implies: return alg.implication(eval(m, w, f.lhs(), alg), eval(m, w, f.rhs(), alg));
    case op::typ: {
      if (!preference_for(m, f.operand(), alg).is_minimal(w)) return degree::zero();
      return eval(m, w, f.operand(), alg);
    }
    default: throw temporal_operator_error(print_formula(f));
  }
}

/// inf over worlds of v(w,f) |> v(w,g); the world set is finite so inf is min.
inline degree implication_degree(const preferential_interpretation& m, const formula& f, const formula& g,
                                 const algebra& alg) {
  degree d = degree::one();
  for (std::size_t w = 0; w < m.size(); ++w) d = std::min(d, alg.implication(eval(m, w, f, alg), eval(m, w, g, alg)));
  return d;
}

inline bool satisfies(const preferential_interpretation& m, const graded_implication& gi, const algebra& alg) {
  return gi.holds(implication_degree(m, gi.lhs, gi.rhs, alg));
}

// {{{ coherence

struct coherence_entry {
  std::string key;
  bool coherent = true;
  bool faithful = true;
  bool modular = true;
  // v(w,A) > v(w',A) but not w < w'
  std::vector<std::pair<std::size_t, std::size_t>> faithfulness_violations;
  // w < w' but not v(w,A) > v(w',A)
  std::vector<std::pair<std::size_t, std::size_t>> coherence_violations;
};

struct coherence_report {
  std::vector<coherence_entry> entries;

  bool all_coherent() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.coherent; });
  }
  bool all_faithful() const {
    return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.faithful; });
  }
};

inline coherence_entry check_coherence_for(const preferential_interpretation& m, const formula& subject,
                                           const algebra& alg) {
  coherence_entry e;
  e.key = formula_key(subject);
  auto r = preference_for(m, subject, alg);
  std::vector<degree> v;
  for (std::size_t w = 0; w < m.size(); ++w) v.push_back(eval(m, w, subject, alg));
  for (std::size_t w = 0; w < m.size(); ++w)
    for (std::size_t u = 0; u < m.size(); ++u) {
      bool higher = v[w] > v[u];
      bool preferred = r.contains(w, u);
      if (higher && !preferred) e.faithfulness_violations.emplace_back(w, u);
      if (preferred && !higher) e.coherence_violations.emplace_back(w, u);
    }
  e.faithful = e.faithfulness_violations.empty();
  e.coherent = e.faithful && e.coherence_violations.empty();
  e.modular = r.is_modular();
  return e;
}

/// Coherence: v(w,A) > v(w',A) iff w <_A w'. Faithfulness: only the left-to-right half.
inline coherence_report check_coherence(const preferential_interpretation& m, const std::vector<formula>& subjects,
                                        const algebra& alg) {
  coherence_report rep;
  for (const auto& s : subjects) rep.entries.push_back(check_coherence_for(m, s, alg));
  return rep;
}

// }}}

}  // namespace mvtl
