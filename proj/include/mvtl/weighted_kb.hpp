#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "graded.hpp"
#include "temporal.hpp"

namespace mvtl {

/// Strict temporal graded formulas together with weighted typicality conditionals.
struct weighted_kb {
  std::vector<graded_formula> strict;
  std::vector<weighted_conditional> weighted;

  /// Subjects A_i with at least one weighted conditional, by first occurrence.
  std::vector<formula> distinguished() const {
    std::vector<formula> out;
    for (const auto& c : weighted) {
      auto key = formula_key(c.subject);
      if (std::none_of(out.begin(), out.end(), [&](const auto& f) { return formula_key(f) == key; }))
        out.push_back(c.subject);
    }
    return out;
  }
};

/// Preferences per lasso position and subject key.
using preference_assignment = std::vector<std::map<std::string, strict_order>>;

/// Sum over conditionals (T(A_i) -> B_j, w_ij) of w_ij * v(n, x, B_j).
inline rational world_weight(temporal_evaluator& ev, const weighted_kb& kb, const std::string& subject_key,
                             std::uint64_t n, std::size_t x) {
  auto pos = ev.model().position(n);
  rational sum = 0;
  for (const auto& c : kb.weighted)
    if (formula_key(c.subject) == subject_key) sum += c.weight * ev.values(c.consequent)[pos][x].value();
  return sum;
}

inline rational world_weight(const temporal_interpretation& m, const weighted_kb& kb, const std::string& subject_key,
                             std::uint64_t n, std::size_t x, const algebra& alg) {
  temporal_evaluator ev(m, alg);
  return world_weight(ev, kb, subject_key, n, x);
}

/// x <^n_{A_i} y iff the weight of x exceeds the weight of y, for every
/// distinguished A_i and lasso position n.
inline preference_assignment derive_preferences(const temporal_interpretation& m, const weighted_kb& kb,
                                                const algebra& alg) {
  temporal_evaluator ev(m, alg);
  preference_assignment out(m.positions());
  for (const auto& subject : kb.distinguished()) {
    auto key = formula_key(subject);
    for (std::size_t pos = 0; pos < m.positions(); ++pos) {
      std::vector<rational> score;
      for (std::size_t x = 0; x < m.size(); ++x) score.push_back(world_weight(ev, kb, key, pos, x));
      out[pos][key] = strict_order::from_scores(score);
    }
  }
  return out;
}

/// Copy of m in explicit mode with the given relations added (overwriting equal keys).
inline temporal_interpretation install_preferences(temporal_interpretation m, const preference_assignment& prefs) {
  m.mode = pref_mode::explicit_;
  for (std::size_t pos = 0; pos < prefs.size() && pos < m.positions(); ++pos)
    for (const auto& [key, r] : prefs[pos]) m.prefs[pos][key] = r;
  return m;
}

struct preference_mismatch {
  std::size_t position;
  std::string key;
  std::size_t x;
  std::size_t y;
  bool expected;  // whether x < y should hold according to the weights
};

struct weighted_report {
  std::vector<preference_mismatch> mismatches;
  std::vector<std::pair<graded_formula, bool>> strict;

  bool preferences_ok() const { return mismatches.empty(); }
  bool strict_ok() const {
    return std::all_of(strict.begin(), strict.end(), [](const auto& s) { return s.second; });
  }
  bool satisfied() const { return preferences_ok() && strict_ok(); }
};

/// Compares the preferences in effect in m against the weight-derived ones for
/// every distinguished subject and position, and checks each strict formula at time 0.
/// In weighted mode the two coincide by construction whenever m carries the same
/// conditionals, so only the strict part can fail there.
inline weighted_report check_weighted_satisfaction(const temporal_interpretation& m, const weighted_kb& kb,
                                                   const algebra& alg) {
  weighted_report rep;
  temporal_evaluator ev(m, alg);
  auto derived = derive_preferences(m, kb, alg);
  for (const auto& subject : kb.distinguished()) {
    auto key = formula_key(subject);
    for (std::size_t pos = 0; pos < m.positions(); ++pos) {
      auto actual = ev.preference_at(pos, subject);
      const auto& want = derived[pos].at(key);
      for (std::size_t x = 0; x < m.size(); ++x)
        for (std::size_t y = 0; y < m.size(); ++y)
          if (actual.contains(x, y) != want.contains(x, y))
            rep.mismatches.push_back({pos, key, x, y, want.contains(x, y)});
    }
  }
  for (const auto& a : kb.strict) rep.strict.emplace_back(a, ev.msat(0, a));
  return rep;
}

}  // namespace mvtl
