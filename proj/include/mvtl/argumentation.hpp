#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "degree.hpp"
#include "errors.hpp"
#include "preferential.hpp"
#include "temporal.hpp"

namespace mvtl {

/// Edge-weighted argumentation graph <A, R, sigma0, pi>.
struct arg_graph {
  struct edge {
    std::size_t from;
    std::size_t to;
    rational weight;
  };

  std::vector<std::string> arguments;
  std::vector<degree> base;
  std::vector<edge> edges;

  std::size_t size() const noexcept { return arguments.size(); }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < arguments.size(); ++i)
      if (arguments[i] == name) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw model_error("unknown argument '" + std::string(name) + "'");
  }

  std::size_t add_argument(std::string name, degree base_score) {
    if (!is_identifier(name)) throw model_error("argument name '" + name + "' is not a valid proposition");
    if (auto i = find(name)) {
      base[*i] = base_score;
      return *i;
    }
    arguments.push_back(std::move(name));
    base.push_back(base_score);
    return arguments.size() - 1;
  }

  /// Adds the edge, or replaces the weight of an existing one.
  void set_edge(std::size_t from, std::size_t to, rational weight) {
    for (auto& e : edges)
      if (e.from == from && e.to == to) {
        e.weight = weight;
        return;
      }
    edges.push_back({from, to, weight});
  }

  void validate() const {
    if (base.size() != arguments.size()) throw model_error("base scores do not match arguments");
    for (const auto& e : edges)
      if (e.from >= size() || e.to >= size()) throw model_error("edge endpoint is not a declared argument");
  }
};

/// Acceptability degree per argument, indexed like arg_graph::arguments.
using labelling = std::vector<degree>;

using update_rule = std::function<labelling(const arg_graph&, const labelling&, const scale&)>;

/// sigma'(a) = round_n(clamp(sigma0(a) + sum over edges (b,a) of pi(b,a) * sigma(b))),
/// rounding to the nearest scale member with ties toward the lower one.
inline labelling step(const arg_graph& g, const labelling& sigma, const scale& sc) {
  std::vector<rational> acc;
  acc.reserve(g.size());
  for (const auto& b : g.base) acc.push_back(b.value());
  for (const auto& e : g.edges) acc[e.to] += e.weight * sigma[e.from].value();
  labelling out;
  out.reserve(g.size());
  for (const auto& x : acc) out.push_back(sc.round(x));
  return out;
}

inline const char* const shipped_semantics_name = "weighted-sum/clamp/round-down-ties";

/// Graphs over time sharing one argument set. The block starting at step s
/// applies to every step until the next block starts; the last block extends forever.
struct graph_timeline {
  std::vector<std::pair<std::size_t, arg_graph>> blocks;  // sorted by start step
  std::vector<labelling> seeds;

  static graph_timeline single(arg_graph g) {
    graph_timeline t;
    t.blocks.emplace_back(0, std::move(g));
    return t;
  }

  const arg_graph& at(std::uint64_t step) const {
    const arg_graph* g = &blocks.front().second;
    for (const auto& [start, graph] : blocks)
      if (start <= step) g = &graph;
    return *g;
  }

  const arg_graph& first() const { return blocks.front().second; }

  /// First step from which the graph no longer changes.
  std::size_t settle_step() const { return blocks.back().first; }

  void validate() const {
    if (blocks.empty()) throw model_error("timeline has no graphs");
    if (blocks.front().first != 0) throw model_error("timeline must start at step 0");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i].second.validate();
      if (i > 0 && blocks[i].first <= blocks[i - 1].first) throw model_error("timeline steps must increase");
      if (blocks[i].second.arguments != blocks.front().second.arguments)
        throw model_error("timeline graphs must share the argument set");
    }
    for (const auto& s : seeds)
      if (s.size() != first().size()) throw model_error("seed does not cover every argument");
  }
};

/// An eventually periodic sequence of labellings: states[0..prefix+loop).
struct labelling_lasso {
  std::size_t prefix = 0;
  std::size_t loop = 1;
  std::vector<labelling> states;

  const labelling& at(std::uint64_t n) const {
    if (n < states.size()) return states[n];
    return states[prefix + (n - prefix) % loop];
  }
};

/// Iterates the update rule from seed until a labelling repeats once the graph
/// has settled, then shrinks the prefix to the shortest one consistent with the run.
inline labelling_lasso trajectory(const graph_timeline& tl, const labelling& seed, const scale& sc,
                                  std::size_t max_steps, const update_rule& rule = step) {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  for (const auto& d : seed)
    if (!sc.contains(d)) throw model_error("seed value " + d.str() + " is not in C_" + std::to_string(sc.n()));
  const std::size_t settle = tl.settle_step();
  std::vector<labelling> run{seed};
  std::map<labelling, std::size_t> seen;
  if (settle == 0) seen.emplace(seed, 0);
  for (std::size_t t = 0; t < max_steps; ++t) {
    auto next = rule(tl.at(t), run.back(), sc);
    std::size_t j = t + 1;
    if (j >= settle) {
      if (auto it = seen.find(next); it != seen.end()) {
        labelling_lasso out;
        out.prefix = it->second;
        out.loop = j - it->second;
        while (out.prefix > 0 && run[out.prefix - 1] == run[out.prefix - 1 + out.loop]) --out.prefix;
        out.states.assign(run.begin(), run.begin() + static_cast<std::ptrdiff_t>(out.prefix + out.loop));
        return out;
      }
      seen.emplace(next, j);
    }
    run.push_back(std::move(next));
  }
  throw horizon_exceeded_error(max_steps);
}

inline labelling_lasso trajectory(const arg_graph& g, const labelling& seed, const scale& sc, std::size_t max_steps,
                                  const update_rule& rule = step) {
  return trajectory(graph_timeline::single(g), seed, sc, max_steps, rule);
}

/// Exhaustive scan of C_n^|A| for labellings with rule(sigma) == sigma, in
/// lexicographic order of scale indices.
inline std::vector<labelling> fixpoints(const arg_graph& g, const scale& sc, const update_rule& rule = step,
                                        double guard = 1e6) {
  double card = std::pow(static_cast<double>(sc.size()), static_cast<double>(g.size()));
  if (card > guard) throw space_too_large_error("labelling space exceeds the fixpoint guard", card);
  std::vector<int> idx(g.size(), 0);
  std::vector<labelling> out;
  for (;;) {
    labelling sigma;
    for (int k : idx) sigma.push_back(sc.at(k));
    if (rule(g, sigma, sc) == sigma) out.push_back(sigma);
    std::size_t pos = idx.size();
    while (pos > 0) {
      --pos;
      if (idx[pos] < sc.n()) {
        ++idx[pos];
        break;
      }
      idx[pos] = 0;
      if (pos == 0) return out;
    }
    if (idx.empty()) return out;
  }
}

/// One world per labelling, v(w_sigma, A_i) = sigma(A_i), coherent preferences.
inline preferential_interpretation to_interpretation(const std::vector<std::string>& arguments,
                                                     const std::vector<labelling>& sigmas) {
  if (sigmas.empty()) throw model_error("no labellings to map");
  preferential_interpretation m;
  m.mode = pref_mode::coherent;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    m.worlds.push_back("w" + std::to_string(i + 1));
    std::map<std::string, degree> v;
    for (std::size_t a = 0; a < arguments.size(); ++a) v.emplace(arguments[a], sigmas[i][a]);
    m.valuation.push_back(std::move(v));
  }
  return m;
}

struct timeline_model {
  temporal_interpretation model;
  std::vector<labelling_lasso> runs;  // one per seed
};

/// One world per seed; the value of A_i in world s at time n is the seed's
/// trajectory at step n. The joint lasso takes the longest prefix and the lcm of loops.
inline timeline_model to_temporal_interpretation(const graph_timeline& tl, const scale& sc, std::size_t max_steps,
                                                 const update_rule& rule = step) {
  tl.validate();
  if (tl.seeds.empty()) throw model_error("timeline has no seeds");
  timeline_model out;
  std::size_t prefix = 0, loop = 1;
  for (const auto& s : tl.seeds) {
    out.runs.push_back(trajectory(tl, s, sc, max_steps, rule));
    prefix = std::max(prefix, out.runs.back().prefix);
    loop = std::lcm(loop, out.runs.back().loop);
  }
  std::vector<std::string> worlds;
  for (std::size_t i = 0; i < tl.seeds.size(); ++i) worlds.push_back("s" + std::to_string(i + 1));
  out.model = temporal_interpretation::shaped(std::move(worlds), prefix, loop, pref_mode::coherent);
  const auto& args = tl.first().arguments;
  for (std::size_t pos = 0; pos < prefix + loop; ++pos)
    for (std::size_t w = 0; w < tl.seeds.size(); ++w)
      for (std::size_t a = 0; a < args.size(); ++a) out.model.valuation[pos][w].emplace(args[a], out.runs[w].at(pos)[a]);
  return out;
}

}  // namespace mvtl
