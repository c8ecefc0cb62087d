#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "argumentation.hpp"
#include "errors.hpp"
#include "parser.hpp"
#include "preferential.hpp"
#include "temporal.hpp"
#include "weighted_kb.hpp"

namespace mvtl {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

/// Non-blank, non-comment lines with their 1-based line numbers.
inline std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line = 0;
  while (!text.empty()) {
    ++line;
    auto nl = text.find('\n');
    auto raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    auto t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    out.emplace_back(line, t);
  }
  return out;
}

/// Whitespace-separated words; a double-quoted word keeps its spaces (quotes stripped).
inline std::vector<std::string_view> words(std::string_view s, std::size_t line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (s[i] == ' ' || s[i] == '\t') {
      ++i;
      continue;
    }
    if (s[i] == '"') {
      auto close = s.find('"', i + 1);
      if (close == std::string_view::npos) throw syntax_error::in_line(line, "unterminated quote");
      out.push_back(s.substr(i + 1, close - i - 1));
      i = close + 1;
      continue;
    }
    auto j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

/// Splits "key=value"; returns false when the word has no '='.
inline bool split_assign(std::string_view w, std::string_view& key, std::string_view& value) {
  auto eq = w.find('=');
  if (eq == std::string_view::npos) return false;
  key = w.substr(0, eq);
  value = w.substr(eq + 1);
  return true;
}

inline std::size_t parse_count(std::string_view s, std::size_t line, std::string_view what) {
  if (s.empty() || s.size() > 9 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw syntax_error::in_line(line, "expected a non-negative integer for " + std::string(what));
  return static_cast<std::size_t>(std::stoul(std::string(s)));
}

inline degree parse_degree_or_throw(std::string_view s, std::size_t line) {
  auto d = degree::parse(s);
  if (!d) throw syntax_error::in_line(line, "malformed degree '" + std::string(s) + "'");
  return *d;
}

inline rational parse_weight_or_throw(std::string_view s, std::size_t line) {
  auto r = parse_rational(trim(s));
  if (!r) throw syntax_error::in_line(line, "malformed weight '" + std::string(s) + "'");
  return *r;
}

template <typename Fn>
auto with_line(std::size_t line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nested_typicality_error& e) {
    throw nested_typicality_error(e, line);
  } catch (const threshold_range_error& e) {
    throw threshold_range_error(e, line);
  } catch (const syntax_error& e) {
    throw syntax_error::in_line(line, e.what());
  }
}

/// "weighted(<subject>): <consequent> : <weight>"
inline weighted_conditional parse_weighted_line(std::string_view s, std::size_t line) {
  constexpr std::string_view head = "weighted(";
  if (!starts_with(s, head)) throw syntax_error::in_line(line, "expected 'weighted('");
  int depth = 1;
  std::size_t i = head.size();
  for (; i < s.size() && depth > 0; ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
  }
  if (depth != 0) throw syntax_error::in_line(line, "unbalanced parentheses in weighted conditional");
  auto subject_text = s.substr(head.size(), i - 1 - head.size());
  auto rest = trim(s.substr(i));
  if (rest.empty() || rest.front() != ':') throw syntax_error::in_line(line, "expected ':' after weighted(...)");
  rest.remove_prefix(1);
  auto last = rest.rfind(':');
  if (last == std::string_view::npos) throw syntax_error::in_line(line, "expected ': <weight>'");
  weighted_conditional c;
  c.subject = with_line(line, [&] { return parse_formula(subject_text); });
  c.consequent = with_line(line, [&] { return parse_formula(rest.substr(0, last)); });
  if (c.subject.contains_typ() || c.consequent.contains_typ())
    throw syntax_error::in_line(line, "weighted conditionals may not contain T");
  c.weight = parse_weight_or_throw(rest.substr(last + 1), line);
  return c;
}

inline std::string quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace detail

// {{{ interpretations

/// Reads the interpretation file format:
///   worlds w1 w2 ...
///   lasso prefix=<p> loop=<l>                       (optional; default prefix=0 loop=1)
///   prefmode coherent|explicit|weighted
///   val [t=<pos>] w=<id> <prop>=<degree> ...        (no t= means every position)
///   pref [t=<pos>] "<formula>" : wi < wj, ...       (no t= means every position)
///   weighted(<formula>): <formula> : <weight>       (conditionals for weighted mode)
inline temporal_interpretation parse_temporal_interpretation(std::string_view text) {
  using namespace detail;
  auto lines = content_lines(text);
  std::vector<std::string> worlds;
  std::size_t prefix = 0, loop = 1;
  pref_mode mode = pref_mode::coherent;
  bool have_worlds = false;
  for (auto [ln, s] : lines) {
    auto ws = words(s, ln);
    if (ws[0] == "worlds") {
      if (have_worlds) throw syntax_error::in_line(ln, "duplicate 'worlds' line");
      have_worlds = true;
      for (std::size_t i = 1; i < ws.size(); ++i) worlds.emplace_back(ws[i]);
    } else if (ws[0] == "lasso") {
      for (std::size_t i = 1; i < ws.size(); ++i) {
        std::string_view k, v;
        if (!split_assign(ws[i], k, v)) throw syntax_error::in_line(ln, "expected prefix=<p> loop=<l>");
        if (k == "prefix") prefix = parse_count(v, ln, "prefix");
        else if (k == "loop") loop = parse_count(v, ln, "loop");
        else throw syntax_error::in_line(ln, "unknown lasso field '" + std::string(k) + "'");
      }
      if (loop == 0) throw syntax_error::in_line(ln, "loop length must be positive");
    } else if (ws[0] == "prefmode") {
      if (ws.size() != 2) throw syntax_error::in_line(ln, "expected prefmode coherent|explicit|weighted");
      if (ws[1] == "coherent") mode = pref_mode::coherent;
      else if (ws[1] == "explicit") mode = pref_mode::explicit_;
      else if (ws[1] == "weighted") mode = pref_mode::weighted;
      else throw syntax_error::in_line(ln, "unknown prefmode '" + std::string(ws[1]) + "'");
    }
  }
  if (!have_worlds) throw syntax_error::in_line(lines.empty() ? 1 : lines.front().first, "missing 'worlds' line");
  if (worlds.empty()) throw model_error("interpretation has no worlds");

  auto m = temporal_interpretation::shaped(worlds, prefix, loop, mode);
  auto positions_of = [&](std::optional<std::size_t> t, std::size_t ln) {
    std::vector<std::size_t> out;
    if (!t) {
      for (std::size_t p = 0; p < m.positions(); ++p) out.push_back(p);
    } else {
      if (*t >= m.positions())
        throw model_error("line " + std::to_string(ln) + ": position " + std::to_string(*t) +
                          " is outside the lasso (" + std::to_string(m.positions()) + " positions)");
      out.push_back(*t);
    }
    return out;
  };

  for (auto [ln, s] : lines) {
    if (starts_with(s, "weighted(")) {
      m.weighted.push_back(parse_weighted_line(s, ln));
      continue;
    }
    auto ws = words(s, ln);
    if (ws[0] == "worlds" || ws[0] == "lasso" || ws[0] == "prefmode") continue;
    if (ws[0] == "val") {
      std::optional<std::size_t> t;
      std::optional<std::size_t> w;
      std::vector<std::pair<std::string, degree>> assigns;
      for (std::size_t i = 1; i < ws.size(); ++i) {
        std::string_view k, v;
        if (!split_assign(ws[i], k, v)) throw syntax_error::in_line(ln, "expected <prop>=<degree>");
        if (k == "t") t = parse_count(v, ln, "t");
        else if (k == "w") w = m.world_index(v);
        else {
          if (!is_identifier(k)) throw syntax_error::in_line(ln, "invalid proposition '" + std::string(k) + "'");
          assigns.emplace_back(std::string(k), parse_degree_or_throw(v, ln));
        }
      }
      if (!w) throw syntax_error::in_line(ln, "val line needs w=<world>");
      for (auto pos : positions_of(t, ln))
        for (const auto& [p, d] : assigns) m.valuation[pos][*w][p] = d;
    } else if (ws[0] == "pref") {
      std::size_t i = 1;
      std::optional<std::size_t> t;
      std::string_view k, v;
      if (i < ws.size() && split_assign(ws[i], k, v) && k == "t") {
        t = parse_count(v, ln, "t");
        ++i;
      }
      // the formula is the quoted word; recover it from the raw line to keep its text intact
      auto q1 = s.find('"');
      auto q2 = q1 == std::string_view::npos ? q1 : s.find('"', q1 + 1);
      if (q2 == std::string_view::npos) throw syntax_error::in_line(ln, "pref needs a quoted formula");
      auto f = with_line(ln, [&] { return parse_formula(s.substr(q1 + 1, q2 - q1 - 1)); });
      auto key = formula_key(f);
      auto rest = trim(s.substr(q2 + 1));
      if (rest.empty() || rest.front() != ':') throw syntax_error::in_line(ln, "expected ':' after the formula");
      rest = trim(rest.substr(1));
      std::vector<std::pair<std::size_t, std::size_t>> pairs;
      while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = trim(rest.substr(0, comma));
        rest = comma == std::string_view::npos ? std::string_view{} : trim(rest.substr(comma + 1));
        auto lt = item.find('<');
        if (lt == std::string_view::npos) throw syntax_error::in_line(ln, "expected '<world> < <world>'");
        pairs.emplace_back(m.world_index(trim(item.substr(0, lt))), m.world_index(trim(item.substr(lt + 1))));
      }
      for (auto pos : positions_of(t, ln)) {
        auto [it, fresh] = m.prefs[pos].try_emplace(key, m.size());
        for (auto [a, b] : pairs) it->second.insert(a, b);
      }
    } else {
      throw syntax_error::in_line(ln, "unknown directive '" + std::string(ws[0]) + "'");
    }
  }
  m.validate();
  return m;
}

/// Non-temporal interpretation file: the same format with a single position.
inline preferential_interpretation parse_interpretation(std::string_view text) {
  auto t = parse_temporal_interpretation(text);
  if (t.positions() != 1) throw model_error("expected a non-temporal interpretation (one time position)");
  return slice(t, 0);
}

namespace detail {

inline void write_valuation_line(std::ostringstream& os, std::string_view t_prefix, const std::string& world,
                                 const std::map<std::string, degree>& vals) {
  os << "val " << t_prefix << "w=" << world;
  for (const auto& [p, d] : vals) os << ' ' << p << '=' << d.str();
  os << '\n';
}

inline void write_pref_line(std::ostringstream& os, std::string_view t_prefix, const std::string& key,
                            const strict_order& r, const std::vector<std::string>& worlds) {
  os << "pref " << t_prefix << quote(key) << " :";
  bool first = true;
  for (auto [a, b] : r.pairs()) {
    os << (first ? " " : ", ") << worlds[a] << " < " << worlds[b];
    first = false;
  }
  os << '\n';
}

inline void write_weighted(std::ostringstream& os, const std::vector<weighted_conditional>& ws) {
  for (const auto& c : ws)
    os << "weighted(" << print_formula(c.subject) << "): " << print_formula(c.consequent) << " : "
       << to_string(c.weight) << '\n';
}

}  // namespace detail

/// Writes m so that parse_temporal_interpretation reads back an equal model.
inline std::string write_temporal_interpretation(const temporal_interpretation& m) {
  std::ostringstream os;
  os << "worlds";
  for (const auto& w : m.worlds) os << ' ' << w;
  os << "\nlasso prefix=" << m.prefix << " loop=" << m.loop << '\n';
  os << "prefmode " << to_string(m.mode) << '\n';
  for (std::size_t pos = 0; pos < m.positions(); ++pos) {
    auto t = "t=" + std::to_string(pos) + " ";
    for (std::size_t w = 0; w < m.size(); ++w) detail::write_valuation_line(os, t, m.worlds[w], m.valuation[pos][w]);
    for (const auto& [key, r] : m.prefs[pos]) detail::write_pref_line(os, t, key, r, m.worlds);
  }
  detail::write_weighted(os, m.weighted);
  return os.str();
}

inline std::string write_interpretation(const preferential_interpretation& m) {
  std::ostringstream os;
  os << "worlds";
  for (const auto& w : m.worlds) os << ' ' << w;
  os << "\nprefmode " << to_string(m.mode) << '\n';
  for (std::size_t w = 0; w < m.size(); ++w) detail::write_valuation_line(os, "", m.worlds[w], m.valuation[w]);
  for (const auto& [key, r] : m.prefs) detail::write_pref_line(os, "", key, r, m.worlds);
  detail::write_weighted(os, m.weighted);
  return os.str();
}

inline bool operator==(const temporal_interpretation& a, const temporal_interpretation& b) {
  return a.worlds == b.worlds && a.prefix == b.prefix && a.loop == b.loop && a.valuation == b.valuation &&
         a.prefs == b.prefs && a.mode == b.mode && write_temporal_interpretation(a) == write_temporal_interpretation(b);
}

// }}}

// {{{ knowledge bases

///   strict: <graded formula>
///   weighted(<formula>): <formula> : <weight>
inline weighted_kb parse_kb(std::string_view text) {
  using namespace detail;
  weighted_kb kb;
  for (auto [ln, s] : content_lines(text)) {
    if (starts_with(s, "strict:")) {
      auto body = s.substr(7);
      kb.strict.push_back(with_line(ln, [&] { return parse_graded(body); }));
    } else if (starts_with(s, "weighted(")) {
      kb.weighted.push_back(parse_weighted_line(s, ln));
    } else {
      throw syntax_error::in_line(ln, "expected 'strict:' or 'weighted(...)'");
    }
  }
  return kb;
}

inline std::string write_kb(const weighted_kb& kb) {
  std::ostringstream os;
  for (const auto& a : kb.strict) os << "strict: " << print_graded(a) << '\n';
  detail::write_weighted(os, kb.weighted);
  return os.str();
}

// }}}

// {{{ argumentation graphs

///   arg <name> base=<degree>
///   edge <from> <to> weight=<rational>
///   seed <arg>=<degree> ...
///   @t=<step>        starts a new graph block that inherits the previous one
inline graph_timeline parse_graph_timeline(std::string_view text) {
  using namespace detail;
  graph_timeline tl;
  tl.blocks.emplace_back(0, arg_graph{});
  std::vector<std::pair<std::size_t, std::vector<std::pair<std::string, degree>>>> raw_seeds;
  for (auto [ln, s] : content_lines(text)) {
    auto ws = words(s, ln);
    auto& g = tl.blocks.back().second;
    if (starts_with(ws[0], "@t=")) {
      auto t = parse_count(ws[0].substr(3), ln, "@t");
      if (t == 0 && tl.blocks.size() == 1 && g.size() == 0) continue;
      if (t <= tl.blocks.back().first) throw syntax_error::in_line(ln, "@t steps must increase");
      arg_graph copy = g;
      tl.blocks.emplace_back(t, std::move(copy));
    } else if (ws[0] == "arg") {
      if (ws.size() < 2) throw syntax_error::in_line(ln, "arg needs a name");
      degree base = degree::zero();
      for (std::size_t i = 2; i < ws.size(); ++i) {
        std::string_view k, v;
        if (!split_assign(ws[i], k, v) || k != "base") throw syntax_error::in_line(ln, "expected base=<degree>");
        base = parse_degree_or_throw(v, ln);
      }
      if (tl.blocks.size() > 1 && !g.find(ws[1]))
        throw model_error("line " + std::to_string(ln) + ": later graph blocks cannot add arguments");
      g.add_argument(std::string(ws[1]), base);
    } else if (ws[0] == "edge") {
      if (ws.size() != 4) throw syntax_error::in_line(ln, "expected edge <from> <to> weight=<rational>");
      std::string_view k, v;
      if (!split_assign(ws[3], k, v) || k != "weight") throw syntax_error::in_line(ln, "expected weight=<rational>");
      g.set_edge(g.index_of(ws[1]), g.index_of(ws[2]), parse_weight_or_throw(v, ln));
    } else if (ws[0] == "seed") {
      std::vector<std::pair<std::string, degree>> vals;
      for (std::size_t i = 1; i < ws.size(); ++i) {
        std::string_view k, v;
        if (!split_assign(ws[i], k, v)) throw syntax_error::in_line(ln, "expected <arg>=<degree>");
        vals.emplace_back(std::string(k), parse_degree_or_throw(v, ln));
      }
      raw_seeds.emplace_back(ln, std::move(vals));
    } else {
      throw syntax_error::in_line(ln, "unknown directive '" + std::string(ws[0]) + "'");
    }
  }
  const auto& args = tl.first();
  for (const auto& [ln, vals] : raw_seeds) {
    labelling sigma(args.size(), degree::zero());
    std::vector<bool> set(args.size(), false);
    for (const auto& [name, d] : vals) {
      auto i = args.index_of(name);
      sigma[i] = d;
      set[i] = true;
    }
    if (std::find(set.begin(), set.end(), false) != set.end())
      throw model_error("line " + std::to_string(ln) + ": seed must give every argument a value");
    tl.seeds.push_back(std::move(sigma));
  }
  tl.validate();
  return tl;
}

inline std::string write_labelling(const std::vector<std::string>& args, const labelling& sigma) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ' ';
    out += args[i] + "=" + sigma[i].str();
  }
  return out;
}

// }}}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw semantic_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace mvtl
