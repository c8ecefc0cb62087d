// mvtl: command-line front end for the many-valued temporal conditional logic engine.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <mvtl/argumentation.hpp>
#include <mvtl/entailment.hpp>
#include <mvtl/io.hpp>
#include <mvtl/weighted_kb.hpp>

using json = nlohmann::ordered_json;
using namespace mvtl;

namespace {

enum exit_code : int { ok = 0, unsat = 1, parse_failure = 2, semantic_failure = 3, guard_failure = 4 };

struct options {
  std::string algebra_name = "goedel";
  int scale_n = 2;
  bool as_json = false;

  // eval
  std::string model_file, formula_text, world;
  std::uint64_t time = 0;

  // check / prefs / arg-check
  std::string kb_file;
  std::vector<std::string> subjects;

  // entail / klm
  std::string query_text;
  std::size_t worlds = 1, prefix = 0, loop = 1;
  std::vector<std::string> props, pool;
  std::string prefs = "coherent";

  // argumentation
  std::string graph_file;
  std::size_t max_steps = 10000;
  bool emit_model = false;
};

algebra pick_algebra(const options& o) {
  auto a = algebra::by_name(o.algebra_name);
  if (!a) throw semantic_error("unknown algebra '" + o.algebra_name + "'");
  return *a;
}

scale pick_scale(const options& o) {
  if (o.scale_n < 1) throw semantic_error("--scale must be at least 1");
  return scale(o.scale_n);
}

void emit(const options& o, const json& doc, const std::string& text) {
  if (o.as_json)
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << text;
}

std::string world_list(const std::vector<std::string>& ws) {
  std::string s;
  for (std::size_t i = 0; i < ws.size(); ++i) s += (i ? " " : "") + ws[i];
  return s;
}

// {{{ commands

int cmd_eval(const options& o) {
  auto alg = pick_algebra(o);
  auto m = parse_temporal_interpretation(read_file(o.model_file));
  auto f = parse_formula(o.formula_text);
  std::vector<std::size_t> ws;
  if (!o.world.empty())
    ws.push_back(m.world_index(o.world));
  else
    for (std::size_t w = 0; w < m.size(); ++w) ws.push_back(w);
  temporal_evaluator ev(m, alg);
  json doc{{"command", "eval"}, {"formula", print_formula(f)}, {"time", o.time}, {"values", json::array()}};
  std::ostringstream out;
  for (auto w : ws) {
    auto d = ev.value(o.time, w, f);
    doc["values"].push_back({{"world", m.worlds[w]}, {"degree", d.str()}});
    if (ws.size() == 1)
      out << d.str() << "\n";
    else
      out << m.worlds[w] << " " << d.str() << "\n";
  }
  emit(o, doc, out.str());
  return ok;
}

int cmd_check(const options& o) {
  auto alg = pick_algebra(o);
  auto m = parse_temporal_interpretation(read_file(o.model_file));
  auto kb = parse_kb(read_file(o.kb_file));
  std::ostringstream out;
  json doc{{"command", "check"}, {"strict", json::array()}, {"mismatches", json::array()}};
  bool all = true;
  if (kb.weighted.empty()) {
    temporal_evaluator ev(m, alg);
    for (const auto& a : kb.strict) {
      bool sat = ev.msat(0, a);
      all &= sat;
      out << (sat ? "SAT " : "UNSAT ") << print_graded(a) << "\n";
      doc["strict"].push_back({{"formula", print_graded(a)}, {"sat", sat}});
    }
  } else {
    auto rep = check_weighted_satisfaction(m, kb, alg);
    for (const auto& [a, sat] : rep.strict) {
      out << (sat ? "SAT " : "UNSAT ") << print_graded(a) << "\n";
      doc["strict"].push_back({{"formula", print_graded(a)}, {"sat", sat}});
    }
    for (const auto& mm : rep.mismatches) {
      out << "MISMATCH t=" << mm.position << " key=\"" << mm.key << "\" " << m.worlds[mm.x] << " "
          << m.worlds[mm.y] << " expected=" << (mm.expected ? "preferred" : "not-preferred") << "\n";
      doc["mismatches"].push_back({{"position", mm.position},
                                   {"key", mm.key},
                                   {"x", m.worlds[mm.x]},
                                   {"y", m.worlds[mm.y]},
                                   {"expected", mm.expected}});
    }
    out << (rep.preferences_ok() ? "PREFS-OK" : "PREFS-MISMATCH") << "\n";
    all = rep.satisfied();
  }
  doc["satisfied"] = all;
  emit(o, doc, out.str());
  return all ? ok : unsat;
}

int cmd_coherence(const options& o) {
  auto alg = pick_algebra(o);
  auto tm = parse_temporal_interpretation(read_file(o.model_file));
  auto m = slice(tm, o.time);
  std::vector<formula> subjects;
  for (const auto& s : o.subjects) subjects.push_back(parse_formula(s));
  if (subjects.empty()) {
    if (m.mode == pref_mode::explicit_)
      for (const auto& [key, r] : m.prefs) subjects.push_back(parse_formula(key));
    else
      for (const auto& [p, d] : m.valuation.front()) subjects.push_back(formula::prop(p));
  }
  auto rep = check_coherence(m, subjects, alg);
  std::ostringstream out;
  json doc{{"command", "coherence"}, {"time", o.time}, {"entries", json::array()}};
  for (const auto& e : rep.entries) {
    const char* verdict = e.coherent ? "coherent" : e.faithful ? "faithful" : "unfaithful";
    out << "\"" << e.key << "\" " << verdict << (e.modular ? " modular" : " non-modular") << "\n";
    json je{{"key", e.key}, {"coherent", e.coherent}, {"faithful", e.faithful}, {"modular", e.modular}};
    je["faithfulness_violations"] = json::array();
    je["coherence_violations"] = json::array();
    for (auto [x, y] : e.faithfulness_violations) {
      out << "  faithfulness " << m.worlds[x] << " " << m.worlds[y] << "\n";
      je["faithfulness_violations"].push_back({m.worlds[x], m.worlds[y]});
    }
    for (auto [x, y] : e.coherence_violations) {
      out << "  coherence " << m.worlds[x] << " " << m.worlds[y] << "\n";
      je["coherence_violations"].push_back({m.worlds[x], m.worlds[y]});
    }
    doc["entries"].push_back(je);
  }
  doc["all_coherent"] = rep.all_coherent();
  emit(o, doc, out.str());
  return rep.all_coherent() ? ok : unsat;
}

int cmd_prefs(const options& o) {
  auto alg = pick_algebra(o);
  auto m = parse_temporal_interpretation(read_file(o.model_file));
  auto kb = parse_kb(read_file(o.kb_file));
  temporal_evaluator ev(m, alg);
  auto derived = derive_preferences(m, kb, alg);
  auto installed = install_preferences(m, derived);
  std::ostringstream out;
  json doc{{"command", "prefs"}, {"weights", json::array()}};
  for (const auto& s : kb.distinguished()) {
    auto key = formula_key(s);
    for (std::size_t pos = 0; pos < m.positions(); ++pos)
      for (std::size_t x = 0; x < m.size(); ++x) {
        auto w = world_weight(ev, kb, key, pos, x);
        out << "# weight t=" << pos << " key=\"" << key << "\" " << m.worlds[x] << " " << to_string(w) << "\n";
        doc["weights"].push_back({{"position", pos}, {"key", key}, {"world", m.worlds[x]}, {"weight", to_string(w)}});
      }
  }
  out << write_temporal_interpretation(installed);
  doc["model"] = write_temporal_interpretation(installed);
  emit(o, doc, out.str());
  return ok;
}

search_space make_space(const options& o) {
  search_space s;
  s.worlds = o.worlds;
  s.sc = pick_scale(o);
  s.props = o.props;
  s.prefix = o.prefix;
  s.loop = o.loop;
  s.alg = pick_algebra(o);
  if (o.prefs == "coherent")
    s.prefs = pref_enumeration::coherent_only;
  else if (o.prefs == "all")
    s.prefs = pref_enumeration::all_strict_orders;
  else
    throw semantic_error("--prefs takes coherent or all");
  if (s.worlds == 0) throw semantic_error("--worlds must be at least 1");
  if (s.loop == 0) throw semantic_error("--loop must be at least 1");
  return s;
}

int cmd_entail(const options& o) {
  auto s = make_space(o);
  weighted_kb kb;
  if (!o.kb_file.empty()) kb = parse_kb(read_file(o.kb_file));
  if (!kb.weighted.empty()) throw semantic_error("entail takes strict formulas only");
  auto q = parse_graded(o.query_text);
  auto v = entails(kb.strict, q, s);
  json doc{{"command", "entail"},
           {"query", print_graded(q)},
           {"entailed", v.entailed},
           {"space", v.space},
           {"models_checked", v.models_checked}};
  std::ostringstream out;
  if (v.entailed) {
    out << "ENTAILED (space: " << v.space << ")\n";
  } else {
    auto text = write_temporal_interpretation(*v.countermodel);
    out << "COUNTERMODEL (space: " << v.space << ")\n" << text;
    doc["countermodel"] = text;
  }
  emit(o, doc, out.str());
  return v.entailed ? ok : unsat;
}

int cmd_klm(const options& o) {
  auto s = make_space(o);
  std::vector<formula> pool;
  for (const auto& p : o.pool) pool.push_back(parse_formula(p));
  if (pool.empty()) pool = default_klm_pool();
  auto rep = klm_suite(s, pool);
  std::ostringstream out;
  json doc{{"command", "klm"}, {"space", rep.space}, {"postulates", json::array()}};
  out << "space: " << rep.space << "\n";
  bool all = true;
  for (const auto& r : rep.results) {
    all &= r.passed();
    out << to_string(r.which) << " " << (r.passed() ? "PASS" : "FAIL") << " instances=" << r.instances
        << " models=" << r.models_checked << " counterexamples=" << r.counterexamples;
    if (r.skipped) out << " skipped=" << r.skipped;
    out << "\n";
    json jr{{"postulate", to_string(r.which)},
            {"passed", r.passed()},
            {"instances", r.instances},
            {"models_checked", r.models_checked},
            {"counterexamples", r.counterexamples},
            {"skipped", r.skipped}};
    if (r.first) {
      const auto& c = *r.first;
      out << "  A=" << c.a << " B=" << c.b << " C=" << c.c << "\n";
      for (const auto& p : c.premises) out << "  premise " << p << "\n";
      out << "  conclusion " << c.conclusion << "\n";
      std::istringstream model(write_temporal_interpretation(c.model));
      for (std::string line; std::getline(model, line);) out << "  | " << line << "\n";
      jr["first"] = {{"A", c.a},
                     {"B", c.b},
                     {"C", c.c},
                     {"premises", c.premises},
                     {"conclusion", c.conclusion},
                     {"model", write_temporal_interpretation(c.model)}};
    }
    doc["postulates"].push_back(jr);
  }
  emit(o, doc, out.str());
  return all ? ok : unsat;
}

int cmd_arg_run(const options& o) {
  auto sc = pick_scale(o);
  auto tl = parse_graph_timeline(read_file(o.graph_file));
  if (tl.seeds.empty()) throw model_error("graph file has no seed lines");
  auto tm = to_temporal_interpretation(tl, sc, o.max_steps);
  const auto& args = tl.first().arguments;
  std::ostringstream out;
  json doc{{"command", "arg-run"}, {"semantics", shipped_semantics_name}, {"runs", json::array()}};
  out << "# semantics: " << shipped_semantics_name << "\n";
  for (std::size_t i = 0; i < tm.runs.size(); ++i) {
    const auto& run = tm.runs[i];
    out << "run " << tm.model.worlds[i] << " prefix=" << run.prefix << " loop=" << run.loop << "\n";
    json jr{{"world", tm.model.worlds[i]}, {"prefix", run.prefix}, {"loop", run.loop}, {"states", json::array()}};
    for (std::size_t t = 0; t < run.states.size(); ++t) {
      out << "  t=" << t << " " << write_labelling(args, run.states[t]) << "\n";
      json js;
      for (std::size_t a = 0; a < args.size(); ++a) js[args[a]] = run.states[t][a].str();
      jr["states"].push_back(js);
    }
    doc["runs"].push_back(jr);
  }
  if (o.emit_model) {
    out << write_temporal_interpretation(tm.model);
    doc["model"] = write_temporal_interpretation(tm.model);
  }
  emit(o, doc, out.str());
  return ok;
}

int cmd_arg_fixpoints(const options& o) {
  auto sc = pick_scale(o);
  auto tl = parse_graph_timeline(read_file(o.graph_file));
  const auto& g = tl.blocks.back().second;
  auto fps = fixpoints(g, sc);
  std::ostringstream out;
  json doc{{"command", "arg-fixpoints"}, {"semantics", shipped_semantics_name}, {"fixpoints", json::array()}};
  out << "# semantics: " << shipped_semantics_name << "\n";
  for (const auto& f : fps) {
    out << "fixpoint " << write_labelling(g.arguments, f) << "\n";
    json jf;
    for (std::size_t a = 0; a < g.size(); ++a) jf[g.arguments[a]] = f[a].str();
    doc["fixpoints"].push_back(jf);
  }
  if (o.emit_model && !fps.empty()) {
    auto m = to_interpretation(g.arguments, fps);
    out << write_interpretation(m);
    doc["model"] = write_interpretation(m);
  }
  emit(o, doc, out.str());
  return ok;
}

int cmd_arg_check(const options& o) {
  auto alg = pick_algebra(o);
  auto sc = pick_scale(o);
  auto tl = parse_graph_timeline(read_file(o.graph_file));
  std::vector<graded_formula> fs;
  if (!o.kb_file.empty()) {
    auto kb = parse_kb(read_file(o.kb_file));
    if (!kb.weighted.empty()) throw semantic_error("arg-check takes strict formulas only");
    fs = kb.strict;
  }
  if (!o.query_text.empty()) fs.push_back(parse_graded(o.query_text));
  if (fs.empty()) throw semantic_error("arg-check needs a KB file or --formula");
  auto tm = to_temporal_interpretation(tl, sc, o.max_steps);
  temporal_evaluator ev(tm.model, alg);
  std::ostringstream out;
  json doc{{"command", "arg-check"},
           {"semantics", shipped_semantics_name},
           {"worlds", tm.model.worlds},
           {"prefix", tm.model.prefix},
           {"loop", tm.model.loop},
           {"results", json::array()}};
  out << "# semantics: " << shipped_semantics_name << "\n";
  out << "# worlds " << world_list(tm.model.worlds) << " prefix=" << tm.model.prefix << " loop=" << tm.model.loop
      << "\n";
  bool all = true;
  for (const auto& a : fs) {
    bool sat = ev.msat(0, a);
    all &= sat;
    out << (sat ? "SAT " : "UNSAT ") << print_graded(a) << "\n";
    doc["results"].push_back({{"formula", print_graded(a)}, {"sat", sat}});
  }
  doc["satisfied"] = all;
  emit(o, doc, out.str());
  return all ? ok : unsat;
}

// }}}

int exit_for(const error& e) {
  switch (e.cls()) {
    case error_class::syntax: return parse_failure;
    case error_class::semantic: return semantic_failure;
    case error_class::guard: return guard_failure;
  }
  return semantic_failure;
}

void report(const options& o, const char* kind, const std::string& message) {
  std::cerr << "error: " << message << "\n";
  if (o.as_json) std::cout << json{{"error", kind}, {"message", message}}.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  options o;
  CLI::App app{"Reasoning engine for a many-valued temporal conditional logic with typicality"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto algebra_flag = [&](CLI::App* c) {
    c->add_option("--algebra", o.algebra_name, "goedel or zadeh")->capture_default_str();
  };
  auto scale_flag = [&](CLI::App* c) { c->add_option("--scale", o.scale_n, "truth scale C_n")->capture_default_str(); };
  auto json_flag = [&](CLI::App* c) { c->add_flag("--json", o.as_json, "emit JSON"); };
  auto space_flags = [&](CLI::App* c) {
    algebra_flag(c);
    scale_flag(c);
    json_flag(c);
    c->add_option("--worlds", o.worlds, "number of worlds")->capture_default_str();
    c->add_option("--prefix", o.prefix, "lasso prefix length")->capture_default_str();
    c->add_option("--loop", o.loop, "lasso loop length")->capture_default_str();
    c->add_option("--props", o.props, "extra propositions")->delimiter(',');
    c->add_option("--prefs", o.prefs, "coherent or all")->capture_default_str();
  };

  auto* eval = app.add_subcommand("eval", "degree of a formula in a model");
  eval->add_option("model", o.model_file)->required();
  eval->add_option("formula", o.formula_text)->required();
  eval->add_option("--world", o.world, "world name (default: every world)");
  eval->add_option("--time", o.time, "time point")->capture_default_str();
  algebra_flag(eval);
  json_flag(eval);

  auto* check = app.add_subcommand("check", "check a model against a knowledge base");
  check->add_option("model", o.model_file)->required();
  check->add_option("kb", o.kb_file)->required();
  algebra_flag(check);
  json_flag(check);

  auto* coherence = app.add_subcommand("coherence", "coherence and faithfulness of preferences");
  coherence->add_option("model", o.model_file)->required();
  coherence->add_option("--subject", o.subjects, "formula whose preference is checked (repeatable)");
  coherence->add_option("--time", o.time, "time point")->capture_default_str();
  algebra_flag(coherence);
  json_flag(coherence);

  auto* prefs = app.add_subcommand("prefs", "derive preferences from weighted conditionals");
  prefs->add_option("model", o.model_file)->required();
  prefs->add_option("kb", o.kb_file)->required();
  algebra_flag(prefs);
  json_flag(prefs);

  auto* entail = app.add_subcommand("entail", "decide entailment over a finite model space");
  entail->add_option("kb", o.kb_file, "KB file with strict formulas")->required();
  entail->add_option("query", o.query_text)->required();
  space_flags(entail);

  auto* klm = app.add_subcommand("klm", "check the KLM postulates over a finite model space");
  space_flags(klm);
  klm->add_option("--pool", o.pool, "formula pool (repeatable)");

  auto* arg_run = app.add_subcommand("arg-run", "iterate the gradual semantics from each seed");
  arg_run->add_option("graph", o.graph_file)->required();
  arg_run->add_option("--max-steps", o.max_steps)->capture_default_str();
  arg_run->add_flag("--model", o.emit_model, "also print the temporal interpretation");
  scale_flag(arg_run);
  json_flag(arg_run);

  auto* arg_fix = app.add_subcommand("arg-fixpoints", "enumerate fixed-point labellings");
  arg_fix->add_option("graph", o.graph_file)->required();
  arg_fix->add_flag("--model", o.emit_model, "also print the preferential interpretation");
  scale_flag(arg_fix);
  json_flag(arg_fix);

  auto* arg_check = app.add_subcommand("arg-check", "check formulas on the temporal model of a graph timeline");
  arg_check->add_option("graph", o.graph_file)->required();
  arg_check->add_option("kb", o.kb_file, "KB file with strict formulas");
  arg_check->add_option("--formula", o.query_text, "a single temporal graded formula");
  arg_check->add_option("--max-steps", o.max_steps)->capture_default_str();
  algebra_flag(arg_check);
  scale_flag(arg_check);
  json_flag(arg_check);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? ok : parse_failure;
  }

  try {
    if (*eval) return cmd_eval(o);
    if (*check) return cmd_check(o);
    if (*coherence) return cmd_coherence(o);
    if (*prefs) return cmd_prefs(o);
    if (*entail) return cmd_entail(o);
    if (*klm) return cmd_klm(o);
    if (*arg_run) return cmd_arg_run(o);
    if (*arg_fix) return cmd_arg_fixpoints(o);
    if (*arg_check) return cmd_arg_check(o);
  } catch (const error& e) {
    report(o, e.cls() == error_class::syntax ? "syntax" : e.cls() == error_class::guard ? "guard" : "semantic",
           e.what());
    return exit_for(e);
  } catch (const std::invalid_argument& e) {
    report(o, "semantic", e.what());
    return semantic_failure;
  }
  return ok;
}
