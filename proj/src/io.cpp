#include "supkit/io.hpp"

#include <fstream>
#include <sstream>

#include "supkit/parser.hpp"

namespace supkit::io {

namespace {

std::vector<std::string> split_tuple(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto b = part.find_first_not_of(' ');
    const auto e = part.find_last_not_of(' ');
    out.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
  }
  return out;
}

std::string join_tuple(const Structure& m, std::size_t index, int arity) {
  std::vector<std::string> parts(arity);
  const std::size_t n = m.domain.size();
  for (int k = arity - 1; k >= 0; --k) {
    parts[k] = m.domain[index % n];
    index /= n;
  }
  std::string out;
  for (int k = 0; k < arity; ++k) out += (k ? "," : "") + parts[k];
  return out;
}

std::vector<int> tuple_of(const Structure& m, const std::vector<std::string>& ids) {
  std::vector<int> out;
  for (const std::string& id : ids) out.push_back(m.element(id));
  return out;
}

Formula parse_field(const json& j) {
  if (!j.is_string()) throw Error("expected a formula string, got " + j.dump());
  return parse(j.get<std::string>());
}

}  // namespace

json to_json(const Signature& sig) {
  json j;
  j["constants"] = sig.constants;
  j["functions"] = sig.functions;
  j["predicates"] = sig.predicates;
  j["props"] = sig.prop_atoms;
  return j;
}

Signature signature_from_json(const json& j) {
  Signature s;
  if (j.contains("constants")) s.constants = j.at("constants").get<std::set<std::string>>();
  if (j.contains("functions")) s.functions = j.at("functions").get<std::map<std::string, int>>();
  if (j.contains("predicates")) s.predicates = j.at("predicates").get<std::map<std::string, int>>();
  if (j.contains("props")) s.prop_atoms = j.at("props").get<std::set<std::string>>();
  s.validate();
  return s;
}

json to_json(const Structure& m) {
  json j;
  j["domain"] = m.domain;
  json consts = json::object();
  for (const auto& [c, i] : m.constants) consts[c] = m.domain.at(i);
  j["constants"] = consts;
  json fns = json::object();
  for (const auto& [name, fn] : m.functions) {
    json values = json::object();
    for (std::size_t i = 0; i < fn.values.size(); ++i) values[join_tuple(m, i, fn.arity)] = m.domain.at(fn.values[i]);
    fns[name] = {{"arity", fn.arity}, {"values", values}};
  }
  j["functions"] = fns;
  json preds = json::object();
  for (const auto& [name, rel] : m.predicates) {
    json holds = json::array();
    for (std::size_t i = 0; i < rel.holds.size(); ++i)
      if (rel.holds[i]) holds.push_back(split_tuple(join_tuple(m, i, rel.arity)));
    preds[name] = {{"arity", rel.arity}, {"holds", holds}};
  }
  j["predicates"] = preds;
  j["props"] = m.props;
  return j;
}

Structure structure_from_json(const json& j) {
  Structure m;
  const json& d = j.at("domain");
  if (d.is_number_integer()) {
    m = Structure::with_domain(d.get<int>());
  } else {
    m.domain = d.get<std::vector<std::string>>();
  }
  if (m.domain.empty()) throw EvalError("structure domain must be non-empty");
  if (j.contains("constants"))
    for (const auto& [c, id] : j.at("constants").items()) m.constants[c] = m.element(id.get<std::string>());
  std::size_t n = m.domain.size();
  auto power = [&](int arity) {
    std::size_t p = 1;
    for (int k = 0; k < arity; ++k) p *= n;
    return p;
  };
  if (j.contains("functions"))
    for (const auto& [name, spec] : j.at("functions").items()) {
      Structure::Function fn;
      fn.arity = spec.at("arity").get<int>();
      fn.values.assign(power(fn.arity), -1);
      for (const auto& [args, val] : spec.at("values").items())
        fn.values.at(m.tuple_index(tuple_of(m, split_tuple(args)))) = m.element(val.get<std::string>());
      m.functions[name] = std::move(fn);
    }
  if (j.contains("predicates"))
    for (const auto& [name, spec] : j.at("predicates").items()) {
      Structure::Relation rel;
      rel.arity = spec.at("arity").get<int>();
      rel.holds.assign(power(rel.arity), 0);
      for (const json& tup : spec.at("holds")) {
        const auto ids = tup.is_string() ? split_tuple(tup.get<std::string>()) : tup.get<std::vector<std::string>>();
        if (static_cast<int>(ids.size()) != rel.arity) throw EvalError("tuple of wrong arity for '" + name + "'");
        rel.holds.at(m.tuple_index(tuple_of(m, ids))) = 1;
      }
      m.predicates[name] = std::move(rel);
    }
  if (j.contains("props")) m.props = j.at("props").get<std::map<std::string, bool>>();
  m.validate();
  return m;
}

json to_json(const ChoiceTable& t) {
  json entries = json::array();
  for (const auto& [k, e] : t.entries())
    entries.push_back({{"pair", {print(e.first), print(e.second)}}, {"choice", print(e.chosen())}});
  return {{"mode", t.mode() == ChoiceMode::Sentence ? "sentence" : "formula"}, {"entries", entries}};
}

ChoiceTable table_from_json(const json& j) {
  const std::string mode = j.value("mode", "sentence");
  if (mode != "sentence" && mode != "formula") throw Error("table mode must be sentence or formula");
  ChoiceTable t(mode == "sentence" ? ChoiceMode::Sentence : ChoiceMode::Formula);
  for (const json& e : j.at("entries")) {
    const json& pair = e.at("pair");
    if (!pair.is_array() || pair.size() != 2) throw Error("table entry needs a two-element pair");
    const Formula a = parse_field(pair[0]), b = parse_field(pair[1]);
    const Formula c = parse_field(e.at("choice"));
    if (c.nkey() == a.nkey()) {
      t.set(a, b);
    } else if (c.nkey() == b.nkey()) {
      t.set(b, a);
    } else {
      throw Error("choice " + print(c) + " is not a member of its pair");
    }
  }
  return t;
}

json to_json(const Proof& p) {
  json j;
  j["system"] = to_string(p.system);
  json hyps = json::array();
  for (const Formula& h : p.hypotheses) hyps.push_back(print(h));
  j["hypotheses"] = hyps;
  json lines = json::array();
  for (const ProofLine& l : p.lines) {
    json x;
    x["formula"] = print(l.formula);
    switch (l.just.kind) {
      case Justification::Kind::Hypothesis:
        x["by"] = "hyp";
        break;
      case Justification::Kind::Axiom:
        x["by"] = "axiom";
        x["scheme"] = to_string(l.just.scheme);
        break;
      case Justification::Kind::MP:
        x["by"] = "mp";
        x["from"] = {l.just.from, l.just.from2};
        break;
      case Justification::Kind::GR:
        x["by"] = "gr";
        x["from"] = {l.just.from};
        break;
      case Justification::Kind::SV:
        x["by"] = "sv";
        x["from"] = {l.just.from};
        x["cert"] = to_json(*l.just.cert);
        break;
    }
    lines.push_back(x);
  }
  j["lines"] = lines;
  return j;
}

Proof proof_from_json(const json& j) {
  Proof p;
  p.system = parse_system(j.at("system").get<std::string>());
  if (j.contains("hypotheses"))
    for (const json& h : j.at("hypotheses")) p.hypotheses.push_back(parse_field(h));
  for (const json& x : j.at("lines")) {
    ProofLine l{parse_field(x.at("formula")), Justification::hyp()};
    const std::string by = x.at("by").get<std::string>();
    auto from = [&](std::size_t i) {
      const json& f = x.at("from");
      if (!f.is_array() || f.size() <= i) throw Error("line is missing its premise references");
      return f[i].get<int>();
    };
    if (by == "hyp") {
    } else if (by == "axiom") {
      l.just = Justification::axiom(parse_scheme(x.at("scheme").get<std::string>()));
    } else if (by == "mp") {
      l.just = Justification::mp(from(0), from(1));
    } else if (by == "gr") {
      l.just = Justification::gr(from(0));
    } else if (by == "sv") {
      l.just = Justification::sv(from(0), proof_from_json(x.at("cert")));
    } else {
      throw Error("unknown justification '" + by + "'");
    }
    p.lines.push_back(std::move(l));
  }
  return p;
}

TheoryFragment fragment_from_json(const json& j) {
  std::vector<Formula> in;
  for (const json& s : j.at("in")) in.push_back(parse_field(s));
  return make_fragment(in, j.value("domain", 1));
}

json to_json(const Verdict& v) {
  json j;
  j["result"] = v.valid ? "valid-over-space" : "countermodel";
  json space;
  space["semantics"] = to_string(v.space.semantics);
  space["domain_sizes"] = v.space.domain_sizes;
  space["signature"] = to_json(v.space.sig);
  space["class"] = to_string(v.spec.cls);
  space["oracle"] = v.spec.oracle ? v.spec.oracle->describe() : "none";
  space["structures"] = v.structures;
  space["table_runs"] = v.runs;
  space["description"] = v.space.describe();
  j["space"] = space;
  if (v.model) j["countermodel"] = {{"structure", to_json(*v.model)}, {"table", to_json(*v.table)}};
  return j;
}

json to_json(const UiWitness& w) {
  json terms = json::array();
  for (const Term& t : w.terms) terms.push_back(print(t));
  return {{"case", w.case_id},
          {"structure_name", w.structure_name},
          {"structure", to_json(w.structure)},
          {"table", to_json(w.table)},
          {"psi", print(w.psi)},
          {"closure", print(w.closure)},
          {"instance", print(w.instance)},
          {"terms", terms},
          {"closure_true", w.closure_true},
          {"instance_true", w.instance_true}};
}

json to_json(const UniformityTrace& t) {
  json branches = json::array();
  for (const UniformityBranch& b : t.branches)
    branches.push_back({{"chosen", print(b.chosen)},
                        {"swapped", print(b.swapped)},
                        {"chosen_on_swapped_pair", print(b.chosen_swapped)},
                        {"equivalent", b.equivalent},
                        {"contradiction", b.contradiction}});
  return {{"alpha_v1", print(t.a1)},
          {"alpha_v2", print(t.a2)},
          {"oracle", t.oracle},
          {"branches", branches},
          {"tables", t.tables},
          {"tables_satisfying", t.tables_satisfying}};
}

json to_json(const ObjectReport& r) {
  json rows = json::array();
  for (const ObjectTableRow& row : r.rows)
    rows.push_back({{"choices", row.choices},
                    {"witnesses", row.witnesses},
                    {"unique", row.unique},
                    {"regular", row.regular}});
  return {{"a", r.a}, {"b", r.b}, {"tables", rows}, {"part_i", r.part_i}, {"part_ii", r.part_ii}};
}

json to_json(const BuiltModel& b) {
  return {{"model", to_json(b.model)}, {"table", to_json(b.table)}, {"decisions", b.decisions}};
}

json to_json(const InterpolationReport& r) {
  return {{"depth", r.depth},         {"formulas", r.formulas},     {"pairs", r.pairs},
          {"runs", r.runs},           {"violations", r.violations}, {"first_violation", r.first_violation},
          {"seconds", r.seconds}};
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace supkit::io
