// supkit command-line front end. Exit codes: 0 success or valid, 1 countermodel
// or rejection, 2 usage or I/O error.
#include <CLI11.hpp>
#include <iostream>
#include <optional>

#include "supkit/constructions.hpp"
#include "supkit/io.hpp"
#include "supkit/parser.hpp"
#include "supkit/proofs.hpp"
#include "supkit/semantics.hpp"

using namespace supkit;
using io::json;

namespace {

struct Globals {
  bool json_out = false;
  int jobs = 1;
  int oracle_bound = 0;
  int max_domain = 3;
};

int bound(const Globals& g) { return g.oracle_bound > 0 ? g.oracle_bound : oracle_bound_from_env(3); }

void emit(const Globals& g, const json& j, const std::string& text) {
  if (g.json_out) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string describe_structure(const Structure& m) {
  std::string out = "  domain {";
  for (std::size_t i = 0; i < m.domain.size(); ++i) out += (i ? ", " : "") + m.domain[i];
  out += "}\n";
  const json j = io::to_json(m);
  for (const char* part : {"constants", "functions", "predicates", "props"})
    if (!j[part].empty()) out += std::string("  ") + part + " " + j[part].dump() + "\n";
  return out;
}

std::string describe_table(const ChoiceTable& t) {
  std::string out;
  for (const auto& [k, e] : t.entries())
    out += "  f(" + print(e.first) + ", " + print(e.second) + ") = " + print(e.chosen()) + "\n";
  if (out.empty()) out = "  (empty)\n";
  return out;
}

int report_verdict(const Globals& g, const Verdict& v) {
  std::string text;
  if (v.valid) {
    text = "valid over " + v.space.describe() + " (class " + to_string(v.spec.cls) + ", " +
           std::to_string(v.structures) + " structures, " + std::to_string(v.runs) + " table runs)\n";
  } else {
    text = "countermodel over " + v.space.describe() + " (class " + to_string(v.spec.cls) + ")\nstructure\n" +
           describe_structure(*v.model) + "table\n" + describe_table(*v.table);
  }
  emit(g, io::to_json(v), text);
  return v.valid ? 0 : 1;
}

Semantics semantics_of(bool fcs) { return fcs ? Semantics::FCS : Semantics::SCS; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"supkit: superposition logic toolkit"};
  app.require_subcommand(1);
  Globals g;
  app.add_flag("--json", g.json_out, "Emit JSON reports");
  app.add_option("--jobs", g.jobs, "Worker threads for consequence checking")->check(CLI::PositiveNumber);
  app.add_option("--oracle-bound", g.oracle_bound, "Domain bound of the first-order equivalence oracle")
      ->check(CLI::Range(1, 15));
  app.add_option("--max-domain", g.max_domain, "Largest domain searched for first-order tasks")
      ->check(CLI::Range(1, 8));

  std::string formula;
  std::string table_path, model_path, proof_path, theory_path, cls_name = "all";
  std::vector<std::string> premises;
  bool scs = false, fcs = false, unrestricted = false, open_hyps = false, semantic = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and pretty-print a formula");
  parse_cmd->add_option("formula,--formula,-f", formula)->required();

  auto* classify_cmd = app.add_subcommand("classify", "Classical, basic, restricted or unrestricted");
  classify_cmd->add_option("formula,--formula,-f", formula)->required();

  auto* collapse_cmd = app.add_subcommand("collapse", "Collapse a formula under a choice table");
  collapse_cmd->add_option("formula,--formula,-f", formula)->required();
  collapse_cmd->add_option("--table", table_path)->required();

  auto* eval_cmd = app.add_subcommand("eval", "Truth of a sentence in a structure under a table");
  eval_cmd->add_option("formula,--formula,-f", formula)->required();
  auto* scs_flag = eval_cmd->add_flag("--scs", scs, "Sentence choice semantics");
  eval_cmd->add_flag("--fcs", fcs, "Formula choice semantics")->excludes(scs_flag);
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--table", table_path);

  auto* cons_cmd = app.add_subcommand("consequence", "Bounded check of premises |= formula");
  cons_cmd->add_option("formula,--formula,-f", formula)->required();
  cons_cmd->add_option("--premise,-p", premises);
  cons_cmd->add_option("--class", cls_name)->check(CLI::IsMember({"all", "reg", "asso", "regstar", "dec"}));
  cons_cmd->add_flag("--fcs", fcs, "Formula choice semantics (default SCS)");

  auto* taut_cmd = app.add_subcommand("taut", "Bounded tautology check");
  taut_cmd->add_option("formula,--formula,-f", formula);
  taut_cmd->add_option("--class", cls_name)->check(CLI::IsMember({"all", "reg", "asso", "regstar", "dec"}));
  taut_cmd->add_flag("--fcs", fcs, "Formula choice semantics (default SCS)");

  auto* proof_cmd = app.add_subcommand("check-proof", "Check a proof file");
  proof_cmd->add_option("proof", proof_path)->required();
  proof_cmd->add_flag("--unrestricted", unrestricted, "Allow unrestricted lines in first-order proofs");
  proof_cmd->add_flag("--open-hypotheses", open_hyps, "Allow hypotheses with free variables");
  proof_cmd->add_flag("--semantic", semantic, "Also check the conclusion in the sound class");

  auto* demo = app.add_subcommand("demo", "Constructions");
  demo->require_subcommand(1);
  int case_id = 0, depth = 2, size = 2;
  std::string alpha = "P(v)";
  auto* ui = demo->add_subcommand("ui-failure", "Universal instantiation fails under FCS");
  ui->add_option("--case", case_id)->check(CLI::Range(1, 4));
  auto* uig = demo->add_subcommand("ui-failure-general", "Two-formula version with a binary relation");
  uig->add_option("--case", case_id)->check(CLI::Range(1, 4));
  auto* nu = demo->add_subcommand("no-uniform", "No choice function is uniform");
  nu->add_option("--alpha", alpha);
  auto* obj = demo->add_subcommand("object-superposition", "Unique witnesses of (v=a)|(v=b)");
  obj->add_option("--size", size)->check(CLI::Range(2, 4));
  auto* bm = demo->add_subcommand("build-model", "Choice function from a complete fragment");
  bm->add_option("--theory", theory_path)->required();
  bm->add_option("--class", cls_name)->check(CLI::IsMember({"all", "reg"}));
  auto* interp = demo->add_subcommand("interpolation", "phi/\\psi => phi|psi => phi\\/psi on small sentences");
  interp->add_option("--depth", depth)->check(CLI::Range(0, 2));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse_cmd) {
      const Formula f = parse(formula);
      emit(g,
           {{"formula", print(f)}, {"class", to_string(classify(f))}, {"signature", io::to_json(infer_signature({f}))}},
           print(f) + "\n");
      return 0;
    }
    if (*classify_cmd) {
      const Formula f = parse(formula);
      const std::string c = to_string(classify(f));
      emit(g, {{"formula", print(f)}, {"class", c}, {"sentence", is_sentence(f)}}, c + "\n");
      return 0;
    }
    if (*collapse_cmd) {
      const Formula f = parse(formula);
      const ChoiceTable t = io::table_from_json(io::read_file(table_path));
      const Formula c = collapse(t, f);
      emit(g, {{"formula", print(f)}, {"collapse", print(c)}}, print(c) + "\n");
      return 0;
    }
    if (*eval_cmd) {
      const Formula f = parse(formula);
      const Structure m = io::structure_from_json(io::read_file(model_path));
      const Semantics sem = semantics_of(fcs);
      const ChoiceTable t = table_path.empty()
                                ? ChoiceTable(sem == Semantics::SCS ? ChoiceMode::Sentence : ChoiceMode::Formula)
                                : io::table_from_json(io::read_file(table_path));
      const bool v = holds(sem, m, t, f);
      emit(g, {{"formula", print(f)}, {"semantics", to_string(sem)}, {"value", v}}, v ? "true\n" : "false\n");
      return v ? 0 : 1;
    }
    if (*cons_cmd || *taut_cmd) {
      if (formula.empty()) throw Error("no formula given");
      const Formula phi = parse(formula);
      std::vector<Formula> sigma;
      for (const std::string& p : premises) sigma.push_back(parse(p));
      std::vector<Formula> all = sigma;
      all.push_back(phi);
      SearchSpace space = default_space(all, g.max_domain);
      space.semantics = semantics_of(fcs);
      const ClassSpec spec = default_spec(parse_choice_class(cls_name), all, bound(g));
      return report_verdict(g, check_consequence(sigma, phi, spec, space, CheckOptions{g.jobs}));
    }
    if (*proof_cmd) {
      const Proof p = io::proof_from_json(io::read_file(proof_path));
      const ProofVerdict v = check_proof(p, ProofOptions{!unrestricted, open_hyps});
      json j{{"system", to_string(p.system)}, {"ok", v.ok}, {"line", v.line}, {"reason", v.reason}};
      std::string text = v.ok ? "accepted (" + std::to_string(p.lines.size()) + " lines, " + to_string(p.system) + ")\n"
                              : "rejected at line " + std::to_string(v.line) + ": " + v.reason + "\n";
      int code = v.ok ? 0 : 1;
      if (v.ok && semantic && !p.lines.empty()) {
        const Formula& last = p.lines.back().formula;
        std::vector<Formula> all = p.hypotheses;
        all.push_back(last);
        const SearchSpace space = default_space(all, g.max_domain);
        const ClassSpec spec = default_spec(sound_class(p.system), all, bound(g));
        const Verdict sv = check_consequence(p.hypotheses, last, spec, space, CheckOptions{g.jobs});
        j["semantic"] = io::to_json(sv);
        text += sv.valid ? "conclusion valid over " + space.describe() + " in class " + to_string(spec.cls) + "\n"
                         : "conclusion has a countermodel in class " + std::string(to_string(spec.cls)) + "\n";
        if (!sv.valid) code = 1;
      }
      emit(g, j, text);
      return code;
    }
    if (*ui || *uig) {
      const bool general = uig->parsed();
      Signature sig;
      Formula a = parse("v1 = c3"), b = parse("v2 = c3");
      std::vector<Term> t{Term::constant("c1"), Term::constant("c2")};
      std::vector<Term> s{t[1], t[0]};
      if (general) {
        a = parse("R(v1, v2)");
        b = parse("R(v2, v1)");
        sig.predicates["R"] = 2;
      }
      sig.constants = {"c1", "c2", "c3"};
      json out = json::array();
      std::string text;
      for (int c = 1; c <= 4; ++c) {
        if (case_id && c != case_id) continue;
        const ChoiceTable f = ui_case_table(a, b, {"v1", "v2"}, t, c);
        const UiWitness w = general ? ui_failure_general(sig, a, b, {"v1", "v2"}, t, s, f, g.max_domain)
                                    : ui_failure_witness(sig, parse("v = c3"), t[0], t[1], f, g.max_domain);
        out.push_back(io::to_json(w));
        text += "case " + std::to_string(w.case_id) + " (" + w.structure_name + ")\n  table\n" + describe_table(f) +
                "  psi      " + print(w.psi) + "\n  closure  " + print(w.closure) + " : " +
                (w.closure_true ? "true" : "false") + "\n  instance " + print(w.instance) + " : " +
                (w.instance_true ? "true" : "false") + "\n" + describe_structure(w.structure);
      }
      emit(g, out, text);
      return 0;
    }
    if (*nu) {
      const Formula a = parse(alpha);
      const EquivOracle oracle = a.propositional() ? EquivOracle::truth_table()
                                                   : EquivOracle::bounded(bound(g), infer_signature({a}));
      const UniformityTrace tr = refute_uniformity(a, "v1", "v2", oracle);
      std::string text = "alpha(v1) = " + print(tr.a1) + ", alpha(v2) = " + print(tr.a2) + " (oracle " + tr.oracle + ")\n";
      bool all = true;
      for (std::size_t i = 0; i < tr.branches.size(); ++i) {
        const auto& b = tr.branches[i];
        text += "branch " + std::to_string(i + 1) + ": f picks " + print(b.chosen) + "; uniformity needs " +
                print(b.swapped) + " ~ " + print(b.chosen_swapped) + ", which would give " + print(tr.a1) + " ~ " +
                print(tr.a2) + (b.contradiction ? ": contradiction\n" : ": no contradiction\n");
        all = all && b.contradiction;
      }
      text += std::to_string(tr.tables_satisfying) + " of " + std::to_string(tr.tables) +
              " tables satisfy the uniformity equation\n";
      emit(g, io::to_json(tr), text);
      return all && tr.tables_satisfying == 0 ? 0 : 1;
    }
    if (*obj) {
      const Structure m = Structure::with_domain(size);
      const ObjectReport r =
          object_superposition_report(m, "e0", "e1", EquivOracle::bounded(bound(g), Signature{}));
      std::string text;
      for (const auto& row : r.rows) {
        text += "f(a=a, a=b) = " + row.choices[0] + ", f(b=b, b=a) = " + row.choices[1] + ": witnesses {";
        for (std::size_t i = 0; i < row.witnesses.size(); ++i) text += (i ? ", " : "") + row.witnesses[i];
        text += std::string("}") + (row.unique ? " unique" : "") + (row.regular ? " regular" : "") + "\n";
      }
      text += std::string("part (i) ") + (r.part_i ? "holds" : "fails") + ", part (ii) " +
              (r.part_ii ? "holds" : "fails") + "\n";
      emit(g, io::to_json(r), text);
      return r.part_i && r.part_ii ? 0 : 1;
    }
    if (*bm) {
      const TheoryFragment t = io::fragment_from_json(io::read_file(theory_path));
      const ChoiceClass cls = parse_choice_class(cls_name);
      std::optional<EquivOracle> oracle;
      if (cls == ChoiceClass::Reg) {
        std::vector<Formula> closure = fragment_closure(t.seeds, t.domain);
        bool prop = true;
        for (const Formula& f : closure) prop = prop && f.propositional();
        oracle = prop ? EquivOracle::truth_table() : EquivOracle::bounded(bound(g), infer_signature(closure));
      }
      const FragmentVerdict v = check_theory_fragment(t, cls == ChoiceClass::Reg, oracle);
      if (!v.ok) {
        json j{{"ok", false}, {"failed", v.failed}, {"reason", v.reason}};
        std::string text = "rejected (" + v.failed + "): " + v.reason + "\n";
        for (const Formula& w : v.witness) text += "  " + print(w) + "\n";
        emit(g, j, text);
        return 1;
      }
      const BuiltModel b = build_choice_from_theory(t, cls, oracle);
      std::string text = "model\n" + describe_structure(b.model) + "decisions\n";
      for (const std::string& d : b.decisions) text += "  " + d + "\n";
      text += "table\n" + describe_table(b.table);
      emit(g, io::to_json(b), text);
      return 0;
    }
    if (*interp) {
      const InterpolationReport r = interpolation_sweep(depth, g.jobs);
      std::string text = std::to_string(r.formulas) + " sentences, " + std::to_string(r.pairs) + " pairs, " +
                         std::to_string(r.runs) + " runs, " + std::to_string(r.violations) + " violations\n";
      if (!r.first_violation.empty()) text += "first violation: " + r.first_violation + "\n";
      emit(g, io::to_json(r), text);
      return r.violations == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
