#include "supkit/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <mutex>
#include <thread>

#include "supkit/parser.hpp"

namespace supkit {

namespace {

Formula conj_all(const std::vector<Formula>& fs) {
  Formula out = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) out = Formula::conjunction(out, fs[i]);
  return out;
}

std::map<std::string, Term> binding(const std::vector<std::string>& vars, const std::vector<Term>& terms) {
  std::map<std::string, Term> s;
  for (std::size_t i = 0; i < vars.size(); ++i) s.emplace(vars[i], terms[i]);
  return s;
}

std::optional<Structure> find_model(const Signature& sig, int max_domain, const Formula& f) {
  std::vector<int> sizes;
  for (int n = 1; n <= max_domain; ++n) sizes.push_back(n);
  StructureSpace space(sig, sizes);
  if (space.count() > 2'000'000) throw ResourceLimit("structure space too large for witness search");
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    Structure m = space.at(i);
    if (eval_classical(m, f)) return m;
  }
  return std::nullopt;
}

}  // namespace

// ---------------------------------------------------------------- UI failure

ChoiceTable ui_case_table(const Formula& alpha, const Formula& beta, const std::vector<std::string>& vars,
                          const std::vector<Term>& t, int case_id) {
  if (case_id < 1 || case_id > 4) throw ConstructionError("case must be 1..4");
  const auto sub = binding(vars, t);
  const Formula at = substitute(alpha, sub);
  const Formula bt = substitute(beta, sub);
  ChoiceTable f(ChoiceMode::Formula);
  const bool open_alpha = case_id <= 2;
  const bool closed_alpha = case_id == 1 || case_id == 3;
  f.set(open_alpha ? alpha : beta, open_alpha ? beta : alpha);
  f.set(closed_alpha ? at : bt, closed_alpha ? bt : at);
  return f;
}

UiWitness ui_failure_general(const Signature& sig, const Formula& alpha, const Formula& beta,
                             const std::vector<std::string>& vars, const std::vector<Term>& t,
                             const std::vector<Term>& s, const ChoiceTable& f, int max_domain) {
  if (vars.empty() || vars.size() != t.size() || vars.size() != s.size())
    throw ConstructionError("variables and term tuples differ in length");
  for (const Term& x : t)
    if (!x.closed()) throw ConstructionError("term " + print(x) + " is not closed");
  for (const Term& x : s)
    if (!x.closed()) throw ConstructionError("term " + print(x) + " is not closed");
  if (alpha.has_sup() || beta.has_sup()) throw ConstructionError("alpha and beta must be classical");
  if (f.mode() != ChoiceMode::Formula) throw ConstructionError("UI failure needs a formula-mode table");

  const auto sub_t = binding(vars, t);
  const auto sub_s = binding(vars, s);
  const Formula at = substitute(alpha, sub_t), bt = substitute(beta, sub_t);
  const Formula as = substitute(alpha, sub_s), bs = substitute(beta, sub_s);
  if (as.nkey() != bt.nkey())
    throw ConstructionError("condition (a) fails: " + print(as) + " differs from " + print(bt));
  if (at.nkey() != bs.nkey())
    throw ConstructionError("condition (b) fails: " + print(at) + " differs from " + print(bs));

  Signature full = sig;
  full.merge(infer_signature({alpha, beta, at, bt}));
  const auto m1 = find_model(full, max_domain, Formula::conjunction(at, Formula::negation(bt)));
  if (!m1)
    throw ConstructionError("condition (c) fails: " + print(at) + " /\\ ~" + print(bt) + " has no model");
  const auto m2 = find_model(full, max_domain, Formula::conjunction(Formula::negation(at), bt));
  if (!m2)
    throw ConstructionError("condition (c) fails: ~" + print(at) + " /\\ " + print(bt) + " has no model");

  const auto open = f.lookup(alpha, beta);
  const auto closed = f.lookup(at, bt);
  if (!open) throw ConstructionError("table has no entry for {" + print(alpha) + ", " + print(beta) + "}");
  if (!closed) throw ConstructionError("table has no entry for {" + print(at) + ", " + print(bt) + "}");
  const bool open_alpha = open->nkey() == alpha.nkey();
  const bool closed_alpha = closed->nkey() == at.nkey();

  const int case_id = open_alpha ? (closed_alpha ? 1 : 2) : (closed_alpha ? 3 : 4);
  // Cases 1 and 4 instantiate with s, cases 2 and 3 with t.
  const bool use_s = case_id == 1 || case_id == 4;
  const bool use_m2 = case_id == 1 || case_id == 3;
  const std::vector<Term>& terms = use_s ? s : t;
  std::vector<Formula> eqs;
  for (std::size_t i = 0; i < vars.size(); ++i) eqs.push_back(Formula::equality(Term::variable(vars[i]), terms[i]));
  const Formula psi = Formula::implication(conj_all(eqs), Formula::sup(alpha, beta));
  Formula closure = psi;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) closure = Formula::forall(*it, closure);
  UiWitness w{case_id,     use_m2 ? "M2" : "M1", use_m2 ? *m2 : *m1, f, vars, psi, closure,
              substitute(psi, binding(vars, terms)), terms};
  w.closure_true = eval_fcs(w.structure, f, w.closure);
  w.instance_true = eval_fcs(w.structure, f, w.instance);
  if (!w.closure_true || w.instance_true)
    throw ConstructionError("case " + std::to_string(w.case_id) + " witness failed re-verification");
  return w;
}

UiWitness ui_failure_witness(const Signature& sig, const Formula& alpha, const Term& t1, const Term& t2,
                             const ChoiceTable& f, int max_domain) {
  const auto fv = free_vars(alpha);
  if (fv.size() != 1) throw ConstructionError("alpha must have exactly one free variable: " + print(alpha));
  if (t1 == t2) throw ConstructionError("t1 and t2 must be distinct");
  const std::string v = *fv.begin();
  const Formula a1 = substitute(alpha, v, Term::variable("v1"));
  const Formula a2 = substitute(alpha, v, Term::variable("v2"));
  return ui_failure_general(sig, a1, a2, {"v1", "v2"}, {t1, t2}, {t2, t1}, f, max_domain);
}

// ---------------------------------------------------------------- uniformity

UniformityTrace refute_uniformity(const Formula& alpha, const std::string& v1, const std::string& v2,
                                  const EquivOracle& oracle) {
  const auto fv = free_vars(alpha);
  if (fv.size() != 1) throw ConstructionError("alpha must have exactly one free variable: " + print(alpha));
  const std::string v = *fv.begin();
  UniformityTrace tr{substitute(alpha, v, Term::variable(v1)), substitute(alpha, v, Term::variable(v2)), {}, 0, 0,
                     oracle.describe()};
  if (oracle.equivalent(tr.a1, tr.a2))
    throw ConstructionError("precondition fails: " + print(tr.a1) + " ~ " + print(tr.a2));
  const std::map<std::string, Term> swap{{v1, Term::variable(v2)}, {v2, Term::variable(v1)}};

  auto branch = [&](const ChoiceTable& f) {
    const Formula chosen = f.choose(tr.a1, tr.a2);
    const Formula swapped = substitute(chosen, swap);
    const Formula chosen_swapped = f.choose(substitute(tr.a1, swap), substitute(tr.a2, swap));
    const bool eq = oracle.equivalent(swapped, chosen_swapped);
    UniformityBranch b{chosen, swapped, chosen_swapped, eq, !eq};
    return b;
  };
  ChoiceTable first(ChoiceMode::Formula), second(ChoiceMode::Formula);
  first.set(tr.a1, tr.a2);
  second.set(tr.a2, tr.a1);
  tr.branches = {branch(first), branch(second)};

  tr.tables = enumerate_tables(ChoiceTable(ChoiceMode::Formula), ClassSpec{}, [&](const ChoiceTable& f) {
    if (branch(f).equivalent) ++tr.tables_satisfying;
    return true;
  });
  return tr;
}

// ---------------------------------------------------------------- fragments

std::vector<Formula> fragment_closure(const std::vector<Formula>& seeds, int domain) {
  if (domain < 1) throw ConstructionError("fragment domain must be positive");
  std::vector<Formula> out;
  std::set<std::string> seen;
  std::function<void(const Formula&)> add = [&](const Formula& f) {
    if (seen.count(f.key())) return;
    if (f.kind() == FormulaKind::Not) {
      add(f.left());
    } else if (f.is_binary()) {
      add(f.left());
      add(f.right());
    } else if (f.is_quantifier()) {
      for (int i = 0; i < domain; ++i) add(substitute(f.body(), f.var(), Term::parameter("e" + std::to_string(i))));
    }
    if (seen.insert(f.key()).second) out.push_back(f);
  };
  for (const Formula& s : seeds) {
    if (!is_sentence(s)) throw ConstructionError("fragment members must be sentences: " + print(s));
    if (!is_restricted(s)) throw NotRestricted("fragment members must be restricted: " + print(s));
    add(s);
  }
  return out;
}

TheoryFragment make_fragment(const std::vector<Formula>& in_sentences, int domain) {
  TheoryFragment t;
  t.seeds = in_sentences;
  t.domain = domain;
  for (const Formula& f : in_sentences) t.marking.emplace(f.key(), true);
  const auto closure = fragment_closure(t.seeds, domain);
  for (bool changed = true; changed;) {
    changed = false;
    for (const Formula& f : closure) {
      if (f.kind() != FormulaKind::Not) continue;
      auto outer = t.marking.find(f.key());
      auto inner = t.marking.find(f.left().key());
      if (outer != t.marking.end() && inner == t.marking.end()) {
        t.marking.emplace(f.left().key(), !outer->second);
        changed = true;
      } else if (outer == t.marking.end() && inner != t.marking.end()) {
        t.marking.emplace(f.key(), !inner->second);
        changed = true;
      }
    }
  }
  return t;
}

namespace {

struct Marks {
  const std::map<std::string, bool>& m;
  bool operator()(const Formula& f) const { return m.at(f.key()); }
};

FragmentVerdict reject(std::string failed, std::string reason, std::vector<Formula> witness) {
  FragmentVerdict v;
  v.ok = false;
  v.failed = std::move(failed);
  v.reason = std::move(reason);
  v.witness = std::move(witness);
  return v;
}

std::vector<Formula> instances(const Formula& q, int domain) {
  std::vector<Formula> out;
  for (int i = 0; i < domain; ++i)
    out.push_back(substitute(q.body(), q.var(), Term::parameter("e" + std::to_string(i))));
  return out;
}

const EquivOracle& oracle_for(const std::vector<Formula>& fs, const std::optional<EquivOracle>& given,
                              std::optional<EquivOracle>& slot) {
  if (given) return *given;
  for (const Formula& f : fs)
    if (!f.propositional()) throw OracleRequired("a first-order fragment needs an equivalence oracle");
  slot = EquivOracle::truth_table();
  return *slot;
}

}  // namespace

FragmentVerdict check_theory_fragment(const TheoryFragment& t, bool sv_closed,
                                      const std::optional<EquivOracle>& oracle) {
  const auto closure = fragment_closure(t.seeds, t.domain);
  for (const Formula& f : closure)
    if (!t.marking.count(f.key()))
      return reject("incomplete", "neither " + print(f) + " nor its negation is marked", {f});
  const Marks m{t.marking};
  std::map<std::string, Formula> by_key;
  for (const Formula& f : closure) by_key.emplace(f.key(), f);

  for (const Formula& f : closure) {
    if (f.kind() != FormulaKind::Sup) continue;
    const bool s = m(f), a = m(f.left()), b = m(f.right());
    if (s && !a && !b) return reject("a7", "sup in, both sides out (contradicts S2)", {f, f.left(), f.right()});
    if (!s && a && b) return reject("a8", "sup out, both sides in (contradicts S1)", {f, f.left(), f.right()});
    auto mirror = by_key.find(Formula::sup(f.right(), f.left()).key());
    if (mirror != by_key.end() && m(mirror->second) != s)
      return reject("S3", "commuted sups marked differently", {f, mirror->second});
  }

  if (sv_closed) {
    std::vector<Formula> sups;
    for (const Formula& f : closure)
      if (f.kind() == FormulaKind::Sup && f.left().classical() && f.right().classical()) sups.push_back(f);
    std::optional<EquivOracle> slot;
    const EquivOracle& o = oracle_for(closure, oracle, slot);
    for (std::size_t i = 0; i < sups.size(); ++i)
      for (std::size_t j = i + 1; j < sups.size(); ++j) {
        const Formula &x = sups[i], &y = sups[j];
        if (m(x) == m(y)) continue;
        const bool same = (o.equivalent(x.left(), y.left()) && o.equivalent(x.right(), y.right())) ||
                          (o.equivalent(x.left(), y.right()) && o.equivalent(x.right(), y.left()));
        if (same) return reject("SV", "sups with equivalent sides marked differently", {x, y});
      }
  }

  for (const Formula& f : closure) {
    if (f.classical() || f.kind() == FormulaKind::Sup) continue;
    const bool s = m(f);
    bool expect = false;
    switch (f.kind()) {
      case FormulaKind::Not:
        expect = !m(f.left());
        break;
      case FormulaKind::And:
        expect = m(f.left()) && m(f.right());
        break;
      case FormulaKind::Or:
        expect = m(f.left()) || m(f.right());
        break;
      case FormulaKind::Implies:
        expect = !m(f.left()) || m(f.right());
        break;
      case FormulaKind::Iff:
        expect = m(f.left()) == m(f.right());
        break;
      case FormulaKind::Forall:
      case FormulaKind::Exists: {
        const bool universal = f.kind() == FormulaKind::Forall;
        const auto inst = instances(f, t.domain);
        const bool all = std::all_of(inst.begin(), inst.end(), m);
        const bool any = std::any_of(inst.begin(), inst.end(), m);
        expect = universal ? all : any;
        if (s != expect) {
          // An existential demand without a witness is a Henkin failure.
          const bool henkin = universal ? !s : s;
          return reject(henkin ? "henkin" : "quantifier",
                        henkin ? "no instance witnesses " + print(f)
                               : "some instance contradicts " + print(f),
                        {f});
        }
        continue;
      }
      default:
        break;
    }
    if (s != expect) return reject("connective", "marking of " + print(f) + " disagrees with its parts", {f});
  }

  std::vector<Formula> classical;
  for (const Formula& f : closure)
    if (f.classical()) classical.push_back(f);
  const Signature sig = infer_signature(classical);
  StructureSpace space(sig, {t.domain});
  if (space.count() > 2'000'000) throw ResourceLimit("classical part has too many candidate structures");
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    Structure cand = space.at(i);
    bool fits = true;
    for (const Formula& f : classical)
      if (eval_classical(cand, f) != m(f)) {
        fits = false;
        break;
      }
    if (fits) {
      FragmentVerdict v;
      v.model = std::move(cand);
      return v;
    }
  }
  return reject("classical", "no structure with " + std::to_string(t.domain) + " elements realizes the classical part",
                {});
}

namespace {

// Every sentence that collapse(g, f) can return for some g.
std::vector<Formula> possible_collapses(const Formula& f) {
  if (f.classical()) return {f};
  switch (f.kind()) {
    case FormulaKind::Sup: {
      auto l = possible_collapses(f.left());
      auto r = possible_collapses(f.right());
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case FormulaKind::Not: {
      std::vector<Formula> out;
      for (const Formula& x : possible_collapses(f.left())) out.push_back(Formula::negation(x));
      return out;
    }
    default: {
      if (!f.is_binary()) throw NotBasic("collapse is undefined on " + print(f));
      std::vector<Formula> out;
      const auto r = possible_collapses(f.right());
      for (const Formula& x : possible_collapses(f.left()))
        for (const Formula& y : r) out.push_back(Formula::binary(f.kind(), x, y));
      return out;
    }
  }
}

}  // namespace

BuiltModel build_choice_from_theory(const TheoryFragment& t, ChoiceClass cls, const std::optional<EquivOracle>& oracle) {
  if (cls != ChoiceClass::AllF && cls != ChoiceClass::Reg)
    throw ConstructionError(std::string("model construction supports all and reg, not ") + to_string(cls));
  const bool reg = cls == ChoiceClass::Reg;
  const auto closure = fragment_closure(t.seeds, t.domain);
  std::optional<EquivOracle> slot;
  const EquivOracle* o = nullptr;
  if (reg) {
    if (!oracle) {
      for (const Formula& f : closure)
        if (!f.propositional()) throw OracleRequired("reg construction needs an equivalence oracle");
    }
    o = &oracle_for(closure, oracle, slot);
  }
  const FragmentVerdict verdict = check_theory_fragment(t, reg, o ? std::optional<EquivOracle>(*o) : std::nullopt);
  if (!verdict.ok) throw ConstructionError("fragment rejected (" + verdict.failed + "): " + verdict.reason);
  const Marks m{t.marking};

  BuiltModel out{*verdict.model, ChoiceTable(ChoiceMode::Sentence), {}};
  const Structure& model = out.model;

  // Equivalence classes over every sentence a collapse can produce; g0 prefers
  // the class whose least key is smaller.
  std::map<std::string, std::string> rep;  // nkey -> class representative key
  auto class_of = [&](const Formula& f) -> const std::string& { return rep.at(f.nkey()); };
  if (reg) {
    std::vector<Formula> universe;
    std::set<std::string> seen;
    for (const Formula& f : closure)
      if (f.kind() == FormulaKind::Sup)
        for (const Formula& x : possible_collapses(f))
          if (seen.insert(x.nkey()).second) universe.push_back(x);
    std::sort(universe.begin(), universe.end(),
              [](const Formula& a, const Formula& b) { return canonical_key(a) < canonical_key(b); });
    std::vector<Formula> reps;
    for (const Formula& x : universe) {
      auto it = std::find_if(reps.begin(), reps.end(), [&](const Formula& r) { return o->equivalent(r, x); });
      if (it == reps.end()) {
        reps.push_back(x);
        rep[x.nkey()] = canonical_key(x);
      } else {
        rep[x.nkey()] = canonical_key(*it);
      }
    }
  }
  auto tie_break = [&](const Formula& a, const Formula& b) {
    if (reg && class_of(a) != class_of(b)) return class_of(a) < class_of(b) ? a : b;
    return canonical_key(a) <= canonical_key(b) ? a : b;
  };

  for (const Formula& f : closure) {
    if (f.kind() != FormulaKind::Sup) continue;
    const Formula a = collapse(out.table, f.left());
    const Formula b = collapse(out.table, f.right());
    if (a.nkey() == b.nkey()) continue;
    const bool s = m(f), in_a = m(f.left()), in_b = m(f.right());
    std::string label;
    std::optional<Formula> forced;
    if (in_a == in_b) {
      label = in_a ? "a1" : "a4";
    } else if (in_a) {
      label = s ? "a2" : "a5";
      forced = s ? a : b;
    } else {
      label = s ? "a3" : "a6";
      forced = s ? b : a;
    }
    const auto existing = out.table.lookup(a, b);
    Formula w = forced ? *forced : (existing ? *existing : tie_break(a, b));
    if (existing && existing->nkey() != w.nkey())
      throw ConstructionError("sup " + print(f) + " (" + label + ") needs " + print(w) + " but the pair already chose " +
                              print(*existing));
    out.table.set(w, w.nkey() == a.nkey() ? b : a);
    out.decisions.push_back(label + ": " + print(f) + " -> " + print(w));
  }

  // Complete the table on its universe, respecting class-level winners in reg
  // mode.
  const auto universe = out.table.universe();
  if (reg) {
    std::map<std::pair<std::string, std::string>, std::string> winner;
    for (const auto& [k, e] : out.table.entries()) {
      const std::string& cw = class_of(e.chosen());
      const std::string& cl = class_of(e.rejected());
      if (cw != cl) winner[{std::min(cw, cl), std::max(cw, cl)}] = cw;
    }
    for (std::size_t i = 0; i < universe.size(); ++i)
      for (std::size_t j = i + 1; j < universe.size(); ++j) {
        const Formula &a = universe[i], &b = universe[j];
        if (out.table.has(a, b)) continue;
        const std::string &ca = class_of(a), &cb = class_of(b);
        Formula w = tie_break(a, b);
        auto it = winner.find({std::min(ca, cb), std::max(ca, cb)});
        if (it != winner.end()) w = it->second == ca ? a : b;
        out.table.set(w, w.nkey() == a.nkey() ? b : a);
      }
  } else {
    for (std::size_t i = 0; i < universe.size(); ++i)
      for (std::size_t j = i + 1; j < universe.size(); ++j)
        if (!out.table.has(universe[i], universe[j])) {
          const Formula w = tie_break(universe[i], universe[j]);
          out.table.set(w, w.nkey() == universe[i].nkey() ? universe[j] : universe[i]);
        }
  }

  for (const Formula& f : closure) {
    if (is_basic(f) && eval_classical(model, collapse(out.table, f)) != m(f))
      throw ConstructionError("satisfiability criterion fails on " + print(f));
    if (eval_scs(model, out.table, f) != m(f)) throw ConstructionError("SCS truth disagrees with the marking on " + print(f));
  }
  if (reg) {
    const ClassVerdict cv = check_class(out.table, ClassSpec{ChoiceClass::Reg, *o}, universe);
    if (!cv.member) throw ConstructionError("constructed table is not regular: " + cv.reason);
  }
  return out;
}

// ---------------------------------------------------------------- objects

ObjectReport object_superposition_report(const Structure& m, const std::string& a, const std::string& b,
                                         const EquivOracle& oracle) {
  if (a == b) throw ConstructionError("a and b must be distinct elements");
  m.element(a);
  m.element(b);
  const Term pa = Term::parameter(a), pb = Term::parameter(b);
  const Formula aa = Formula::equality(pa, pa), ab = Formula::equality(pa, pb);
  const Formula bb = Formula::equality(pb, pb), ba = Formula::equality(pb, pa);
  const Term v = Term::variable("v"), u = Term::variable("u");
  const Formula body = Formula::sup(Formula::equality(v, pa), Formula::equality(v, pb));
  const Formula unique = Formula::exists(
      "v", Formula::conjunction(body, Formula::forall("u", Formula::implication(substitute(body, "v", u),
                                                                                Formula::equality(u, v)))));

  ObjectReport rep;
  rep.a = a;
  rep.b = b;
  ChoiceTable base(ChoiceMode::Sentence);
  for (const std::string& x : m.domain) {
    if (x == a || x == b) continue;
    const Term px = Term::parameter(x);
    base.set(Formula::equality(px, pa), Formula::equality(px, pb));
  }
  const ClassSpec reg{ChoiceClass::Reg, oracle};
  bool unique_regular = false;
  for (int bits = 0; bits < 4; ++bits) {
    ObjectTableRow row;
    row.table = base;
    const Formula w1 = (bits & 1) ? ab : aa;
    const Formula w2 = (bits & 2) ? ba : bb;
    row.table.set(w1, w1 == aa ? ab : aa);
    row.table.set(w2, w2 == bb ? ba : bb);
    row.choices = {print(w1), print(w2)};
    for (const std::string& x : m.domain)
      if (eval_scs(m, row.table, substitute(body, "v", Term::parameter(x)))) row.witnesses.push_back(x);
    row.unique = row.witnesses.size() == 1;
    row.unique_sentence = eval_scs(m, row.table, unique);
    if (row.unique != row.unique_sentence) throw ConstructionError("uniqueness sentence disagrees with witness count");
    row.regular = extendable(row.table, reg);
    rep.part_i = rep.part_i || row.unique;
    unique_regular = unique_regular || (row.unique && row.regular);
    rep.rows.push_back(std::move(row));
  }
  rep.part_ii = !unique_regular;
  return rep;
}

// ---------------------------------------------------------------- interpolation

std::vector<Formula> small_sentences(int depth) {
  std::vector<Formula> level{Formula::prop("p0"), Formula::prop("p1")};
  for (int d = 1; d <= depth; ++d) {
    std::vector<Formula> next = level;
    for (const Formula& x : level) next.push_back(Formula::negation(x));
    for (FormulaKind k : {FormulaKind::And, FormulaKind::Or, FormulaKind::Sup})
      for (const Formula& x : level)
        for (const Formula& y : level) next.push_back(Formula::binary(k, x, y));
    level = std::move(next);
  }
  return level;
}

InterpolationReport interpolation_sweep(int depth, int jobs) {
  const auto start = std::chrono::steady_clock::now();
  InterpolationReport rep;
  rep.depth = depth;
  const auto fs = small_sentences(depth);
  rep.formulas = fs.size();
  rep.pairs = fs.size() * fs.size();
  std::vector<Structure> vals;
  for (int bits = 0; bits < 4; ++bits) {
    Valuation v;
    v.assignment = {{"p0", (bits & 1) != 0}, {"p1", (bits & 2) != 0}};
    vals.push_back(v.as_structure());
  }
  std::atomic<std::size_t> next{0};
  std::atomic<std::uint64_t> runs{0}, violations{0};
  std::mutex mu;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= fs.size()) return;
      std::uint64_t local_runs = 0, local_bad = 0;
      std::string first;
      for (const Formula& psi : fs) {
        const Formula& phi = fs[i];
        const Formula c = Formula::conjunction(phi, psi), s = Formula::sup(phi, psi), d = Formula::disjunction(phi, psi);
        // The pairs a run touches do not depend on the valuation.
        enumerate_tables(ChoiceTable(ChoiceMode::Sentence), ClassSpec{}, [&](const ChoiceTable& f) {
          for (const Structure& m : vals) {
            ++local_runs;
            const bool tc = eval_scs(m, f, c), ts = eval_scs(m, f, s), td = eval_scs(m, f, d);
            if ((tc && !ts) || (ts && !td)) {
              if (local_bad++ == 0) first = print(phi) + " ; " + print(psi);
            }
          }
          return true;
        });
      }
      runs += local_runs;
      if (local_bad) {
        std::lock_guard lock(mu);
        violations += local_bad;
        if (rep.first_violation.empty()) rep.first_violation = first;
      }
    }
  };
  const int n = std::max(1, jobs);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < n; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  rep.runs = runs.load();
  rep.violations = violations.load();
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace supkit
