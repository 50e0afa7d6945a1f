#include "supkit/choice.hpp"

#include <algorithm>
#include <cstdlib>
#include <mutex>
#include <set>
#include <unordered_map>

#include "supkit/parser.hpp"
#include "supkit/structure.hpp"

namespace supkit {

MissingEntry::MissingEntry(Formula a, Formula b)
    : Error("choice table has no entry for {" + print(a) + ", " + print(b) + "}"),
      first(std::move(a)),
      second(std::move(b)) {}

// ---------------------------------------------------------------- tables

namespace {

void check_legal(ChoiceMode mode, const Formula& f) {
  if (f.has_sup()) throw Error("choice tables hold classical formulas only: " + print(f));
  if (mode == ChoiceMode::Sentence && !is_sentence(f))
    throw Error("sentence-mode choice table given an open formula: " + print(f));
}

}  // namespace

bool ChoiceTable::has(const Formula& a, const Formula& b) const {
  return a.nkey() == b.nkey() || entries_.count(pair_key(a, b)) > 0;
}

std::optional<Formula> ChoiceTable::lookup(const Formula& a, const Formula& b) const {
  if (a.nkey() == b.nkey()) return a;
  auto it = entries_.find(pair_key(a, b));
  if (it == entries_.end()) return std::nullopt;
  return it->second.chosen().nkey() == a.nkey() ? a : b;
}

Formula ChoiceTable::choose(const Formula& a, const Formula& b) const {
  if (auto r = lookup(a, b)) return *r;
  throw MissingEntry(a, b);
}

void ChoiceTable::set(const Formula& winner, const Formula& other) {
  check_legal(mode_, winner);
  check_legal(mode_, other);
  if (winner.nkey() == other.nkey()) return;
  const std::string key = pair_key(winner, other);
  const bool winner_first = winner.nkey() < other.nkey();
  Entry e{winner_first ? winner : other, winner_first ? other : winner, winner_first};
  auto [it, fresh] = entries_.emplace(key, e);
  if (!fresh && it->second.chose_first != winner_first)
    throw Error("choice table already prefers " + print(it->second.chosen()) + " over " +
                print(it->second.rejected()));
}

ChoiceTable ChoiceTable::with(const Formula& winner, const Formula& other) const {
  ChoiceTable t = *this;
  t.set(winner, other);
  return t;
}

std::vector<Formula> ChoiceTable::universe() const {
  std::map<std::string, Formula> seen;
  for (const auto& [k, e] : entries_) {
    seen.emplace(e.first.nkey(), e.first);
    seen.emplace(e.second.nkey(), e.second);
  }
  std::vector<Formula> out;
  for (auto& [k, f] : seen) out.push_back(f);
  return out;
}

ChoiceTable table_from_order(const std::vector<Formula>& order, ChoiceMode mode) {
  ChoiceTable t(mode);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) t.set(order[i], order[j]);
  return t;
}

// ---------------------------------------------------------------- collapse

Formula collapse(const ChoiceTable& f, const Formula& phi) {
  if (phi.classical()) return phi;
  switch (phi.kind()) {
    case FormulaKind::Not:
      return Formula::negation(collapse(f, phi.left()));
    case FormulaKind::Sup:
      return f.choose(collapse(f, phi.left()), collapse(f, phi.right()));
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (f.mode() == ChoiceMode::Sentence)
        throw NotBasic("collapse is undefined on a quantified non-classical formula: " + print(phi));
      return Formula::quantifier(phi.kind(), phi.var(), collapse(f, phi.body()));
    default:
      return Formula::binary(phi.kind(), collapse(f, phi.left()), collapse(f, phi.right()));
  }
}

// ---------------------------------------------------------------- oracle

struct EquivOracle::Cache {
  std::mutex mu;
  std::unordered_map<std::string, bool> equiv;
  std::unordered_map<std::string, bool> sat;
};

EquivOracle::EquivOracle(Kind kind, int max_domain, Signature sig)
    : kind_(kind), max_domain_(max_domain), sig_(std::move(sig)), cache_(std::make_shared<Cache>()) {}

EquivOracle EquivOracle::truth_table() { return EquivOracle(Kind::PropTruthTable, 1, {}); }

EquivOracle EquivOracle::bounded(int max_domain, Signature sig) {
  if (max_domain <= 0) throw Error("oracle domain bound must be positive");
  return EquivOracle(Kind::BoundedFO, max_domain, std::move(sig));
}

std::string EquivOracle::describe() const {
  if (kind_ == Kind::PropTruthTable) return "truth-table";
  return "bounded-fo(max_domain=" + std::to_string(max_domain_) + ")";
}

int oracle_bound_from_env(int fallback) {
  if (const char* s = std::getenv("SUPKIT_ORACLE_BOUND")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v > 0 && v < 16) return static_cast<int>(v);
  }
  return fallback;
}

namespace {

Term params_to_constants(const Term& t) {
  if (t.kind() == TermKind::Parameter) return Term::constant("@" + t.name());
  if (t.kind() != TermKind::Function) return t;
  std::vector<Term> args;
  for (const Term& a : t.args()) args.push_back(params_to_constants(a));
  return Term::function(t.name(), std::move(args));
}

Formula params_to_constants(const Formula& f) {
  if (!f.has_parameter()) return f;
  switch (f.kind()) {
    case FormulaKind::Predicate: {
      std::vector<Term> args;
      for (const Term& a : f.terms()) args.push_back(params_to_constants(a));
      return Formula::predicate(f.name(), std::move(args));
    }
    case FormulaKind::Equality:
      return Formula::equality(params_to_constants(f.terms()[0]), params_to_constants(f.terms()[1]));
    case FormulaKind::Not:
      return Formula::negation(params_to_constants(f.left()));
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      return Formula::quantifier(f.kind(), f.var(), params_to_constants(f.body()));
    default:
      return Formula::binary(f.kind(), params_to_constants(f.left()), params_to_constants(f.right()));
  }
}

// Calls fn(structure, env) over the bounded space; fn returns false to stop.
// Returns false when stopped early.
bool for_each_model(const Signature& base, int max_domain, bool propositional, const std::vector<Formula>& fs,
                    const std::function<bool(const Structure&, const Env&)>& fn) {
  Signature sig = base;
  sig.merge(infer_signature(fs));
  std::set<std::string> vars;
  for (const Formula& f : fs) {
    auto fv = free_vars(f);
    vars.insert(fv.begin(), fv.end());
  }
  std::vector<int> sizes;
  if (propositional) {
    sizes = {1};
  } else {
    for (int n = 1; n <= max_domain; ++n) sizes.push_back(n);
  }
  StructureSpace space(sig, sizes);
  const std::vector<std::string> var_list(vars.begin(), vars.end());
  for (std::uint64_t i = 0; i < space.count(); ++i) {
    Structure m = space.at(i);
    const int n = m.size();
    std::vector<int> digits(var_list.size(), 0);
    while (true) {
      Env env;
      for (std::size_t k = 0; k < var_list.size(); ++k) env[var_list[k]] = digits[k];
      if (!fn(m, env)) return false;
      std::size_t k = 0;
      while (k < digits.size() && ++digits[k] == n) digits[k++] = 0;
      if (k == digits.size()) break;
    }
  }
  return true;
}

}  // namespace

bool EquivOracle::equivalent(const Formula& a, const Formula& b) const {
  if (a.nkey() == b.nkey()) return true;
  const std::string key = pair_key(a, b);
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->equiv.find(key);
    if (it != cache_->equiv.end()) return it->second;
  }
  if (a.has_sup() || b.has_sup()) throw EvalError("equivalence oracle given a non-classical formula");
  const bool prop = kind_ == Kind::PropTruthTable;
  if (prop && !(a.propositional() && b.propositional()))
    throw EvalError("truth-table oracle given a first-order formula");
  const Formula ca = params_to_constants(a);
  const Formula cb = params_to_constants(b);
  const bool eq = for_each_model(sig_, max_domain_, prop, {ca, cb}, [&](const Structure& m, const Env& env) {
    return eval_classical(m, ca, env) == eval_classical(m, cb, env);
  });
  std::lock_guard lock(cache_->mu);
  cache_->equiv[key] = eq;
  return eq;
}

bool EquivOracle::satisfiable(const Formula& a) const {
  {
    std::lock_guard lock(cache_->mu);
    auto it = cache_->sat.find(a.nkey());
    if (it != cache_->sat.end()) return it->second;
  }
  if (a.has_sup()) throw EvalError("satisfiability oracle given a non-classical formula");
  const bool prop = kind_ == Kind::PropTruthTable;
  if (prop && !a.propositional()) throw EvalError("truth-table oracle given a first-order formula");
  const Formula ca = params_to_constants(a);
  const bool sat = !for_each_model(sig_, max_domain_, prop, {ca},
                                   [&](const Structure& m, const Env& env) { return !eval_classical(m, ca, env); });
  std::lock_guard lock(cache_->mu);
  cache_->sat[a.nkey()] = sat;
  return sat;
}

// ---------------------------------------------------------------- classes

const char* to_string(ChoiceClass c) {
  switch (c) {
    case ChoiceClass::AllF: return "all";
    case ChoiceClass::Reg: return "reg";
    case ChoiceClass::Asso: return "asso";
    case ChoiceClass::RegStar: return "regstar";
    case ChoiceClass::Dec: return "dec";
  }
  return "?";
}

ChoiceClass parse_choice_class(const std::string& name) {
  if (name == "all" || name == "allf" || name == "F") return ChoiceClass::AllF;
  if (name == "reg") return ChoiceClass::Reg;
  if (name == "asso") return ChoiceClass::Asso;
  if (name == "regstar" || name == "reg*") return ChoiceClass::RegStar;
  if (name == "dec") return ChoiceClass::Dec;
  throw Error("unknown choice class '" + name + "'");
}

bool needs_oracle(ChoiceClass c) {
  return c == ChoiceClass::Reg || c == ChoiceClass::RegStar || c == ChoiceClass::Dec;
}

const EquivOracle& ClassSpec::require_oracle() const {
  if (!oracle) throw OracleRequired(std::string("class ") + to_string(cls) + " needs an equivalence oracle");
  return *oracle;
}

namespace {

// Partition into ∼-classes; returns class id per formula and one
// representative per class.
struct Classes {
  std::vector<int> id;
  std::vector<Formula> reps;
};

Classes partition(const std::vector<Formula>& fs, const EquivOracle& oracle) {
  Classes c;
  for (const Formula& f : fs) {
    int found = -1;
    for (std::size_t k = 0; k < c.reps.size() && found < 0; ++k)
      if (oracle.equivalent(c.reps[k], f)) found = static_cast<int>(k);
    if (found < 0) {
      found = static_cast<int>(c.reps.size());
      c.reps.push_back(f);
    }
    c.id.push_back(found);
  }
  return c;
}

// Directed cycle in a graph on 0..n-1, as a node list.
std::optional<std::vector<int>> find_cycle(int n, const std::vector<std::set<int>>& adj) {
  std::vector<int> color(static_cast<std::size_t>(n), 0), parent(static_cast<std::size_t>(n), -1);
  std::optional<std::vector<int>> cycle;
  std::function<bool(int)> dfs = [&](int u) {
    color[u] = 1;
    for (int w : adj[u]) {
      if (color[w] == 1) {
        std::vector<int> c{w};
        for (int x = u; x != w; x = parent[x]) c.push_back(x);
        std::reverse(c.begin() + 1, c.end());
        cycle = c;
        return true;
      }
      if (color[w] == 0) {
        parent[w] = u;
        if (dfs(w)) return true;
      }
    }
    color[u] = 2;
    return false;
  };
  for (int u = 0; u < n; ++u)
    if (color[u] == 0 && dfs(u)) return cycle;
  return std::nullopt;
}

struct Graph {
  std::vector<Formula> nodes;
  std::map<std::string, int> index;
  std::vector<std::pair<int, int>> edges;  // winner -> loser

  int add(const Formula& f) {
    auto [it, fresh] = index.emplace(f.nkey(), static_cast<int>(nodes.size()));
    if (fresh) nodes.push_back(f);
    return it->second;
  }
};

Graph preference_graph(const ChoiceTable& t) {
  Graph g;
  for (const Formula& f : t.universe()) g.add(f);
  for (const auto& [k, e] : t.entries()) g.edges.emplace_back(g.index.at(e.chosen().nkey()), g.index.at(e.rejected().nkey()));
  return g;
}

std::vector<Formula> pick(const std::vector<Formula>& nodes, const std::vector<int>& ids) {
  std::vector<Formula> out;
  for (int i : ids) out.push_back(nodes[static_cast<std::size_t>(i)]);
  return out;
}

ClassVerdict fail(std::string reason, std::vector<Formula> witness) {
  return ClassVerdict{false, std::move(reason), std::move(witness)};
}

ClassVerdict acyclic_within(const Graph& g, const std::vector<int>& cls) {
  std::vector<std::set<int>> adj(g.nodes.size());
  for (auto [w, l] : g.edges)
    if (cls.empty() || cls[w] == cls[l]) adj[w].insert(l);
  if (auto c = find_cycle(static_cast<int>(g.nodes.size()), adj))
    return fail(cls.empty() ? "preference cycle" : "preference cycle inside one equivalence class",
                pick(g.nodes, *c));
  return {};
}

ClassVerdict regular_pairs(const Graph& g, const Classes& cl) {
  std::map<std::pair<int, int>, std::pair<int, int>> winner;  // class pair -> (winning class, edge)
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const auto [w, l] = g.edges[e];
    const int cw = cl.id[w], cl_ = cl.id[l];
    if (cw == cl_) continue;
    const auto key = std::minmax(cw, cl_);
    auto [it, fresh] = winner.emplace(key, std::make_pair(cw, static_cast<int>(e)));
    if (!fresh && it->second.first != cw) {
      const auto [w2, l2] = g.edges[static_cast<std::size_t>(it->second.second)];
      return fail("choices between two equivalence classes disagree", pick(g.nodes, {w2, l2, w, l}));
    }
  }
  return {};
}

ClassVerdict quotient_acyclic(const Graph& g, const Classes& cl, const std::vector<int>& neg) {
  const int k = static_cast<int>(cl.reps.size());
  std::vector<std::set<int>> adj(static_cast<std::size_t>(k));
  for (auto [w, l] : g.edges) {
    const int a = cl.id[w], b = cl.id[l];
    if (a == b) continue;
    adj[a].insert(b);
    if (!neg.empty()) adj[neg[b]].insert(neg[a]);
  }
  if (auto c = find_cycle(k, adj))
    return fail(neg.empty() ? "preference cycle between equivalence classes"
                            : "no negation-decreasing order: cycle after duality closure",
                pick(cl.reps, *c));
  return {};
}

}  // namespace

ClassVerdict explain_extendable(const ChoiceTable& partial, const ClassSpec& spec) {
  if (spec.cls == ChoiceClass::AllF || partial.size() == 0) return {};
  Graph g = preference_graph(partial);
  if (spec.cls == ChoiceClass::Asso) return acyclic_within(g, {});
  const EquivOracle& oracle = spec.require_oracle();
  if (spec.cls == ChoiceClass::Dec) {
    const std::size_t base = g.nodes.size();
    for (std::size_t i = 0; i < base; ++i) g.add(Formula::negation(g.nodes[i]));
  }
  const Classes cl = partition(g.nodes, oracle);
  if (spec.cls == ChoiceClass::Reg) return regular_pairs(g, cl);
  std::vector<int> neg;
  if (spec.cls == ChoiceClass::Dec) {
    for (const Formula& r : cl.reps) {
      const Formula nr = Formula::negation(r);
      int found = -1;
      for (std::size_t k = 0; k < cl.reps.size() && found < 0; ++k)
        if (oracle.equivalent(cl.reps[k], nr)) found = static_cast<int>(k);
      if (found < 0) throw Error("negation classes are not closed: " + print(nr));
      neg.push_back(found);
    }
  }
  if (auto v = quotient_acyclic(g, cl, neg); !v.member) return v;
  return acyclic_within(g, cl.id);
}

bool extendable(const ChoiceTable& partial, const ClassSpec& spec) { return explain_extendable(partial, spec).member; }

ClassVerdict check_class(const ChoiceTable& f, const ClassSpec& spec, const std::vector<Formula>& universe) {
  std::vector<Formula> u;
  std::set<std::string> seen;
  for (const Formula& x : universe)
    if (seen.insert(x.nkey()).second) u.push_back(x);
  if (spec.cls == ChoiceClass::AllF) {
    for (const Formula& a : u)
      for (const Formula& b : u) f.choose(a, b);
    return {};
  }
  const bool asso = spec.cls != ChoiceClass::Reg;
  const bool reg = spec.cls != ChoiceClass::Asso;
  if (asso) {
    for (const Formula& a : u)
      for (const Formula& b : u)
        for (const Formula& c : u) {
          const Formula l = f.choose(f.choose(a, b), c);
          const Formula r = f.choose(a, f.choose(b, c));
          if (l.nkey() != r.nkey()) return fail("f(f(a,b),c) != f(a,f(b,c))", {a, b, c});
        }
  }
  if (reg) {
    const EquivOracle& oracle = spec.require_oracle();
    const Classes cl = partition(u, oracle);
    std::map<std::string, int> cls_of;
    for (std::size_t i = 0; i < u.size(); ++i) cls_of[u[i].nkey()] = cl.id[i];
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (i == j || cl.id[i] != cl.id[j]) continue;
        for (const Formula& b : u) {
          const Formula x = f.choose(u[i], b);
          const Formula y = f.choose(u[j], b);
          if (cls_of.at(x.nkey()) != cls_of.at(y.nkey()))
            return fail("a ~ a' but f(a,b) and f(a',b) are not equivalent", {u[i], u[j], b});
        }
      }
  }
  if (spec.cls == ChoiceClass::Dec) {
    ChoiceTable restricted(f.mode());
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        const Formula w = f.choose(u[i], u[j]);
        restricted.set(w, w.nkey() == u[i].nkey() ? u[j] : u[i]);
      }
    return explain_extendable(restricted, spec);
  }
  return {};
}

// ---------------------------------------------------------------- enumeration

std::size_t enumerate_tables(const ChoiceTable& seed, const ClassSpec& spec,
                             const std::function<bool(const ChoiceTable&)>& task) {
  if (needs_oracle(spec.cls)) spec.require_oracle();
  std::size_t runs = 0;
  bool stop = false;
  std::function<void(const ChoiceTable&)> go = [&](const ChoiceTable& t) {
    if (stop) return;
    std::optional<MissingEntry> missing;
    try {
      const bool more = task(t);
      ++runs;
      if (!more) stop = true;
      return;
    } catch (const MissingEntry& m) {
      missing = m;
    }
    for (int side = 0; side < 2 && !stop; ++side) {
      const Formula& w = side == 0 ? missing->first : missing->second;
      const Formula& l = side == 0 ? missing->second : missing->first;
      ChoiceTable next = t.with(w, l);
      if (extendable(next, spec)) go(next);
    }
  };
  if (extendable(seed, spec)) go(seed);
  return runs;
}

}  // namespace supkit
