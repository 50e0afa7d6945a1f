#include "supkit/formula.hpp"

#include <algorithm>
#include <unordered_set>

namespace supkit {

// ---------------------------------------------------------------- terms

struct Term::Node {
  TermKind kind;
  std::string name;
  std::vector<Term> args;
  std::string key;
  bool closed = true;
};

namespace {

std::string term_key(TermKind kind, const std::string& name, const std::vector<Term>& args) {
  switch (kind) {
    case TermKind::Variable:
      return "$" + name;
    case TermKind::Constant:
      return name;
    case TermKind::Parameter:
      return "@" + name;
    case TermKind::Function: {
      std::string k = name + "(";
      for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) k += ',';
        k += args[i].key();
      }
      return k + ")";
    }
  }
  return {};
}

}  // namespace

Term Term::variable(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Variable;
  n->name = std::move(name);
  n->closed = false;
  n->key = term_key(n->kind, n->name, n->args);
  return Term(std::move(n));
}

Term Term::constant(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Constant;
  n->name = std::move(name);
  n->key = term_key(n->kind, n->name, n->args);
  return Term(std::move(n));
}

Term Term::parameter(std::string element) {
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Parameter;
  n->name = std::move(element);
  n->key = term_key(n->kind, n->name, n->args);
  return Term(std::move(n));
}

Term Term::function(std::string name, std::vector<Term> args) {
  if (args.empty()) throw SignatureError("function '" + name + "' applied to no arguments");
  auto n = std::make_shared<Node>();
  n->kind = TermKind::Function;
  n->name = std::move(name);
  n->args = std::move(args);
  n->closed = std::all_of(n->args.begin(), n->args.end(), [](const Term& t) { return t.closed(); });
  n->key = term_key(n->kind, n->name, n->args);
  return Term(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }
const std::string& Term::key() const { return node_->key; }
bool Term::closed() const { return node_->closed; }

void Term::collect_variables(std::set<std::string>& out) const {
  if (kind() == TermKind::Variable) {
    out.insert(name());
    return;
  }
  for (const Term& a : args()) a.collect_variables(out);
}

bool Term::has_variable(const std::string& var) const {
  if (kind() == TermKind::Variable) return name() == var;
  return std::any_of(args().begin(), args().end(), [&](const Term& a) { return a.has_variable(var); });
}

// ---------------------------------------------------------------- formulas

struct Formula::Node {
  FormulaKind kind;
  std::string name;           // atoms; bound variable for quantifiers
  std::vector<Term> terms;    // predicate args / equality sides
  std::vector<Formula> kids;  // 0, 1 or 2 children
  std::string key;
  std::string nkey;
  bool has_sup = false;
  bool has_quant = false;
  bool propositional = true;
  bool has_param = false;
  std::size_t size = 1;
  std::size_t depth = 0;
};

const char* to_string(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::PropAtom: return "prop";
    case FormulaKind::Predicate: return "pred";
    case FormulaKind::Equality: return "eq";
    case FormulaKind::Not: return "not";
    case FormulaKind::And: return "and";
    case FormulaKind::Or: return "or";
    case FormulaKind::Implies: return "implies";
    case FormulaKind::Iff: return "iff";
    case FormulaKind::Sup: return "sup";
    case FormulaKind::Forall: return "forall";
    case FormulaKind::Exists: return "exists";
  }
  return "?";
}

namespace {

const char* binary_tag(FormulaKind k) {
  switch (k) {
    case FormulaKind::And: return "&(";
    case FormulaKind::Or: return "v(";
    case FormulaKind::Implies: return ">(";
    case FormulaKind::Iff: return "<(";
    case FormulaKind::Sup: return "|(";
    default: return "?(";
  }
}

std::string args_key(const std::vector<Term>& ts) {
  std::string k;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i) k += ',';
    k += ts[i].key();
  }
  return k;
}

std::string imp_nkey(const std::string& a, const std::string& b) { return ">(" + a + "," + b + ")"; }

}  // namespace

Formula Formula::make(Node n) {
  switch (n.kind) {
    case FormulaKind::PropAtom:
      n.key = n.name;
      n.nkey = n.key;
      break;
    case FormulaKind::Predicate:
      n.key = n.name + "(" + args_key(n.terms) + ")";
      n.nkey = n.key;
      n.propositional = false;
      break;
    case FormulaKind::Equality:
      n.key = "=(" + args_key(n.terms) + ")";
      n.nkey = n.key;
      n.propositional = false;
      break;
    case FormulaKind::Not:
      n.key = "~" + n.kids[0].key();
      n.nkey = "~" + n.kids[0].nkey();
      break;
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const std::string tag = std::string(n.kind == FormulaKind::Forall ? "A$" : "E$") + n.name + ".";
      n.key = tag + n.kids[0].key();
      if (n.kind == FormulaKind::Forall)
        n.nkey = "A$" + n.name + "." + n.kids[0].nkey();
      else
        n.nkey = "~A$" + n.name + ".~" + n.kids[0].nkey();
      n.has_quant = true;
      n.propositional = false;
      break;
    }
    default: {
      const std::string& a = n.kids[0].nkey();
      const std::string& b = n.kids[1].nkey();
      n.key = std::string(binary_tag(n.kind)) + n.kids[0].key() + "," + n.kids[1].key() + ")";
      switch (n.kind) {
        case FormulaKind::And: n.nkey = "~" + imp_nkey(a, "~" + b); break;
        case FormulaKind::Or: n.nkey = imp_nkey("~" + a, b); break;
        case FormulaKind::Implies: n.nkey = imp_nkey(a, b); break;
        case FormulaKind::Iff:
          n.nkey = "~" + imp_nkey(imp_nkey(a, b), "~" + imp_nkey(b, a));
          break;
        case FormulaKind::Sup:
          n.nkey = "|(" + a + "," + b + ")";
          n.has_sup = true;
          break;
        default: break;
      }
    }
  }
  for (const Term& t : n.terms)
    if (t.key().find('@') != std::string::npos) n.has_param = true;
  for (const Formula& k : n.kids) {
    n.has_sup = n.has_sup || k.has_sup();
    n.has_quant = n.has_quant || k.has_quantifier();
    n.propositional = n.propositional && k.propositional();
    n.has_param = n.has_param || k.has_parameter();
    n.size += k.size();
    n.depth = std::max(n.depth, k.depth() + 1);
  }
  return Formula(std::make_shared<const Node>(std::move(n)));
}

Formula Formula::prop(std::string name) {
  Node n;
  n.kind = FormulaKind::PropAtom;
  n.name = std::move(name);
  return make(std::move(n));
}

Formula Formula::predicate(std::string name, std::vector<Term> args) {
  if (args.empty()) throw SignatureError("predicate '" + name + "' applied to no arguments");
  Node n;
  n.kind = FormulaKind::Predicate;
  n.name = std::move(name);
  n.terms = std::move(args);
  return make(std::move(n));
}

Formula Formula::equality(Term lhs, Term rhs) {
  Node n;
  n.kind = FormulaKind::Equality;
  n.terms = {std::move(lhs), std::move(rhs)};
  return make(std::move(n));
}

Formula Formula::negation(Formula f) {
  Node n;
  n.kind = FormulaKind::Not;
  n.kids = {std::move(f)};
  return make(std::move(n));
}

Formula Formula::binary(FormulaKind kind, Formula a, Formula b) {
  Node n;
  n.kind = kind;
  n.kids = {std::move(a), std::move(b)};
  return make(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b) { return binary(FormulaKind::And, std::move(a), std::move(b)); }
Formula Formula::disjunction(Formula a, Formula b) { return binary(FormulaKind::Or, std::move(a), std::move(b)); }
Formula Formula::implication(Formula a, Formula b) { return binary(FormulaKind::Implies, std::move(a), std::move(b)); }
Formula Formula::biconditional(Formula a, Formula b) { return binary(FormulaKind::Iff, std::move(a), std::move(b)); }
Formula Formula::sup(Formula a, Formula b) { return binary(FormulaKind::Sup, std::move(a), std::move(b)); }

Formula Formula::quantifier(FormulaKind kind, std::string var, Formula body) {
  Node n;
  n.kind = kind;
  n.name = std::move(var);
  n.kids = {std::move(body)};
  return make(std::move(n));
}

Formula Formula::forall(std::string var, Formula body) {
  return quantifier(FormulaKind::Forall, std::move(var), std::move(body));
}
Formula Formula::exists(std::string var, Formula body) {
  return quantifier(FormulaKind::Exists, std::move(var), std::move(body));
}

FormulaKind Formula::kind() const { return node_->kind; }
const std::string& Formula::name() const { return node_->name; }
const std::vector<Term>& Formula::terms() const { return node_->terms; }
const Formula& Formula::left() const { return node_->kids.at(0); }
const Formula& Formula::right() const { return node_->kids.at(1); }
const std::string& Formula::var() const { return node_->name; }
const std::string& Formula::key() const { return node_->key; }
const std::string& Formula::nkey() const { return node_->nkey; }
bool Formula::has_sup() const { return node_->has_sup; }
bool Formula::has_quantifier() const { return node_->has_quant; }
bool Formula::propositional() const { return node_->propositional; }
bool Formula::has_parameter() const { return node_->has_param; }
std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::depth() const { return node_->depth; }

bool Formula::is_atomic() const {
  return kind() == FormulaKind::PropAtom || kind() == FormulaKind::Predicate || kind() == FormulaKind::Equality;
}

bool Formula::is_binary() const {
  switch (kind()) {
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
    case FormulaKind::Sup:
      return true;
    default:
      return false;
  }
}

bool Formula::is_quantifier() const { return kind() == FormulaKind::Forall || kind() == FormulaKind::Exists; }

std::string canonical_key(const Formula& f) { return f.key(); }

std::string pair_key(const Formula& a, const Formula& b) {
  const std::string& x = a.nkey();
  const std::string& y = b.nkey();
  if (x == y) return "{" + x + "}";
  return x < y ? "{" + x + ";" + y + "}" : "{" + y + ";" + x + "}";
}

// ---------------------------------------------------------------- variables

namespace {

void collect_free(const Formula& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (f.is_atomic()) {
    std::set<std::string> vs;
    for (const Term& t : f.terms()) t.collect_variables(vs);
    for (const auto& v : vs)
      if (!bound.count(v)) out.insert(v);
    return;
  }
  if (f.is_quantifier()) {
    const bool fresh = bound.insert(f.var()).second;
    collect_free(f.body(), bound, out);
    if (fresh) bound.erase(f.var());
    return;
  }
  collect_free(f.left(), bound, out);
  if (f.is_binary()) collect_free(f.right(), bound, out);
}

}  // namespace

std::set<std::string> free_vars(const Formula& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_sentence(const Formula& f) { return free_vars(f).empty(); }

bool occurs_free(const Formula& f, const std::string& var) {
  if (f.is_atomic())
    return std::any_of(f.terms().begin(), f.terms().end(), [&](const Term& t) { return t.has_variable(var); });
  if (f.is_quantifier()) return f.var() != var && occurs_free(f.body(), var);
  if (occurs_free(f.left(), var)) return true;
  return f.is_binary() && occurs_free(f.right(), var);
}

// ---------------------------------------------------------------- substitution

Term substitute(const Term& t, const std::map<std::string, Term>& subst) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = subst.find(t.name());
      return it == subst.end() ? t : it->second;
    }
    case TermKind::Function: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const Term& a : t.args()) {
        args.push_back(substitute(a, subst));
        changed = changed || args.back() != a;
      }
      return changed ? Term::function(t.name(), std::move(args)) : t;
    }
    default:
      return t;
  }
}

Formula substitute(const Formula& f, const std::map<std::string, Term>& subst) {
  if (subst.empty()) return f;
  switch (f.kind()) {
    case FormulaKind::PropAtom:
      return f;
    case FormulaKind::Predicate: {
      std::vector<Term> args;
      for (const Term& a : f.terms()) args.push_back(substitute(a, subst));
      return Formula::predicate(f.name(), std::move(args));
    }
    case FormulaKind::Equality:
      return Formula::equality(substitute(f.terms()[0], subst), substitute(f.terms()[1], subst));
    case FormulaKind::Not:
      return Formula::negation(substitute(f.left(), subst));
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      std::map<std::string, Term> inner;
      for (const auto& [v, t] : subst) {
        if (v == f.var() || !occurs_free(f.body(), v)) continue;
        if (t.has_variable(f.var()))
          throw CaptureError("substituting " + t.key() + " for " + v + " is captured by the quantifier on " +
                             f.var());
        inner.emplace(v, t);
      }
      if (inner.empty()) return f;
      return Formula::quantifier(f.kind(), f.var(), substitute(f.body(), inner));
    }
    default:
      return Formula::binary(f.kind(), substitute(f.left(), subst), substitute(f.right(), subst));
  }
}

Formula substitute(const Formula& f, const std::string& var, const Term& t) {
  if (t.is_variable() && t.name() == var) return f;
  return substitute(f, std::map<std::string, Term>{{var, t}});
}

// ---------------------------------------------------------------- normal form

Formula normalize(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::PropAtom:
    case FormulaKind::Predicate:
    case FormulaKind::Equality:
      return f;
    case FormulaKind::Not:
      return Formula::negation(normalize(f.left()));
    case FormulaKind::Forall:
      return Formula::forall(f.var(), normalize(f.body()));
    case FormulaKind::Exists:
      return Formula::negation(Formula::forall(f.var(), Formula::negation(normalize(f.body()))));
    default:
      break;
  }
  Formula a = normalize(f.left());
  Formula b = normalize(f.right());
  switch (f.kind()) {
    case FormulaKind::And:
      return Formula::negation(Formula::implication(a, Formula::negation(b)));
    case FormulaKind::Or:
      return Formula::implication(Formula::negation(a), b);
    case FormulaKind::Implies:
      return Formula::implication(a, b);
    case FormulaKind::Iff:
      return Formula::negation(
          Formula::implication(Formula::implication(a, b), Formula::negation(Formula::implication(b, a))));
    default:
      return Formula::sup(a, b);
  }
}

// ---------------------------------------------------------------- classification

const char* to_string(SyntaxClass c) {
  switch (c) {
    case SyntaxClass::Classical: return "classical";
    case SyntaxClass::Basic: return "basic";
    case SyntaxClass::Restricted: return "restricted";
    case SyntaxClass::Unrestricted: return "unrestricted";
  }
  return "?";
}

namespace {

void collect_nodes(const Formula& f, std::vector<Formula>& quants, std::vector<Formula>& sups) {
  if (f.is_atomic() || !(f.has_sup() || f.has_quantifier())) return;
  if (f.is_quantifier()) quants.push_back(f);
  if (f.kind() == FormulaKind::Sup) sups.push_back(f);
  collect_nodes(f.left(), quants, sups);
  if (f.is_binary()) collect_nodes(f.right(), quants, sups);
}

bool quantifiers_classical(const Formula& f) {
  if (!f.has_sup() || !f.has_quantifier()) return true;
  if (f.is_quantifier()) return false;  // body contains sup
  if (!quantifiers_classical(f.left())) return false;
  return !f.is_binary() || quantifiers_classical(f.right());
}

}  // namespace

// Basic: every quantifier node has a sup-free body.
// Restricted: both operands of every sup node are basic.
SyntaxClass classify(const Formula& f) {
  if (!f.has_sup()) return SyntaxClass::Classical;
  std::vector<Formula> quants, sups;
  collect_nodes(f, quants, sups);
  const bool basic = std::all_of(quants.begin(), quants.end(), [](const Formula& q) { return q.body().classical(); });
  if (basic) return SyntaxClass::Basic;
  const bool restricted = std::all_of(sups.begin(), sups.end(), [](const Formula& s) {
    return quantifiers_classical(s.left()) && quantifiers_classical(s.right());
  });
  return restricted ? SyntaxClass::Restricted : SyntaxClass::Unrestricted;
}

std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<std::string> seen;
  auto visit = [&](auto&& self, const Formula& g) -> void {
    if (!g.is_atomic()) {
      self(self, g.left());
      if (g.is_binary()) self(self, g.right());
    }
    if (seen.insert(g.key()).second) out.push_back(g);
  };
  visit(visit, f);
  return out;
}

}  // namespace supkit
