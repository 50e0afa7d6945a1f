#include "supkit/structure.hpp"

#include <limits>

namespace supkit {

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > std::numeric_limits<std::uint64_t>::max() / b) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

std::size_t table_size(int n, int arity) {
  std::size_t s = 1;
  for (int i = 0; i < arity; ++i) s *= static_cast<std::size_t>(n);
  return s;
}

}  // namespace

int Structure::element(const std::string& id) const {
  for (std::size_t i = 0; i < domain.size(); ++i)
    if (domain[i] == id) return static_cast<int>(i);
  throw EvalError("no domain element '" + id + "'");
}

std::size_t Structure::tuple_index(const std::vector<int>& args) const {
  std::size_t idx = 0;
  for (int a : args) idx = idx * domain.size() + static_cast<std::size_t>(a);
  return idx;
}

void Structure::validate() const {
  const int n = size();
  if (n == 0) throw EvalError("structure has an empty domain");
  for (std::size_t i = 0; i < domain.size(); ++i)
    for (std::size_t j = i + 1; j < domain.size(); ++j)
      if (domain[i] == domain[j]) throw EvalError("duplicate domain element '" + domain[i] + "'");
  for (const auto& [c, e] : constants)
    if (e < 0 || e >= n) throw EvalError("constant '" + c + "' interpreted outside the domain");
  for (const auto& [name, fn] : functions) {
    if (fn.values.size() != table_size(n, fn.arity)) throw EvalError("function '" + name + "' is not total");
    for (int v : fn.values)
      if (v < 0 || v >= n) throw EvalError("function '" + name + "' maps outside the domain");
  }
  for (const auto& [name, rel] : predicates)
    if (rel.holds.size() != table_size(n, rel.arity)) throw EvalError("predicate '" + name + "' is not total");
}

Structure Structure::with_domain(int n) {
  Structure m;
  for (int i = 0; i < n; ++i) m.domain.push_back("e" + std::to_string(i));
  return m;
}

Structure Valuation::as_structure() const {
  Structure m = Structure::with_domain(1);
  m.props = assignment;
  return m;
}

int eval_term(const Structure& m, const Term& t, const Env& env) {
  switch (t.kind()) {
    case TermKind::Variable: {
      auto it = env.find(t.name());
      if (it == env.end()) throw EvalError("unbound variable '" + t.name() + "'");
      return it->second;
    }
    case TermKind::Constant: {
      auto it = m.constants.find(t.name());
      if (it == m.constants.end()) throw EvalError("uninterpreted constant '" + t.name() + "'");
      return it->second;
    }
    case TermKind::Parameter:
      return m.element(t.name());
    case TermKind::Function: {
      auto it = m.functions.find(t.name());
      if (it == m.functions.end() || it->second.arity != static_cast<int>(t.args().size()))
        throw EvalError("uninterpreted function '" + t.name() + "'");
      std::vector<int> args;
      for (const Term& a : t.args()) args.push_back(eval_term(m, a, env));
      return it->second.values.at(m.tuple_index(args));
    }
  }
  return 0;
}

bool eval_classical(const Structure& m, const Formula& f, const Env& env) {
  switch (f.kind()) {
    case FormulaKind::PropAtom: {
      auto it = m.props.find(f.name());
      if (it == m.props.end()) throw EvalError("no truth value for atom '" + f.name() + "'");
      return it->second;
    }
    case FormulaKind::Predicate: {
      auto it = m.predicates.find(f.name());
      if (it == m.predicates.end() || it->second.arity != static_cast<int>(f.terms().size()))
        throw EvalError("uninterpreted predicate '" + f.name() + "'");
      std::vector<int> args;
      for (const Term& a : f.terms()) args.push_back(eval_term(m, a, env));
      return it->second.holds.at(m.tuple_index(args)) != 0;
    }
    case FormulaKind::Equality:
      return eval_term(m, f.terms()[0], env) == eval_term(m, f.terms()[1], env);
    case FormulaKind::Not:
      return !eval_classical(m, f.left(), env);
    case FormulaKind::And:
      return eval_classical(m, f.left(), env) && eval_classical(m, f.right(), env);
    case FormulaKind::Or:
      return eval_classical(m, f.left(), env) || eval_classical(m, f.right(), env);
    case FormulaKind::Implies:
      return !eval_classical(m, f.left(), env) || eval_classical(m, f.right(), env);
    case FormulaKind::Iff:
      return eval_classical(m, f.left(), env) == eval_classical(m, f.right(), env);
    case FormulaKind::Sup:
      throw EvalError("classical evaluation reached a sup node");
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool universal = f.kind() == FormulaKind::Forall;
      Env inner = env;
      for (int e = 0; e < m.size(); ++e) {
        inner[f.var()] = e;
        if (eval_classical(m, f.body(), inner) != universal) return !universal;
      }
      return universal;
    }
  }
  return false;
}

bool eval_classical(const Valuation& v, const Formula& f) { return eval_classical(v.as_structure(), f); }

// ---------------------------------------------------------------- enumeration

StructureSpace::StructureSpace(Signature sig, std::vector<int> domain_sizes)
    : sig_(std::move(sig)), sizes_(std::move(domain_sizes)) {
  for (int n : sizes_) {
    if (n <= 0) throw SignatureError("domain sizes must be positive");
    const auto un = static_cast<std::uint64_t>(n);
    std::uint64_t c = sat_pow(un, sig_.constants.size());
    for (const auto& [f, ar] : sig_.functions) c = sat_mul(c, sat_pow(un, table_size(n, ar)));
    for (const auto& [p, ar] : sig_.predicates) c = sat_mul(c, sat_pow(2, table_size(n, ar)));
    c = sat_mul(c, sat_pow(2, sig_.prop_atoms.size()));
    per_size_.push_back(c);
    total_ = total_ > std::numeric_limits<std::uint64_t>::max() - c ? std::numeric_limits<std::uint64_t>::max()
                                                                      : total_ + c;
  }
}

Structure StructureSpace::at(std::uint64_t index) const {
  std::size_t which = 0;
  while (which < sizes_.size() && index >= per_size_[which]) index -= per_size_[which++];
  if (which == sizes_.size()) throw EvalError("structure index out of range");
  const int n = sizes_[which];
  Structure m = Structure::with_domain(n);
  auto digit = [&](std::uint64_t radix) {
    const auto d = static_cast<int>(index % radix);
    index /= radix;
    return d;
  };
  // Props vary fastest so that propositional spaces enumerate valuations in
  // the usual binary order.
  for (auto it = sig_.prop_atoms.rbegin(); it != sig_.prop_atoms.rend(); ++it) m.props[*it] = digit(2) != 0;
  for (const auto& [p, ar] : sig_.predicates) {
    Structure::Relation r{ar, std::vector<char>(table_size(n, ar))};
    for (char& h : r.holds) h = static_cast<char>(digit(2));
    m.predicates.emplace(p, std::move(r));
  }
  for (const auto& [f, ar] : sig_.functions) {
    Structure::Function fn{ar, std::vector<int>(table_size(n, ar))};
    for (int& v : fn.values) v = digit(static_cast<std::uint64_t>(n));
    m.functions.emplace(f, std::move(fn));
  }
  for (const auto& c : sig_.constants) m.constants[c] = digit(static_cast<std::uint64_t>(n));
  return m;
}

}  // namespace supkit
