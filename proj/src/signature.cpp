#include "supkit/signature.hpp"

#include <algorithm>
#include <functional>

namespace supkit {

void Signature::validate() const {
  std::set<std::string> seen;
  auto check = [&](const std::string& name, const char* what) {
    if (name.empty()) throw SignatureError(std::string("empty ") + what + " name");
    if (name[0] == '@') throw SignatureError(std::string(what) + " '" + name + "' uses the reserved prefix '@'");
    if (!seen.insert(name).second) throw SignatureError("symbol '" + name + "' declared twice");
  };
  for (const auto& c : constants) check(c, "constant");
  for (const auto& [f, n] : functions) {
    check(f, "function");
    if (n <= 0) throw SignatureError("function '" + f + "' needs positive arity");
  }
  for (const auto& [p, n] : predicates) {
    check(p, "predicate");
    if (n <= 0) throw SignatureError("predicate '" + p + "' needs positive arity");
  }
  for (const auto& p : prop_atoms) check(p, "propositional atom");
}

bool Signature::empty() const { return propositional() && prop_atoms.empty(); }

void Signature::merge(const Signature& other) {
  auto merge_map = [](std::map<std::string, int>& into, const std::map<std::string, int>& from) {
    for (const auto& [name, n] : from) {
      auto [it, fresh] = into.emplace(name, n);
      if (!fresh && it->second != n)
        throw SignatureError("symbol '" + name + "' used with arities " + std::to_string(it->second) + " and " +
                             std::to_string(n));
    }
  };
  constants.insert(other.constants.begin(), other.constants.end());
  prop_atoms.insert(other.prop_atoms.begin(), other.prop_atoms.end());
  merge_map(functions, other.functions);
  merge_map(predicates, other.predicates);
}

namespace {

void scan_term(const Term& t, Signature& sig) {
  switch (t.kind()) {
    case TermKind::Constant:
      sig.constants.insert(t.name());
      break;
    case TermKind::Function: {
      Signature one;
      one.functions[t.name()] = static_cast<int>(t.args().size());
      sig.merge(one);
      for (const Term& a : t.args()) scan_term(a, sig);
      break;
    }
    default:
      break;
  }
}

void scan(const Formula& f, Signature& sig) {
  switch (f.kind()) {
    case FormulaKind::PropAtom:
      sig.prop_atoms.insert(f.name());
      return;
    case FormulaKind::Predicate: {
      Signature one;
      one.predicates[f.name()] = static_cast<int>(f.terms().size());
      sig.merge(one);
      [[fallthrough]];
    }
    case FormulaKind::Equality:
      for (const Term& t : f.terms()) scan_term(t, sig);
      return;
    default:
      scan(f.left(), sig);
      if (f.is_binary()) scan(f.right(), sig);
  }
}

}  // namespace

Signature infer_signature(const std::vector<Formula>& formulas) {
  Signature sig;
  for (const Formula& f : formulas) scan(f, sig);
  return sig;
}

std::vector<Term> closed_terms(const Signature& sig, int depth) {
  std::vector<Term> out;
  for (const auto& c : sig.constants) out.push_back(Term::constant(c));
  for (int d = 1; d <= depth && !out.empty(); ++d) {
    std::vector<Term> next;
    for (const auto& [fn, arity] : sig.functions) {
      std::vector<Term> args(static_cast<std::size_t>(arity), out.front());
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == args.size()) {
          Term t = Term::function(fn, args);
          if (std::find(out.begin(), out.end(), t) == out.end() &&
              std::find(next.begin(), next.end(), t) == next.end())
            next.push_back(t);
          return;
        }
        for (const Term& a : out) {
          args[i] = a;
          rec(i + 1);
        }
      };
      rec(0);
    }
    out.insert(out.end(), next.begin(), next.end());
  }
  return out;
}

}  // namespace supkit
