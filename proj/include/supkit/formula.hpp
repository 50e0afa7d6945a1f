// Terms and formulas of the superposition language: classical first-order
// logic plus the binary connective `sup`.
//
// Both Term and Formula are immutable handles over shared nodes. Every node
// carries two keys computed at construction:
//   key()  - injective prefix encoding of the AST (structural identity);
//   nkey() - key of the abbreviation-free form over {~, ->, forall, sup}
//            (identity "up to definitions"; used by choice tables and the
//            proof checker).
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "supkit/errors.hpp"

namespace supkit {

enum class TermKind : std::uint8_t { Variable, Constant, Function, Parameter };

class Term {
 public:
  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term function(std::string name, std::vector<Term> args);
  // A domain element used as a constant of L(M); printed as `@id`.
  static Term parameter(std::string element);

  TermKind kind() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;
  const std::string& key() const;

  bool is_variable() const { return kind() == TermKind::Variable; }
  bool closed() const;
  void collect_variables(std::set<std::string>& out) const;
  bool has_variable(const std::string& var) const;

  friend bool operator==(const Term& a, const Term& b) { return a.key() == b.key(); }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b) { return a.key() < b.key(); }

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class FormulaKind : std::uint8_t {
  PropAtom,
  Predicate,
  Equality,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Sup,
  Forall,
  Exists,
};

const char* to_string(FormulaKind kind);

class Formula {
 public:
  static Formula prop(std::string name);
  static Formula predicate(std::string name, std::vector<Term> args);
  static Formula equality(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(Formula a, Formula b);
  static Formula disjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula biconditional(Formula a, Formula b);
  static Formula sup(Formula a, Formula b);
  static Formula forall(std::string var, Formula body);
  static Formula exists(std::string var, Formula body);
  static Formula binary(FormulaKind kind, Formula a, Formula b);
  static Formula quantifier(FormulaKind kind, std::string var, Formula body);

  FormulaKind kind() const;
  // Atom / predicate name.
  const std::string& name() const;
  // Predicate arguments, or {lhs, rhs} for equality.
  const std::vector<Term>& terms() const;
  // Children: `left()` is the only child of Not and the body of a quantifier.
  const Formula& left() const;
  const Formula& right() const;
  const Formula& body() const { return left(); }
  // Bound variable of a quantifier.
  const std::string& var() const;

  const std::string& key() const;
  const std::string& nkey() const;

  bool is_atomic() const;
  bool is_binary() const;
  bool is_quantifier() const;
  bool has_sup() const;
  bool has_quantifier() const;
  // True when no predicate, equality or quantifier occurs.
  bool propositional() const;
  bool classical() const { return !has_sup(); }
  bool has_parameter() const;
  std::size_t size() const;
  std::size_t depth() const;

  bool same_node(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b) { return a.key() == b.key(); }
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }
  friend bool operator<(const Formula& a, const Formula& b) { return a.key() < b.key(); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Node node);
  std::shared_ptr<const Node> node_;
};

// Same formula once ∧, ∨, ↔, ∃ are unfolded into ~, ->, forall.
inline bool same_modulo_definitions(const Formula& a, const Formula& b) {
  return a.nkey() == b.nkey();
}

std::string canonical_key(const Formula& f);
// Order-independent key of the unordered pair {a, b}; for a ≡ b it is the
// singleton key. Uses nkey so that abbreviations name the same sentence.
std::string pair_key(const Formula& a, const Formula& b);

std::set<std::string> free_vars(const Formula& f);
bool is_sentence(const Formula& f);
bool occurs_free(const Formula& f, const std::string& var);

// Replaces the free occurrences of `var` by `t`. Throws CaptureError when a
// variable of `t` would become bound.
Formula substitute(const Formula& f, const std::string& var, const Term& t);
// Simultaneous substitution.
Formula substitute(const Formula& f, const std::map<std::string, Term>& subst);
Term substitute(const Term& t, const std::map<std::string, Term>& subst);

// Abbreviation-free form over {~, ->, forall, sup} and atoms:
//   a /\ b := ~(a -> ~b)   a \/ b := ~a -> b
//   a <-> b := (a -> b) /\ (b -> a)   exists v. a := ~forall v. ~a
Formula normalize(const Formula& f);

enum class SyntaxClass : std::uint8_t { Classical = 0, Basic = 1, Restricted = 2, Unrestricted = 3 };

const char* to_string(SyntaxClass c);
SyntaxClass classify(const Formula& f);
inline bool is_basic(const Formula& f) { return classify(f) <= SyntaxClass::Basic; }
inline bool is_restricted(const Formula& f) { return classify(f) <= SyntaxClass::Restricted; }

// All subformulas (including f itself), children before parents, no duplicates.
std::vector<Formula> subformulas(const Formula& f);

}  // namespace supkit
