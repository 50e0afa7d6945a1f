// Finite first-order structures, propositional valuations and classical
// (Tarskian) evaluation.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "supkit/formula.hpp"
#include "supkit/signature.hpp"

namespace supkit {

struct Structure {
  std::vector<std::string> domain;
  std::map<std::string, int> constants;
  // Values indexed by the argument tuple read as a base-|domain| numeral,
  // first argument most significant.
  struct Function {
    int arity = 1;
    std::vector<int> values;
  };
  struct Relation {
    int arity = 1;
    std::vector<char> holds;
  };
  std::map<std::string, Function> functions;
  std::map<std::string, Relation> predicates;
  std::map<std::string, bool> props;

  int size() const { return static_cast<int>(domain.size()); }
  // Index of the element with the given id; throws EvalError when absent.
  int element(const std::string& id) const;
  std::size_t tuple_index(const std::vector<int>& args) const;

  // Throws EvalError when an interpretation is partial or out of range.
  void validate() const;

  static Structure with_domain(int n);
};

// A truth assignment to propositional atoms.
struct Valuation {
  std::map<std::string, bool> assignment;
  // One-element structure carrying the assignment.
  Structure as_structure() const;
};

using Env = std::map<std::string, int>;

int eval_term(const Structure& m, const Term& t, const Env& env);
// Standard truth of a classical formula; env covers its free variables.
// Throws EvalError on Sup, unbound variables or uninterpreted symbols.
bool eval_classical(const Structure& m, const Formula& f, const Env& env = {});
bool eval_classical(const Valuation& v, const Formula& f);

// All structures over sig with the given domain sizes, addressed by a dense
// index so the space can be split between workers deterministically.
class StructureSpace {
 public:
  StructureSpace(Signature sig, std::vector<int> domain_sizes);

  // Saturates at UINT64_MAX.
  std::uint64_t count() const { return total_; }
  Structure at(std::uint64_t index) const;
  const Signature& signature() const { return sig_; }
  const std::vector<int>& domain_sizes() const { return sizes_; }

 private:
  Signature sig_;
  std::vector<int> sizes_;
  std::vector<std::uint64_t> per_size_;
  std::uint64_t total_ = 0;
};

}  // namespace supkit
