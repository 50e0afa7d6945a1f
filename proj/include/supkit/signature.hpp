// The vocabulary of a first-order language L.
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "supkit/formula.hpp"

namespace supkit {

struct Signature {
  std::set<std::string> constants;
  std::map<std::string, int> functions;
  std::map<std::string, int> predicates;
  std::set<std::string> prop_atoms;

  // Throws SignatureError on duplicate names, non-positive arities or
  // names using the reserved parameter prefix '@'.
  void validate() const;
  bool empty() const;
  bool propositional() const { return constants.empty() && functions.empty() && predicates.empty(); }

  // Union; throws SignatureError when a symbol is declared with two arities.
  void merge(const Signature& other);

  friend bool operator==(const Signature&, const Signature&) = default;
};

// Smallest signature covering the symbols of the given formulas.
Signature infer_signature(const std::vector<Formula>& formulas);

// Closed terms of nesting depth <= depth over the constants and functions of sig.
std::vector<Term> closed_terms(const Signature& sig, int depth);

}  // namespace supkit
