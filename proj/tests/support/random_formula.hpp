// Seeded random formulas over a small mixed vocabulary, and a direct
// recursive reading of the basic/restricted definitions used as a reference
// for classify.
#pragma once

#include <random>
#include <string>
#include <vector>

#include "supkit/formula.hpp"

namespace supkit::testing {

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed) : rng_(seed) {}

  Term term(int depth) {
    switch (pick(depth > 0 ? 5 : 4)) {
      case 0: return Term::variable(pick_of(vars_));
      case 1: return Term::constant(pick_of(consts_));
      case 2: return Term::parameter(pick(2) ? "e1" : "e0");
      case 3: return Term::variable(pick_of(vars_));
      default: return Term::function("g", {term(depth - 1)});
    }
  }

  Formula atom() {
    switch (pick(4)) {
      case 0: return Formula::prop("p" + std::to_string(pick(3)));
      case 1: return Formula::predicate("P", {term(1)});
      case 2: return Formula::predicate("R", {term(1), term(1)});
      default: return Formula::equality(term(1), term(1));
    }
  }

  Formula formula(int depth) {
    if (depth == 0 || pick(5) == 0) return atom();
    const int k = pick(11);
    if (k == 0) return Formula::negation(formula(depth - 1));
    if (k <= 5) {
      static const FormulaKind bin[] = {FormulaKind::And, FormulaKind::Or, FormulaKind::Implies,
                                        FormulaKind::Iff, FormulaKind::Sup};
      return Formula::binary(bin[k - 1], formula(depth - 1), formula(depth - 1));
    }
    if (k <= 7) return Formula::sup(formula(depth - 1), formula(depth - 1));
    return Formula::quantifier(k <= 9 ? FormulaKind::Forall : FormulaKind::Exists, pick_of(vars_),
                               formula(depth - 1));
  }

 private:
  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  const std::string& pick_of(const std::vector<std::string>& xs) {
    return xs[static_cast<std::size_t>(pick(static_cast<int>(xs.size())))];
  }

  std::mt19937_64 rng_;
  std::vector<std::string> vars_{"v", "u", "w"};
  std::vector<std::string> consts_{"c", "d"};
};

// Basic: classical, or a connective (incl. sup) over basic formulas.
inline bool basic_ref(const Formula& f) {
  if (!f.has_sup()) return true;
  if (f.is_quantifier()) return false;
  if (f.kind() == FormulaKind::Not) return basic_ref(f.left());
  return basic_ref(f.left()) && basic_ref(f.right());
}

// Restricted: basic, or a connective other than sup / a quantifier over
// restricted formulas.
inline bool restricted_ref(const Formula& f) {
  if (basic_ref(f)) return true;
  if (f.kind() == FormulaKind::Sup) return false;
  if (f.kind() == FormulaKind::Not || f.is_quantifier()) return restricted_ref(f.left());
  return restricted_ref(f.left()) && restricted_ref(f.right());
}

inline SyntaxClass classify_ref(const Formula& f) {
  if (!f.has_sup()) return SyntaxClass::Classical;
  if (basic_ref(f)) return SyntaxClass::Basic;
  if (restricted_ref(f)) return SyntaxClass::Restricted;
  return SyntaxClass::Unrestricted;
}

}  // namespace supkit::testing
