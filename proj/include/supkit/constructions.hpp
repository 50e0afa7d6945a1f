// Executable constructions: failure of universal instantiation, the
// non-existence of uniform choice functions, choice functions built from
// complete theory fragments, and the object-superposition dichotomy.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "supkit/choice.hpp"
#include "supkit/semantics.hpp"
#include "supkit/structure.hpp"

namespace supkit {

// ---------------------------------------------------------------- UI failure

struct UiWitness {
  int case_id = 0;        // 1..4
  std::string structure_name;  // "M1" or "M2"
  Structure structure;
  ChoiceTable table{ChoiceMode::Formula};
  std::vector<std::string> vars;  // v1, v2, ...
  Formula psi;            // [v = r -> alpha | beta]
  Formula closure;        // forall v. psi
  Formula instance;       // psi(r)
  std::vector<Term> terms;  // r
  bool closure_true = false;
  bool instance_true = true;
};

// Four-case construction for alpha(v) one free variable and closed t1 != t2.
UiWitness ui_failure_witness(const Signature& sig, const Formula& alpha, const Term& t1, const Term& t2,
                             const ChoiceTable& f, int max_domain = 3);

// Same construction for alpha(vars), beta(vars) and closed tuples t, s with
// (a) alpha(s) = beta(t), (b) alpha(t) = beta(s), (c) alpha(t) /\ ~beta(t) and
// ~alpha(t) /\ beta(t) satisfiable. Violations raise ConstructionError naming
// the condition.
UiWitness ui_failure_general(const Signature& sig, const Formula& alpha, const Formula& beta,
                             const std::vector<std::string>& vars, const std::vector<Term>& t,
                             const std::vector<Term>& s, const ChoiceTable& f, int max_domain = 3);

// The formula-mode table making the given choices on {alpha, beta} (open) and
// {alpha(t), beta(t)}.
ChoiceTable ui_case_table(const Formula& alpha, const Formula& beta, const std::vector<std::string>& vars,
                          const std::vector<Term>& t, int case_id);

// ---------------------------------------------------------------- uniformity

struct UniformityBranch {
  Formula chosen;          // f(alpha(v1), alpha(v2))
  Formula swapped;         // [f(alpha(v1), alpha(v2))](v2, v1)
  Formula chosen_swapped;  // f(alpha(v2), alpha(v1))
  bool equivalent = false; // oracle verdict on swapped ~ chosen_swapped
  bool contradiction = false;
};

struct UniformityTrace {
  Formula a1;
  Formula a2;
  std::vector<UniformityBranch> branches;
  std::size_t tables = 0;            // tables enumerated on the pair
  std::size_t tables_satisfying = 0; // tables meeting the uniformity equation
  std::string oracle;
};

UniformityTrace refute_uniformity(const Formula& alpha, const std::string& v1, const std::string& v2,
                                  const EquivOracle& oracle);

// ---------------------------------------------------------------- fragments

// A finite stand-in for a complete Henkin theory. Elements of the intended
// model are named by the parameters @e0..@e{domain-1}; quantified members are
// instantiated with them.
struct TheoryFragment {
  std::vector<Formula> seeds;
  int domain = 1;
  // Formula key -> in (true) / out (false) for members of the closure.
  std::map<std::string, bool> marking;
};

// Closure of the seeds under subformulas and parameter instances, children
// first.
std::vector<Formula> fragment_closure(const std::vector<Formula>& seeds, int domain);

// Marks the listed sentences in and propagates through negation.
TheoryFragment make_fragment(const std::vector<Formula>& in_sentences, int domain);

struct FragmentVerdict {
  bool ok = true;
  std::string failed;  // "incomplete", "a7", "a8", "S3", "SV", "connective", "henkin", "classical"
  std::string reason;
  std::vector<Formula> witness;
  std::optional<Structure> model;
};

// sv_closed additionally requires alpha|beta and alpha'|beta' with
// equivalent classical components to be marked alike.
FragmentVerdict check_theory_fragment(const TheoryFragment& t, bool sv_closed = false,
                                      const std::optional<EquivOracle>& oracle = std::nullopt);

struct BuiltModel {
  Structure model;
  ChoiceTable table;
  std::vector<std::string> decisions;  // one line per sup node
};

// AllF: ties pick the smaller key. Reg: choices are made per equivalence
// class, ties resolved by the class member with the least key.
// Verifies the satisfiability criterion, SCS truth of the fragment and (Reg)
// class membership before returning; failures raise ConstructionError.
BuiltModel build_choice_from_theory(const TheoryFragment& t, ChoiceClass cls,
                                    const std::optional<EquivOracle>& oracle = std::nullopt);

// ---------------------------------------------------------------- objects

struct ObjectTableRow {
  ChoiceTable table;
  std::vector<std::string> choices;    // printed winners on the two pairs
  std::vector<std::string> witnesses;  // elements x with (x=a)|(x=b)
  bool unique = false;
  bool unique_sentence = false;        // SCS truth of exists! v. (v=a)|(v=b)
  bool regular = false;
};

struct ObjectReport {
  std::string a;
  std::string b;
  std::vector<ObjectTableRow> rows;
  bool part_i = false;   // some table gives exactly one witness
  bool part_ii = false;  // no regular table gives exactly one witness
};

ObjectReport object_superposition_report(const Structure& m, const std::string& a, const std::string& b,
                                         const EquivOracle& oracle);

// ---------------------------------------------------------------- interpolation

struct InterpolationReport {
  int depth = 0;
  std::size_t formulas = 0;
  std::size_t pairs = 0;
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
  std::string first_violation;
  double seconds = 0;
};

// All sentences over {p0, p1} built from ~, /\, \/, sup with depth <= depth.
std::vector<Formula> small_sentences(int depth);

// For every pair, valuation and AllF table: phi/\psi => phi|psi => phi\/psi.
InterpolationReport interpolation_sweep(int depth, int jobs = 1);

}  // namespace supkit
