// Superposition truth relations and bounded consequence checking.
//   SCS: tables on sentences, quantifiers evaluated before collapsing
//        (restricted sentences only).
//   FCS: tables on formulas, collapse commutes with the quantifiers.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "supkit/choice.hpp"
#include "supkit/structure.hpp"

namespace supkit {

bool eval_scs(const Structure& m, const ChoiceTable& f, const Formula& phi);
bool eval_fcs(const Structure& m, const ChoiceTable& f, const Formula& phi);

enum class Semantics : std::uint8_t { SCS, FCS };

const char* to_string(Semantics s);

struct SearchSpace {
  Signature sig;
  std::vector<int> domain_sizes;
  Semantics semantics = Semantics::SCS;
  // Upper bound on structures; exceeding it raises ResourceLimit.
  std::uint64_t max_structures = 2'000'000;
  // Upper bound on completed table runs per structure.
  std::uint64_t max_tables = 1'000'000;

  std::string describe() const;
};

// Propositional tasks: every valuation of the occurring atoms. First-order
// tasks: every structure with 1..max_domain elements over the occurring
// vocabulary.
SearchSpace default_space(const std::vector<Formula>& formulas, int max_domain = 3);

// Default class spec: truth-table oracle for propositional tasks, bounded
// oracle otherwise (only attached when the class needs one).
ClassSpec default_spec(ChoiceClass cls, const std::vector<Formula>& formulas, int oracle_bound = 3);

struct Verdict {
  bool valid = true;
  SearchSpace space;
  ClassSpec spec;
  std::optional<Structure> model;
  std::optional<ChoiceTable> table;
  std::uint64_t structures = 0;
  std::uint64_t runs = 0;
};

struct CheckOptions {
  int jobs = 1;
};

// Σ ⊨_X φ over the space. The countermodel, if any, has the lowest structure
// index and is re-verified before it is returned.
Verdict check_consequence(const std::vector<Formula>& sigma, const Formula& phi, const ClassSpec& spec,
                          const SearchSpace& space, const CheckOptions& opts = {});
Verdict is_tautology(const Formula& phi, const ClassSpec& spec, const SearchSpace& space,
                     const CheckOptions& opts = {});

// Truth of every formula in the given relation; MissingEntry propagates.
bool holds(Semantics s, const Structure& m, const ChoiceTable& f, const Formula& phi);

}  // namespace supkit
