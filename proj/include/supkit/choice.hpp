// Choice functions on pairs of classical sentences (or formulas), the
// collapsing map they induce, and the classes AllF, Asso, Reg, Reg*, Dec.
#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "supkit/formula.hpp"
#include "supkit/signature.hpp"

namespace supkit {

enum class ChoiceMode : std::uint8_t { Sentence, Formula };

// Raised by choose/collapse when a pair has no entry yet.
struct MissingEntry : Error {
  MissingEntry(Formula a, Formula b);
  Formula first;
  Formula second;
};

class ChoiceTable {
 public:
  struct Entry {
    Formula first;  // smaller nkey
    Formula second;
    bool chose_first;
    const Formula& chosen() const { return chose_first ? first : second; }
    const Formula& rejected() const { return chose_first ? second : first; }
  };

  explicit ChoiceTable(ChoiceMode mode = ChoiceMode::Sentence) : mode_(mode) {}

  ChoiceMode mode() const { return mode_; }
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, Entry>& entries() const { return entries_; }

  bool has(const Formula& a, const Formula& b) const;
  // Returns whichever argument is chosen; a when a and b are the same
  // sentence. Throws MissingEntry.
  Formula choose(const Formula& a, const Formula& b) const;
  std::optional<Formula> lookup(const Formula& a, const Formula& b) const;

  // Copy with winner chosen over other. Throws Error when the pair is already
  // decided the other way or the formulas are illegal for the mode.
  ChoiceTable with(const Formula& winner, const Formula& other) const;
  void set(const Formula& winner, const Formula& other);

  // All formulas occurring in entries, one per nkey, in nkey order.
  std::vector<Formula> universe() const;

 private:
  ChoiceMode mode_;
  std::map<std::string, Entry> entries_;
};

// Decides classical equivalence: exactly for propositional formulas, or over
// all structures with at most max_domain elements (parameters read as
// uninterpreted constants, free variables under all assignments).
class EquivOracle {
 public:
  enum class Kind : std::uint8_t { PropTruthTable, BoundedFO };

  static EquivOracle truth_table();
  static EquivOracle bounded(int max_domain, Signature sig = {});

  Kind kind() const { return kind_; }
  int max_domain() const { return max_domain_; }
  const Signature& signature() const { return sig_; }
  bool equivalent(const Formula& a, const Formula& b) const;
  // Satisfiable / valid under the same bound.
  bool satisfiable(const Formula& a) const;
  std::string describe() const;

 private:
  struct Cache;
  EquivOracle(Kind kind, int max_domain, Signature sig);
  Kind kind_;
  int max_domain_;
  Signature sig_;
  std::shared_ptr<Cache> cache_;
};

// Domain bound from SUPKIT_ORACLE_BOUND, else fallback.
int oracle_bound_from_env(int fallback = 3);

enum class ChoiceClass : std::uint8_t { AllF, Reg, Asso, RegStar, Dec };

const char* to_string(ChoiceClass c);
ChoiceClass parse_choice_class(const std::string& name);
bool needs_oracle(ChoiceClass c);

struct ClassSpec {
  ChoiceClass cls = ChoiceClass::AllF;
  std::optional<EquivOracle> oracle;

  // Throws OracleRequired when the class needs an oracle that is absent.
  const EquivOracle& require_oracle() const;
};

struct ClassVerdict {
  bool member = true;
  std::string reason;
  std::vector<Formula> witness;
};

// Collapsing map. Sentence mode: φ must be a basic sentence (NotBasic
// otherwise). Formula mode: also commutes with the quantifiers.
Formula collapse(const ChoiceTable& f, const Formula& phi);

// Membership of a table that is total on the pairs of universe.
ClassVerdict check_class(const ChoiceTable& f, const ClassSpec& spec, const std::vector<Formula>& universe);

// Whether some choice function of the class agrees with the partial table.
bool extendable(const ChoiceTable& partial, const ClassSpec& spec);
ClassVerdict explain_extendable(const ChoiceTable& partial, const ClassSpec& spec);

// Runs task under every table of the class that extends seed on the pairs the
// task touches. A MissingEntry thrown by the task branches on both choices
// (first side first), pruning branches that are not extendable. The task
// returns false to stop. Returns the number of completed task runs.
std::size_t enumerate_tables(const ChoiceTable& seed, const ClassSpec& spec,
                             const std::function<bool(const ChoiceTable&)>& task);

// min of the order given by the list (earlier is smaller), on all pairs.
ChoiceTable table_from_order(const std::vector<Formula>& order, ChoiceMode mode = ChoiceMode::Sentence);

}  // namespace supkit
