#include "supkit/semantics.hpp"

#include <atomic>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "supkit/parser.hpp"

namespace supkit {

namespace {

bool scs(const Structure& m, const ChoiceTable& f, const Formula& phi) {
  if (phi.classical()) return eval_classical(m, phi);
  switch (phi.kind()) {
    case FormulaKind::Sup:
      return eval_classical(m, collapse(f, phi));
    case FormulaKind::Not:
      return !scs(m, f, phi.left());
    case FormulaKind::And:
      return scs(m, f, phi.left()) && scs(m, f, phi.right());
    case FormulaKind::Or:
      return scs(m, f, phi.left()) || scs(m, f, phi.right());
    case FormulaKind::Implies:
      return !scs(m, f, phi.left()) || scs(m, f, phi.right());
    case FormulaKind::Iff:
      return scs(m, f, phi.left()) == scs(m, f, phi.right());
    case FormulaKind::Forall:
    case FormulaKind::Exists: {
      const bool universal = phi.kind() == FormulaKind::Forall;
      for (const std::string& x : m.domain)
        if (scs(m, f, substitute(phi.body(), phi.var(), Term::parameter(x))) != universal) return !universal;
      return universal;
    }
    default:
      throw EvalError("unexpected node in SCS evaluation");
  }
}

}  // namespace

bool eval_scs(const Structure& m, const ChoiceTable& f, const Formula& phi) {
  if (!is_restricted(phi)) throw NotRestricted("SCS truth is defined for restricted sentences only: " + print(phi));
  if (!is_sentence(phi)) throw EvalError("SCS truth needs a sentence: " + print(phi));
  if (phi.has_sup() && f.mode() != ChoiceMode::Sentence) throw EvalError("SCS needs a sentence-mode table");
  return scs(m, f, phi);
}

bool eval_fcs(const Structure& m, const ChoiceTable& f, const Formula& phi) {
  if (!is_sentence(phi)) throw EvalError("FCS truth needs a sentence: " + print(phi));
  if (phi.has_sup() && f.mode() != ChoiceMode::Formula) throw EvalError("FCS needs a formula-mode table");
  return eval_classical(m, collapse(f, phi));
}

bool holds(Semantics s, const Structure& m, const ChoiceTable& f, const Formula& phi) {
  return s == Semantics::SCS ? eval_scs(m, f, phi) : eval_fcs(m, f, phi);
}

const char* to_string(Semantics s) { return s == Semantics::SCS ? "scs" : "fcs"; }

std::string SearchSpace::describe() const {
  std::ostringstream os;
  os << to_string(semantics) << ", domain sizes {";
  for (std::size_t i = 0; i < domain_sizes.size(); ++i) os << (i ? "," : "") << domain_sizes[i];
  os << "}";
  if (sig.propositional()) os << ", all valuations of " << sig.prop_atoms.size() << " atoms";
  return os.str();
}

SearchSpace default_space(const std::vector<Formula>& formulas, int max_domain) {
  SearchSpace s;
  s.sig = infer_signature(formulas);
  if (s.sig.propositional()) {
    bool quantified = false;
    for (const Formula& f : formulas) quantified = quantified || f.has_quantifier();
    if (!quantified) {
      s.domain_sizes = {1};
      return s;
    }
  }
  for (int n = 1; n <= max_domain; ++n) s.domain_sizes.push_back(n);
  return s;
}

ClassSpec default_spec(ChoiceClass cls, const std::vector<Formula>& formulas, int oracle_bound) {
  ClassSpec spec{cls, std::nullopt};
  if (!needs_oracle(cls)) return spec;
  bool prop = true;
  for (const Formula& f : formulas) prop = prop && f.propositional();
  spec.oracle = prop ? EquivOracle::truth_table() : EquivOracle::bounded(oracle_bound, infer_signature(formulas));
  return spec;
}

namespace {

enum class Outcome { Holds, Fails };

// Evaluates the task under one table: Fails when Σ holds and φ does not.
Outcome run(const SearchSpace& space, const Structure& m, const ChoiceTable& f, const std::vector<Formula>& sigma,
            const Formula& phi) {
  for (const Formula& s : sigma)
    if (!holds(space.semantics, m, f, s)) return Outcome::Holds;
  return holds(space.semantics, m, f, phi) ? Outcome::Holds : Outcome::Fails;
}

}  // namespace

Verdict check_consequence(const std::vector<Formula>& sigma, const Formula& phi, const ClassSpec& spec,
                          const SearchSpace& space, const CheckOptions& opts) {
  std::vector<Formula> all = sigma;
  all.push_back(phi);
  for (const Formula& f : all) {
    if (!is_sentence(f)) throw EvalError("consequence checking needs sentences: " + print(f));
    if (space.semantics == Semantics::SCS && !is_restricted(f))
      throw NotRestricted("SCS consequence needs restricted sentences: " + print(f));
  }
  if (needs_oracle(spec.cls)) spec.require_oracle();

  Verdict verdict;
  verdict.space = space;
  verdict.spec = spec;
  StructureSpace structures(space.sig, space.domain_sizes);
  const std::uint64_t total = structures.count();
  if (total > space.max_structures)
    throw ResourceLimit("search space has " +
                        (total == std::numeric_limits<std::uint64_t>::max() ? std::string("too many")
                                                                            : std::to_string(total)) +
                        " structures, above the limit of " + std::to_string(space.max_structures));

  const ChoiceMode mode = space.semantics == Semantics::SCS ? ChoiceMode::Sentence : ChoiceMode::Formula;
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> next{0};
  std::atomic<std::uint64_t> runs{0}, visited{0};
  std::mutex mu;
  std::optional<std::pair<Structure, ChoiceTable>> found;
  std::exception_ptr error;

  auto worker = [&] {
    try {
      for (;;) {
        const std::uint64_t i = next.fetch_add(1);
        if (i >= total || i >= best.load()) return;
        Structure m = structures.at(i);
        std::optional<ChoiceTable> bad;
        std::uint64_t local = 0;
        enumerate_tables(ChoiceTable(mode), spec, [&](const ChoiceTable& f) {
          if (++local > space.max_tables)
            throw ResourceLimit("more than " + std::to_string(space.max_tables) + " tables for one structure");
          if (run(space, m, f, sigma, phi) == Outcome::Fails) {
            bad = f;
            return false;
          }
          return true;
        });
        runs += local;
        ++visited;
        if (bad) {
          std::lock_guard lock(mu);
          if (i < best.load()) {
            best = i;
            found.emplace(std::move(m), std::move(*bad));
          }
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      best = 0;
    }
  };

  const int jobs = std::max(1, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);

  verdict.structures = visited.load();
  verdict.runs = runs.load();
  if (found) {
    const auto& [m, f] = *found;
    if (run(space, m, f, sigma, phi) != Outcome::Fails || !extendable(f, spec))
      throw Error("internal: countermodel failed re-verification");
    verdict.valid = false;
    verdict.model = m;
    verdict.table = f;
  }
  return verdict;
}

Verdict is_tautology(const Formula& phi, const ClassSpec& spec, const SearchSpace& space, const CheckOptions& opts) {
  return check_consequence({}, phi, spec, space, opts);
}

}  // namespace supkit
