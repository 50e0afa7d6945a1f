// Hilbert systems K0-K3 (propositional) and L0-L3 (first-order).
//
//   K0 = P1-P3 + S1-S3, MP          L0 = K0 + UI, D, I1-I5, GR
//   K1 = K0 + SV                     L1 = L0 + SV
//   K2 = K1 + S4                     L2 = L1 + S4
//   K3 = K2 + S5                     L3 = L2 + S5
//
// Formulas are compared modulo the definitions of /\, \/, <->, exists.
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "supkit/choice.hpp"
#include "supkit/formula.hpp"

namespace supkit {

enum class SystemId : std::uint8_t { K0, K1, K2, K3, L0, L1, L2, L3 };

const char* to_string(SystemId s);
SystemId parse_system(const std::string& name);
int level(SystemId s);
bool first_order(SystemId s);
// K0/L0 -> AllF, K1/L1 -> Reg, K2/L2 -> Reg*, K3/L3 -> Dec.
ChoiceClass sound_class(SystemId s);

enum class Scheme : std::uint8_t { P1, P2, P3, S1, S2, S3, S4, S5, UI, D, I1, I2, I3, I4, I5 };

const char* to_string(Scheme s);
Scheme parse_scheme(const std::string& name);
bool scheme_in(Scheme s, SystemId sys);

struct Proof;

struct Justification {
  enum class Kind : std::uint8_t { Hypothesis, Axiom, MP, GR, SV };
  Kind kind = Kind::Hypothesis;
  Scheme scheme = Scheme::P1;
  // 1-based line numbers.
  int from = 0;
  int from2 = 0;
  std::shared_ptr<const Proof> cert;

  static Justification hyp() { return {}; }
  static Justification axiom(Scheme s) { return {Kind::Axiom, s, 0, 0, nullptr}; }
  static Justification mp(int minor, int major) { return {Kind::MP, Scheme::P1, minor, major, nullptr}; }
  static Justification gr(int line) { return {Kind::GR, Scheme::P1, line, 0, nullptr}; }
  static Justification sv(int line, Proof cert);
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct Proof {
  SystemId system = SystemId::K0;
  std::vector<Formula> hypotheses;
  std::vector<ProofLine> lines;
};

struct MatchResult {
  bool ok = false;
  std::map<std::string, std::string> bindings;  // metavariable -> printed formula/term
  std::string reason;
};

MatchResult match_axiom(const Formula& phi, Scheme scheme);

struct ProofOptions {
  // Every line of an L-proof must be restricted.
  bool restricted = true;
  // Allow open hypotheses; GR then checks its variable against them.
  bool open_hypotheses = false;
};

struct ProofVerdict {
  bool ok = true;
  int line = 0;  // first failing line, 1-based; 0 for proof-level errors
  std::string reason;
};

ProofVerdict check_proof(const Proof& p, const ProofOptions& opts = {});
// check_proof plus: hypotheses within sigma and last line equal to phi.
ProofVerdict derives_verdict(const std::vector<Formula>& sigma, const Formula& phi, const Proof& p,
                             const ProofOptions& opts = {});
inline bool derives(const std::vector<Formula>& sigma, const Formula& phi, const Proof& p,
                    const ProofOptions& opts = {}) {
  return derives_verdict(sigma, phi, p, opts).ok;
}

}  // namespace supkit
