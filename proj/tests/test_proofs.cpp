#include <doctest.h>

#include <filesystem>

#include "corpus.hpp"
#include "supkit/io.hpp"
#include "supkit/semantics.hpp"

using namespace supkit;
using namespace supkit::testing;

namespace fs = std::filesystem;

namespace {

const fs::path data_dir{SUPKIT_DATA_DIR};

Verdict semantic_check(const Proof& p) {
  std::vector<Formula> all = p.hypotheses;
  all.push_back(p.lines.back().formula);
  const SearchSpace space = default_space(all);
  return check_consequence(p.hypotheses, p.lines.back().formula, default_spec(sound_class(p.system), all), space);
}

}  // namespace

TEST_CASE("axiom matching") {
  const MatchResult s1 = match_axiom(F("p0 /\\ p1 -> p0 sup p1"), Scheme::S1);
  CHECK(s1.ok);
  CHECK(s1.bindings.size() == 2);
  CHECK_FALSE(match_axiom(F("p0 /\\ p1 -> p1 sup p0"), Scheme::S1).ok);
  CHECK(match_axiom(F("p0 sup p1 -> p0 \\/ p1"), Scheme::S2).ok);
  CHECK(match_axiom(F("p0 sup p1 -> p1 sup p0"), Scheme::S3).ok);
  CHECK(match_axiom(F("(forall v. P(v)) -> P(c1)"), Scheme::UI).ok);
  CHECK(match_axiom(F("(forall v. R(v, v)) -> R(g(c), g(c))"), Scheme::UI).ok);
  CHECK_FALSE(match_axiom(F("(forall v. R(v, v)) -> R(c, d)"), Scheme::UI).ok);
  CHECK_FALSE(match_axiom(F("(forall v. P(v)) -> P(u)"), Scheme::UI).ok);
  CHECK(match_axiom(F("(forall v. (p0 -> P(v))) -> (p0 -> forall v. P(v))"), Scheme::D).ok);
  const MatchResult d = match_axiom(F("(forall v. (P(v) -> P(v))) -> (P(v) -> forall v. P(v))"), Scheme::D);
  CHECK_FALSE(d.ok);
  CHECK(d.reason.find("side condition") != std::string::npos);
  CHECK(match_axiom(F("v = v"), Scheme::I1).ok);
  CHECK(match_axiom(F("forall u. u = u"), Scheme::I1).ok);
  CHECK(match_axiom(F("forall v u. (v = u -> (R(v, c) -> R(u, c)))"), Scheme::I5).ok);
  CHECK_FALSE(match_axiom(F("forall v u. (v = u -> (R(v, c) -> R(c, u)))"), Scheme::I5).ok);
  CHECK(match_axiom(F("(p0 sup p1) sup p2 -> p0 sup (p1 sup p2)"), Scheme::S4).ok);
  // Abbreviations are unfolded before matching.
  CHECK(match_axiom(F("~(p0 -> ~p1) -> p0 sup p1"), Scheme::S1).ok);
}

TEST_CASE("small proofs") {
  {
    ProofBuilder b(SystemId::K0, {F("p0 /\\ p1")});
    const int h = b.hyp(F("p0 /\\ p1"));
    const int a = b.axiom(F("p0 /\\ p1 -> p0 sup p1"), Scheme::S1);
    b.mp(h, a);
    CHECK(check_proof(b.proof()).ok);
    CHECK(derives({F("p0 /\\ p1")}, F("p0 sup p1"), b.proof()));
    CHECK_FALSE(derives({F("p0 /\\ p1")}, F("p1 sup p0"), b.proof()));
    CHECK_FALSE(derives({}, F("p0 sup p1"), b.proof()));
  }
  {
    ProofBuilder b(SystemId::K0, {F("p0 sup p1")});
    const int h = b.hyp(F("p0 sup p1"));
    const int a = b.axiom(F("p0 sup p1 -> p0 \\/ p1"), Scheme::S2);
    // Premises may be cited in either order.
    b.add(F("p0 \\/ p1"), Justification::mp(a, h));
    CHECK(derives({F("p0 sup p1")}, F("p0 \\/ p1"), b.proof()));
  }
  {
    ProofBuilder b(SystemId::K0);
    b.hyp(F("p0"));
    const ProofVerdict v = check_proof(b.proof());
    CHECK_FALSE(v.ok);
    CHECK(v.line == 1);
  }
}

TEST_CASE("SV and its certificate") {
  const Formula nn = F("~~p0"), p = F("p0");
  const Proof cert = iff_proof(SystemId::K0, nn, p, dne_proof(SystemId::K0, p), dni_proof(SystemId::K0, p));
  REQUIRE(check_proof(cert).ok);
  for (SystemId s : {SystemId::K1, SystemId::K2, SystemId::K3}) {
    ProofBuilder b(s);
    const int l = b.include(cert);
    b.sv(l, F("p1"), cert);
    CHECK(b.at(b.last()) == F("(~~p0 sup p1) <-> (p0 sup p1)"));
    CHECK(check_proof(b.proof()).ok);
  }
  ProofBuilder k0(SystemId::K0);
  const int l = k0.include(cert);
  k0.sv(l, F("p1"), cert);
  const ProofVerdict v = check_proof(k0.proof());
  CHECK_FALSE(v.ok);
  CHECK(v.reason.find("SV not in IR(K0)") != std::string::npos);

  // The certificate must prove exactly the premise.
  ProofBuilder wrong(SystemId::K1);
  const int w = wrong.include(cert);
  wrong.sv(w, F("p1"), dn_iff_proof(SystemId::K0, F("p1")));
  CHECK_FALSE(check_proof(wrong.proof()).ok);
}

TEST_CASE("restricted discipline") {
  ProofBuilder b(SystemId::L0);
  b.axiom(F("(forall v. P(v) sup Q(v)) sup P(c) -> (p0 -> (forall v. P(v) sup Q(v)) sup P(c))"), Scheme::P1);
  const ProofVerdict v = check_proof(b.proof());
  CHECK_FALSE(v.ok);
  CHECK(v.reason.rfind("NotRestricted:", 0) == 0);
  CHECK_FALSE(derives({}, b.at(1), b.proof()));
}

TEST_CASE("GR eigenvariable") {
  ProofBuilder b(SystemId::L0, {F("P(v)")});
  const int h = b.hyp(F("P(v)"));
  b.gr(h, "v");
  CHECK_FALSE(check_proof(b.proof()).ok);
  const ProofVerdict open = check_proof(b.proof(), ProofOptions{true, true});
  CHECK_FALSE(open.ok);
  CHECK(open.line == 2);

  ProofBuilder c(SystemId::L0, {F("P(v)")});
  const int h2 = c.hyp(F("P(v)"));
  const int a = c.axiom(F("P(v) -> (Q(u) -> P(v))"), Scheme::P1);
  const int m = c.mp(h2, a);
  c.gr(m, "u");
  CHECK(check_proof(c.proof(), ProofOptions{true, true}).ok);
}

TEST_CASE("bundled corpus matches the builder and is sound") {
  const auto entries = corpus();
  CHECK(entries.size() >= 12);
  std::set<Scheme> schemes;
  std::set<Justification::Kind> rules;
  for (const CorpusEntry& e : entries) {
    CAPTURE(e.name);
    const io::json j = io::read_file((data_dir / "proofs" / (e.name + ".json")).string());
    const Proof loaded = io::proof_from_json(j);
    CHECK(io::to_json(loaded) == io::to_json(e.proof));
    const ProofVerdict v = check_proof(loaded);
    CHECK_MESSAGE(v.ok, v.reason);
    const Verdict sem = semantic_check(loaded);
    CHECK(sem.valid);
    for (const ProofLine& l : loaded.lines) {
      rules.insert(l.just.kind);
      if (l.just.kind == Justification::Kind::Axiom) schemes.insert(l.just.scheme);
    }
    // Monotone in the system level.
    Proof up = loaded;
    up.system = first_order(loaded.system) ? SystemId::L3 : SystemId::K3;
    CHECK(check_proof(up).ok);
  }
  CHECK(schemes.size() == 15);
  CHECK(rules.size() == 5);
}

TEST_CASE("mutations are rejected at the right line") {
  const auto ms = mutations();
  CHECK(ms.size() >= 6);
  for (const Mutation& m : ms) {
    CAPTURE(m.name);
    const io::json j = io::read_file((data_dir / "proofs" / "mutations" / (m.name + ".json")).string());
    CHECK(j.at("expect_line").get<int>() == m.expect_line);
    const ProofVerdict v = check_proof(io::proof_from_json(j.at("proof")));
    CHECK_FALSE(v.ok);
    CHECK(v.line == m.expect_line);
    CHECK_MESSAGE(v.reason.find(m.expect_reason) != std::string::npos, v.reason);
  }
}

TEST_CASE("systems") {
  CHECK(sound_class(SystemId::K0) == ChoiceClass::AllF);
  CHECK(sound_class(SystemId::L1) == ChoiceClass::Reg);
  CHECK(sound_class(SystemId::K2) == ChoiceClass::RegStar);
  CHECK(sound_class(SystemId::L3) == ChoiceClass::Dec);
  CHECK_FALSE(scheme_in(Scheme::S4, SystemId::K1));
  CHECK(scheme_in(Scheme::S4, SystemId::K2));
  CHECK_FALSE(scheme_in(Scheme::S5, SystemId::L2));
  CHECK_FALSE(scheme_in(Scheme::UI, SystemId::K3));
  CHECK(scheme_in(Scheme::I5, SystemId::L0));
  CHECK(parse_system("L2") == SystemId::L2);
  CHECK_THROWS_AS(parse_system("K9"), Error);
}
