#include "supkit/proofs.hpp"

#include <algorithm>

#include "supkit/parser.hpp"

namespace supkit {

Justification Justification::sv(int line, Proof cert) {
  Justification j;
  j.kind = Kind::SV;
  j.from = line;
  j.cert = std::make_shared<const Proof>(std::move(cert));
  return j;
}

namespace {

constexpr const char* kSystems[] = {"K0", "K1", "K2", "K3", "L0", "L1", "L2", "L3"};
constexpr const char* kSchemes[] = {"P1", "P2", "P3", "S1", "S2", "S3", "S4", "S5",
                                    "UI", "D",  "I1", "I2", "I3", "I4", "I5"};

}  // namespace

const char* to_string(SystemId s) { return kSystems[static_cast<int>(s)]; }

SystemId parse_system(const std::string& name) {
  for (int i = 0; i < 8; ++i)
    if (name == kSystems[i]) return static_cast<SystemId>(i);
  throw Error("unknown proof system '" + name + "'");
}

int level(SystemId s) { return static_cast<int>(s) % 4; }
bool first_order(SystemId s) { return static_cast<int>(s) >= 4; }

ChoiceClass sound_class(SystemId s) {
  switch (level(s)) {
    case 0: return ChoiceClass::AllF;
    case 1: return ChoiceClass::Reg;
    case 2: return ChoiceClass::RegStar;
    default: return ChoiceClass::Dec;
  }
}

const char* to_string(Scheme s) { return kSchemes[static_cast<int>(s)]; }

Scheme parse_scheme(const std::string& name) {
  for (int i = 0; i < 15; ++i)
    if (name == kSchemes[i]) return static_cast<Scheme>(i);
  throw Error("unknown axiom scheme '" + name + "'");
}

bool scheme_in(Scheme s, SystemId sys) {
  switch (s) {
    case Scheme::S4: return level(sys) >= 2;
    case Scheme::S5: return level(sys) >= 3;
    case Scheme::UI:
    case Scheme::D:
    case Scheme::I1:
    case Scheme::I2:
    case Scheme::I3:
    case Scheme::I4:
    case Scheme::I5: return first_order(sys);
    default: return true;
  }
}

// ---------------------------------------------------------------- matching

namespace {

using Bindings = std::map<std::string, Formula>;

bool is_meta(const Formula& f) {
  return f.kind() == FormulaKind::PropAtom && (f.name() == "phi" || f.name() == "psi" || f.name() == "sigma");
}

bool match(const Formula& pat, const Formula& f, Bindings& b) {
  if (is_meta(pat)) {
    auto [it, fresh] = b.emplace(pat.name(), f);
    return fresh || it->second.nkey() == f.nkey();
  }
  if (pat.kind() != f.kind()) return false;
  switch (pat.kind()) {
    case FormulaKind::Not:
      return match(pat.left(), f.left(), b);
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Implies:
    case FormulaKind::Iff:
    case FormulaKind::Sup:
      return match(pat.left(), f.left(), b) && match(pat.right(), f.right(), b);
    default:
      return pat == f;
  }
}

const Formula& pattern(Scheme s) {
  static const std::map<Scheme, Formula> patterns = [] {
    std::map<Scheme, Formula> m;
    m.emplace(Scheme::P1, parse("phi -> (psi -> phi)"));
    m.emplace(Scheme::P2, parse("(phi -> (psi -> sigma)) -> ((phi -> psi) -> (phi -> sigma))"));
    m.emplace(Scheme::P3, parse("(~phi -> ~psi) -> ((~phi -> psi) -> phi)"));
    m.emplace(Scheme::S1, parse("phi /\\ psi -> phi sup psi"));
    m.emplace(Scheme::S2, parse("phi sup psi -> phi \\/ psi"));
    m.emplace(Scheme::S3, parse("phi sup psi -> psi sup phi"));
    m.emplace(Scheme::S4, parse("(phi sup psi) sup sigma -> phi sup (psi sup sigma)"));
    m.emplace(Scheme::S5, parse("phi /\\ ~psi -> (phi sup psi <-> ~phi sup ~psi)"));
    return m;
  }();
  return patterns.at(s);
}

MatchResult propositional_match(const Formula& phi, Scheme s) {
  const Formula& pat = pattern(s);
  Bindings b;
  if (!match(pat, phi, b)) {
    b.clear();
    if (!match(normalize(pat), normalize(phi), b)) return {false, {}, std::string("not an instance of ") + to_string(s)};
  }
  MatchResult r{true, {}, {}};
  for (const auto& [k, v] : b) r.bindings[k] = print(v);
  return r;
}

MatchResult no(std::string reason) { return {false, {}, std::move(reason)}; }

// Finds the term standing where `var` occurs free in `pat` inside `inst`.
// Returns false on a structural mismatch or two different terms.
bool find_instance(const Term& pat, const Term& inst, const std::string& var, std::optional<Term>& t) {
  if (pat.kind() == TermKind::Variable && pat.name() == var) {
    if (t && *t != inst) return false;
    t = inst;
    return true;
  }
  if (pat.kind() != inst.kind() || pat.name() != inst.name() || pat.args().size() != inst.args().size())
    return false;
  for (std::size_t i = 0; i < pat.args().size(); ++i)
    if (!find_instance(pat.args()[i], inst.args()[i], var, t)) return false;
  return true;
}

bool find_instance(const Formula& pat, const Formula& inst, const std::string& var, std::optional<Term>& t) {
  if (pat.kind() != inst.kind()) return false;
  switch (pat.kind()) {
    case FormulaKind::PropAtom:
      return pat.name() == inst.name();
    case FormulaKind::Predicate:
    case FormulaKind::Equality:
      if (pat.name() != inst.name() || pat.terms().size() != inst.terms().size()) return false;
      for (std::size_t i = 0; i < pat.terms().size(); ++i)
        if (!find_instance(pat.terms()[i], inst.terms()[i], var, t)) return false;
      return true;
    case FormulaKind::Not:
      return find_instance(pat.left(), inst.left(), var, t);
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      if (pat.var() != inst.var()) return false;
      if (pat.var() == var) return pat == inst;
      return find_instance(pat.body(), inst.body(), var, t);
    default:
      return find_instance(pat.left(), inst.left(), var, t) && find_instance(pat.right(), inst.right(), var, t);
  }
}

MatchResult match_ui(const Formula& phi) {
  const Formula n = normalize(phi);
  if (n.kind() != FormulaKind::Implies || n.left().kind() != FormulaKind::Forall)
    return no("UI needs the form forall v. phi(v) -> phi(t)");
  const Formula& q = n.left();
  const Formula& inst = n.right();
  std::optional<Term> t;
  if (!find_instance(q.body(), inst, q.var(), t)) return no("consequent is not an instance of the quantified body");
  if (!t) {
    if (q.body().nkey() != inst.nkey()) return no("consequent is not an instance of the quantified body");
    return {true, {{"v", q.var()}, {"phi", print(q.body())}}, {}};
  }
  if (!t->closed()) return no("UI instantiates with the open term " + print(*t) + "; t must be closed");
  if (substitute(q.body(), q.var(), *t).nkey() != inst.nkey())
    return no("consequent is not phi(" + print(*t) + ")");
  return {true, {{"v", q.var()}, {"phi", print(q.body())}, {"t", print(*t)}}, {}};
}

MatchResult match_d(const Formula& phi) {
  const Formula n = normalize(phi);
  auto shape = [](const Formula& f) { return f.kind() == FormulaKind::Implies; };
  if (!shape(n) || n.left().kind() != FormulaKind::Forall || !shape(n.left().body()) || !shape(n.right()) ||
      n.right().right().kind() != FormulaKind::Forall)
    return no("D needs the form forall v.(phi -> psi) -> (phi -> forall v. psi)");
  const Formula& inner = n.left().body();
  const Formula& q2 = n.right().right();
  if (n.left().var() != q2.var() || inner.left().nkey() != n.right().left().nkey() ||
      inner.right().nkey() != q2.body().nkey())
    return no("D components do not line up");
  if (occurs_free(inner.left(), q2.var()))
    return no("D side condition fails: " + q2.var() + " is free in " + print(inner.left()));
  return {true, {{"v", q2.var()}, {"phi", print(inner.left())}, {"psi", print(inner.right())}}, {}};
}

Formula strip_forall(Formula f) {
  while (f.kind() == FormulaKind::Forall) f = f.body();
  return f;
}

bool is_eq(const Formula& f) { return f.kind() == FormulaKind::Equality; }

MatchResult match_identity(const Formula& phi, Scheme s) {
  const Formula b = strip_forall(normalize(phi));
  auto lhs = [](const Formula& f) { return f.terms()[0]; };
  auto rhs = [](const Formula& f) { return f.terms()[1]; };
  switch (s) {
    case Scheme::I1:
      if (is_eq(b) && lhs(b) == rhs(b)) return {true, {{"t", print(lhs(b))}}, {}};
      return no("I1 needs t = t");
    case Scheme::I2:
      if (b.kind() == FormulaKind::Implies && is_eq(b.left()) && is_eq(b.right()) &&
          lhs(b.left()) == rhs(b.right()) && rhs(b.left()) == lhs(b.right()))
        return {true, {{"t", print(lhs(b.left()))}, {"s", print(rhs(b.left()))}}, {}};
      return no("I2 needs t = s -> s = t");
    case Scheme::I3: {
      // normalized: ~(t=s -> ~ s=r) -> t=r
      if (b.kind() == FormulaKind::Implies && b.left().kind() == FormulaKind::Not &&
          b.left().left().kind() == FormulaKind::Implies) {
        const Formula& a = b.left().left().left();
        const Formula& nb = b.left().left().right();
        if (is_eq(a) && nb.kind() == FormulaKind::Not && is_eq(nb.left()) && is_eq(b.right()) &&
            rhs(a) == lhs(nb.left()) && lhs(a) == lhs(b.right()) && rhs(nb.left()) == rhs(b.right()))
          return {true, {{"t", print(lhs(a))}, {"s", print(rhs(a))}, {"r", print(rhs(b.right()))}}, {}};
      }
      return no("I3 needs t = s /\\ s = r -> t = r");
    }
    case Scheme::I4:
    case Scheme::I5: {
      if (b.kind() != FormulaKind::Implies || !is_eq(b.left()) || !lhs(b.left()).is_variable() ||
          !rhs(b.left()).is_variable())
        return no(std::string(to_string(s)) + " needs the form v = u -> ...");
      const std::string v = lhs(b.left()).name();
      const Term u = rhs(b.left());
      if (s == Scheme::I4) {
        if (!is_eq(b.right()) || !lhs(b.right()).has_variable(v) ||
            substitute(lhs(b.right()), {{v, u}}) != rhs(b.right()))
          return no("I4 needs v = u -> t(v) = t(u)");
        return {true, {{"v", v}, {"u", u.name()}, {"t", print(lhs(b.right()))}}, {}};
      }
      if (b.right().kind() != FormulaKind::Implies) return no("I5 needs v = u -> (phi(v) -> phi(u))");
      const Formula& pv = b.right().left();
      try {
        if (substitute(pv, v, u).nkey() != b.right().right().nkey())
          return no("I5 needs v = u -> (phi(v) -> phi(u)) with every free v replaced");
      } catch (const CaptureError& e) {
        return no(std::string("I5: ") + e.what());
      }
      return {true, {{"v", v}, {"u", u.name()}, {"phi", print(pv)}}, {}};
    }
    default:
      return no("not an identity scheme");
  }
}

}  // namespace

MatchResult match_axiom(const Formula& phi, Scheme scheme) {
  switch (scheme) {
    case Scheme::UI: return match_ui(phi);
    case Scheme::D: return match_d(phi);
    case Scheme::I1:
    case Scheme::I2:
    case Scheme::I3:
    case Scheme::I4:
    case Scheme::I5: return match_identity(phi, scheme);
    default: return propositional_match(phi, scheme);
  }
}

// ---------------------------------------------------------------- checking

namespace {

ProofVerdict reject(int line, std::string reason) { return {false, line, std::move(reason)}; }

bool contains(const std::vector<Formula>& fs, const Formula& f) {
  return std::any_of(fs.begin(), fs.end(), [&](const Formula& g) { return g.nkey() == f.nkey(); });
}

}  // namespace

ProofVerdict check_proof(const Proof& p, const ProofOptions& opts) {
  const SystemId sys = p.system;
  const bool fo = first_order(sys);
  auto legal = [&](const Formula& f) -> std::string {
    if (!fo && !f.propositional()) return std::string(to_string(sys)) + " is propositional: " + print(f);
    if (fo && opts.restricted && !is_restricted(f)) return "NotRestricted: " + print(f) + " is unrestricted";
    return {};
  };
  for (const Formula& h : p.hypotheses) {
    if (auto why = legal(h); !why.empty()) return reject(0, "hypothesis: " + why);
    if (!opts.open_hypotheses && !is_sentence(h))
      return reject(0, "hypothesis " + print(h) + " is not a sentence");
  }
  const auto& L = p.lines;
  for (std::size_t k = 0; k < L.size(); ++k) {
    const int no = static_cast<int>(k) + 1;
    const Formula& f = L[k].formula;
    const Justification& j = L[k].just;
    if (auto why = legal(f); !why.empty()) return reject(no, why);
    auto ref = [&](int i) -> const Formula* {
      if (i < 1 || i >= no) return nullptr;
      return &L[static_cast<std::size_t>(i) - 1].formula;
    };
    switch (j.kind) {
      case Justification::Kind::Hypothesis:
        if (!contains(p.hypotheses, f)) return reject(no, print(f) + " is not a listed hypothesis");
        break;
      case Justification::Kind::Axiom: {
        if (!scheme_in(j.scheme, sys))
          return reject(no, std::string(to_string(j.scheme)) + " not in Ax(" + to_string(sys) + ")");
        MatchResult m = match_axiom(f, j.scheme);
        if (!m.ok) return reject(no, m.reason);
        break;
      }
      case Justification::Kind::MP: {
        const Formula* a = ref(j.from);
        const Formula* b = ref(j.from2);
        if (!a || !b) return reject(no, "MP cites a line that does not precede it");
        const std::string want_b = Formula::implication(*a, f).nkey();
        const std::string want_a = Formula::implication(*b, f).nkey();
        if (b->nkey() != want_b && a->nkey() != want_a)
          return reject(no, "MP premises " + std::to_string(j.from) + ", " + std::to_string(j.from2) +
                                " do not yield " + print(f));
        break;
      }
      case Justification::Kind::GR: {
        if (!fo) return reject(no, std::string("GR not in IR(") + to_string(sys) + ")");
        const Formula* a = ref(j.from);
        if (!a) return reject(no, "GR cites a line that does not precede it");
        if (f.kind() != FormulaKind::Forall || f.body().nkey() != a->nkey())
          return reject(no, "GR must derive forall v. phi from phi");
        for (const Formula& h : p.hypotheses)
          if (occurs_free(h, f.var()))
            return reject(no, "GR variable " + f.var() + " is free in hypothesis " + print(h));
        break;
      }
      case Justification::Kind::SV: {
        if (level(sys) < 1) return reject(no, std::string("SV not in IR(") + to_string(sys) + ")");
        const Formula* a = ref(j.from);
        if (!a) return reject(no, "SV cites a line that does not precede it");
        if (f.kind() != FormulaKind::Iff || f.left().kind() != FormulaKind::Sup ||
            f.right().kind() != FormulaKind::Sup || f.left().right().nkey() != f.right().right().nkey())
          return reject(no, "SV must derive (phi sup sigma) <-> (psi sup sigma)");
        const Formula& x = f.left().left();
        const Formula& y = f.right().left();
        const Formula& sigma = f.left().right();
        if (a->nkey() != Formula::biconditional(x, y).nkey())
          return reject(no, "SV premise is not " + print(Formula::biconditional(x, y)));
        if (fo && opts.restricted && !(is_basic(x) && is_basic(y) && is_basic(sigma)))
          return reject(no, "restricted SV needs basic phi, psi, sigma");
        if (!j.cert) return reject(no, "SV line carries no certificate");
        const Proof& c = *j.cert;
        if (level(c.system) != 0 || (first_order(c.system) && !fo))
          return reject(no, std::string("SV certificate must be a ") + (fo ? "K0/L0" : "K0") + " proof");
        if (!c.hypotheses.empty()) return reject(no, "SV certificate must not use hypotheses");
        if (c.lines.empty() || c.lines.back().formula.nkey() != a->nkey())
          return reject(no, "SV certificate does not prove " + print(*a));
        ProofVerdict cv = check_proof(c, opts);
        if (!cv.ok)
          return reject(no, "SV certificate line " + std::to_string(cv.line) + ": " + cv.reason);
        break;
      }
    }
  }
  return {};
}

ProofVerdict derives_verdict(const std::vector<Formula>& sigma, const Formula& phi, const Proof& p,
                             const ProofOptions& opts) {
  for (const Formula& h : p.hypotheses)
    if (!contains(sigma, h)) return reject(0, "hypothesis " + print(h) + " is not in the premise set");
  ProofVerdict v = check_proof(p, opts);
  if (!v.ok) return v;
  if (p.lines.empty() || p.lines.back().formula.nkey() != phi.nkey())
    return reject(static_cast<int>(p.lines.size()), "proof does not end with " + print(phi));
  return v;
}

}  // namespace supkit
