// Programmatic proof construction for tests and the bundled corpus: a line
// builder, the deduction theorem as a proof transformer, and the standard
// derived lemmas (identity, double negation, conjunction introduction).
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "supkit/proofs.hpp"

namespace supkit::testing {

inline Formula imp(const Formula& a, const Formula& b) { return Formula::implication(a, b); }
inline Formula neg(const Formula& a) { return Formula::negation(a); }

class ProofBuilder {
 public:
  explicit ProofBuilder(SystemId s, std::vector<Formula> hyps = {}) {
    p_.system = s;
    p_.hypotheses = std::move(hyps);
  }

  int add(const Formula& f, Justification j) {
    p_.lines.push_back({f, std::move(j)});
    return static_cast<int>(p_.lines.size());
  }
  int hyp(const Formula& f) { return add(f, Justification::hyp()); }
  int axiom(const Formula& f, Scheme s) { return add(f, Justification::axiom(s)); }
  // major must read minor -> X; adds X.
  int mp(int minor, int major) {
    const Formula& m = at(major);
    if (m.kind() != FormulaKind::Implies || m.left().nkey() != at(minor).nkey())
      throw std::logic_error("mp: line " + std::to_string(major) + " does not start with line " +
                             std::to_string(minor));
    return add(m.right(), Justification::mp(minor, major));
  }
  // Same, stating the result in an abbreviated form with the same nkey.
  int mp_as(int minor, int major, const Formula& shown) { return add(shown, Justification::mp(minor, major)); }
  int gr(int line, const std::string& var) { return add(Formula::forall(var, at(line)), Justification::gr(line)); }
  // line must be x <-> y; adds (x sup sigma) <-> (y sup sigma).
  int sv(int line, const Formula& sigma, Proof cert) {
    const Formula& l = at(line);
    return add(Formula::biconditional(Formula::sup(l.left(), sigma), Formula::sup(l.right(), sigma)),
               Justification::sv(line, std::move(cert)));
  }
  // Appends the lines of q (which may use a subset of our hypotheses).
  int include(const Proof& q) {
    const int offset = static_cast<int>(p_.lines.size());
    for (const ProofLine& l : q.lines) {
      Justification j = l.just;
      if (j.kind == Justification::Kind::MP || j.kind == Justification::Kind::GR ||
          j.kind == Justification::Kind::SV) {
        j.from += offset;
        if (j.kind == Justification::Kind::MP) j.from2 += offset;
      }
      p_.lines.push_back({l.formula, j});
    }
    return static_cast<int>(p_.lines.size());
  }

  const Formula& at(int line) const { return p_.lines.at(static_cast<std::size_t>(line) - 1).formula; }
  int last() const { return static_cast<int>(p_.lines.size()); }
  const Proof& proof() const { return p_; }

 private:
  Proof p_;
};

// |- a -> a
inline Proof identity_proof(SystemId s, const Formula& a) {
  ProofBuilder b(s);
  const int l1 = b.axiom(imp(a, imp(imp(a, a), a)), Scheme::P1);
  const int l2 = b.axiom(imp(imp(a, imp(imp(a, a), a)), imp(imp(a, imp(a, a)), imp(a, a))), Scheme::P2);
  const int l3 = b.mp(l1, l2);
  const int l4 = b.axiom(imp(a, imp(a, a)), Scheme::P1);
  b.mp(l4, l3);
  return b.proof();
}

// Deduction theorem: from a proof of c using hypothesis a (axioms and MP
// only), a proof of a -> c without it. Lines that do not depend on a are
// copied as they are and lifted to a -> C only when needed.
inline Proof deduction(const Proof& p, const Formula& a) {
  std::vector<Formula> rest;
  for (const Formula& h : p.hypotheses)
    if (h.nkey() != a.nkey()) rest.push_back(h);
  ProofBuilder b(p.system, rest);
  const std::size_t n = p.lines.size();
  std::vector<bool> depends(n + 1, false);
  std::vector<int> copy(n + 1, 0), lifted(n + 1, 0);
  auto formula = [&](int line) -> const Formula& { return p.lines[static_cast<std::size_t>(line) - 1].formula; };
  auto lift = [&](int line) {
    if (!lifted[line]) {
      const Formula& c = formula(line);
      lifted[line] = b.mp(copy[line], b.axiom(imp(c, imp(a, c)), Scheme::P1));
    }
    return lifted[line];
  };
  for (std::size_t k = 1; k <= n; ++k) {
    const Formula& c = formula(static_cast<int>(k));
    const Justification& j = p.lines[k - 1].just;
    if (c.nkey() == a.nkey()) {
      depends[k] = true;
      lifted[k] = b.include(identity_proof(p.system, a));
      continue;
    }
    switch (j.kind) {
      case Justification::Kind::Hypothesis:
        copy[k] = b.hyp(c);
        break;
      case Justification::Kind::Axiom:
        copy[k] = b.axiom(c, j.scheme);
        break;
      case Justification::Kind::MP: {
        int minor = j.from, major = j.from2;
        if (formula(major).nkey() != imp(formula(minor), c).nkey()) std::swap(minor, major);
        if (!depends[minor] && !depends[major]) {
          copy[k] = b.add(c, Justification::mp(copy[minor], copy[major]));
          break;
        }
        depends[k] = true;
        const int lmaj = depends[major] ? lifted[major] : lift(major);
        const int lmin = depends[minor] ? lifted[minor] : lift(minor);
        const int p2 = b.axiom(imp(imp(a, formula(major)), imp(imp(a, formula(minor)), imp(a, c))), Scheme::P2);
        lifted[k] = b.mp(lmin, b.mp(lmaj, p2));
        break;
      }
      default:
        throw std::logic_error("deduction: only hypotheses, axioms and MP are supported");
    }
  }
  if (!depends[n]) lift(static_cast<int>(n));
  return b.proof();
}

// |- ~~x -> x
inline Proof dne_proof(SystemId s, const Formula& x) {
  ProofBuilder b(s, {neg(neg(x))});
  const int l1 = b.axiom(imp(imp(neg(x), neg(neg(x))), imp(imp(neg(x), neg(x)), x)), Scheme::P3);
  const int l2 = b.include(identity_proof(s, neg(x)));
  const int l3 = b.hyp(neg(neg(x)));
  const int l4 = b.axiom(imp(neg(neg(x)), imp(neg(x), neg(neg(x)))), Scheme::P1);
  const int l5 = b.mp(l3, l4);
  const int l6 = b.mp(l5, l1);
  b.mp(l2, l6);
  return deduction(b.proof(), neg(neg(x)));
}

// |- x -> ~~x
inline Proof dni_proof(SystemId s, const Formula& x) {
  const Formula nnn = neg(neg(neg(x)));
  ProofBuilder b(s, {x});
  const int l1 = b.axiom(imp(imp(nnn, neg(x)), imp(imp(nnn, x), neg(neg(x)))), Scheme::P3);
  const int l2 = b.include(dne_proof(s, neg(x)));
  const int l3 = b.mp(l2, l1);
  const int l4 = b.hyp(x);
  const int l5 = b.axiom(imp(x, imp(nnn, x)), Scheme::P1);
  const int l6 = b.mp(l4, l5);
  b.mp(l6, l3);
  return deduction(b.proof(), x);
}

// |- x -> (y -> ~(x -> ~y)), i.e. x -> (y -> x /\ y)
inline Proof conj_intro_proof(SystemId s, const Formula& x, const Formula& y) {
  const Formula c = imp(x, neg(y));
  // From x, y, ~~c: ~y.
  ProofBuilder inner(s, {x, y, neg(neg(c))});
  const int i1 = inner.include(dne_proof(s, c));
  const int i2 = inner.hyp(neg(neg(c)));
  const int i3 = inner.mp(i2, i1);
  const int i4 = inner.hyp(x);
  inner.mp(i4, i3);
  const Proof step = deduction(inner.proof(), neg(neg(c)));  // x, y |- ~~c -> ~y

  ProofBuilder b(s, {x, y});
  const int l1 = b.include(step);
  const int l2 = b.hyp(y);
  const int l3 = b.axiom(imp(y, imp(neg(neg(c)), y)), Scheme::P1);
  const int l4 = b.mp(l2, l3);
  const int l5 = b.axiom(imp(imp(neg(neg(c)), neg(y)), imp(imp(neg(neg(c)), y), neg(c))), Scheme::P3);
  const int l6 = b.mp(l1, l5);
  b.mp(l4, l6);
  return deduction(deduction(b.proof(), y), x);
}

// |- x <-> y from proofs of x -> y and y -> x.
inline Proof iff_proof(SystemId s, const Formula& x, const Formula& y, const Proof& xy, const Proof& yx) {
  ProofBuilder b(s);
  const int a = b.include(xy);
  const int c = b.include(yx);
  const int ci = b.include(conj_intro_proof(s, imp(x, y), imp(y, x)));
  const int m = b.mp(a, ci);
  b.mp_as(c, m, Formula::biconditional(x, y));
  return b.proof();
}

// |- x <-> ~~x
inline Proof dn_iff_proof(SystemId s, const Formula& x) {
  return iff_proof(s, x, neg(neg(x)), dni_proof(s, x), dne_proof(s, x));
}

}  // namespace supkit::testing
