#include <doctest.h>

#include "random_formula.hpp"
#include "supkit/parser.hpp"
#include "tournaments.hpp"

using namespace supkit;
using namespace supkit::testing;

namespace {

ClassSpec spec(ChoiceClass c) {
  ClassSpec s{c, std::nullopt};
  if (needs_oracle(c)) s.oracle = EquivOracle::truth_table();
  return s;
}

// Collapses phi, filling missing entries with the first side.
Formula collapse_greedy(ChoiceTable& t, const Formula& phi) {
  for (;;) {
    try {
      return collapse(t, phi);
    } catch (const MissingEntry& m) {
      t.set(m.first, m.second);
    }
  }
}

}  // namespace

TEST_CASE("choose") {
  const Formula aa = parse("a = a"), ab = parse("a = b");
  ChoiceTable f;
  f.set(aa, ab);
  CHECK(f.choose(aa, ab) == aa);
  CHECK(f.choose(ab, aa) == aa);
  CHECK(f.choose(ab, ab) == ab);
  CHECK_THROWS_AS(f.choose(aa, parse("b = b")), MissingEntry);
  CHECK_THROWS_AS(f.set(ab, aa), Error);
  CHECK_THROWS_AS(f.set(parse("p0 sup p1"), aa), Error);
  CHECK_THROWS_AS(f.set(parse("P(v)"), aa), Error);
  ChoiceTable open(ChoiceMode::Formula);
  CHECK_NOTHROW(open.set(parse("P(v)"), parse("Q(v)")));
}

TEST_CASE("abbreviations name the same entry") {
  ChoiceTable f;
  f.set(parse("p0 /\\ p1"), parse("p2"));
  CHECK(f.has(parse("~(p0 -> ~p1)"), parse("p2")));
}

TEST_CASE("collapse") {
  ChoiceTable f;
  f.set(parse("p0"), parse("p1"));
  CHECK(collapse(f, parse("p2 /\\ ~p0")) == parse("p2 /\\ ~p0"));
  CHECK(collapse(f, parse("~(p0 sup p1)")) == parse("~p0"));
  CHECK(collapse(f, parse("(p1 sup p0) /\\ p2")) == parse("p0 /\\ p2"));
  CHECK_THROWS_AS(collapse(f, parse("(p0 sup p1) sup p2")), MissingEntry);
  CHECK_THROWS_AS(collapse(f, parse("forall v. P(v) sup Q(v)")), NotBasic);
  CHECK(collapse(f, parse("(forall v. P(v)) sup (forall v. P(v))")) == parse("forall v. P(v)"));

  ChoiceTable g(ChoiceMode::Formula);
  g.set(parse("P(v1)"), parse("Q(v2)"));
  const Formula c = collapse(g, parse("P(v1) sup Q(v2)"));
  CHECK(c == parse("P(v1)"));
  CHECK(free_vars(c) == std::set<std::string>{"v1"});
  g.set(parse("P(v)"), parse("Q(v)"));
  CHECK(collapse(g, parse("forall v. P(v) sup Q(v)")) == parse("forall v. P(v)"));
}

TEST_CASE("formula-mode collapse never adds free variables") {
  FormulaGen gen(7);
  for (int i = 0; i < 300; ++i) {
    const Formula phi = gen.formula(4);
    ChoiceTable t(ChoiceMode::Formula);
    const Formula c = collapse_greedy(t, phi);
    CHECK_FALSE(c.has_sup());
    const auto fv = free_vars(phi);
    for (const std::string& v : free_vars(c)) CHECK(fv.count(v) == 1);
  }
}

TEST_CASE("sentence-mode collapse of basic sentences is a classical sentence") {
  FormulaGen gen(11);
  int tested = 0;
  for (int i = 0; i < 2000 && tested < 200; ++i) {
    Formula phi = gen.formula(4);
    for (const std::string& v : free_vars(phi)) phi = substitute(phi, v, Term::constant("c"));
    if (!is_basic(phi)) continue;
    ++tested;
    ChoiceTable t;
    const Formula c = collapse_greedy(t, phi);
    CHECK_FALSE(c.has_sup());
    CHECK(is_sentence(c));
  }
  CHECK(tested >= 100);
}

TEST_CASE("oracle") {
  const EquivOracle tt = EquivOracle::truth_table();
  CHECK(tt.equivalent(parse("p0"), parse("p0 /\\ p0")));
  CHECK(tt.equivalent(parse("p0"), parse("~~p0")));
  CHECK_FALSE(tt.equivalent(parse("p0"), parse("p1")));
  CHECK(tt.equivalent(parse("~(p0 /\\ p1)"), parse("~p0 \\/ ~p1")));
  CHECK_FALSE(tt.satisfiable(parse("p0 /\\ ~p0")));
  CHECK_THROWS_AS(tt.equivalent(parse("p0 sup p1"), parse("p0")), EvalError);

  const EquivOracle fo = EquivOracle::bounded(2);
  CHECK(fo.equivalent(parse("a = a"), parse("b = b")));
  CHECK_FALSE(fo.equivalent(parse("a = a"), parse("a = b")));
  CHECK_FALSE(fo.equivalent(parse("forall v. P(v)"), parse("P(c)")));
  CHECK(fo.equivalent(parse("exists v. P(v)"), parse("~forall v. ~P(v)")));
  // Parameters are read as constants.
  CHECK_FALSE(fo.equivalent(parse("P(@e0)"), parse("P(@e1)")));
  CHECK(fo.describe().find("2") != std::string::npos);
}

TEST_CASE("associativity on three sentences") {
  const std::vector<Formula> u{parse("p0"), parse("p1"), parse("p2")};
  const auto orders = order_tournaments(u);
  CHECK(orders.size() == 6);
  int members = 0;
  for (unsigned bits = 0; bits < 8; ++bits) {
    const ClassVerdict v = check_class(tournament(u, bits), spec(ChoiceClass::Asso), u);
    members += v.member;
    CHECK(v.member == (orders.count(bits) == 1));
    if (!v.member) CHECK(v.witness.size() == 3);
  }
  CHECK(members == 6);
  CHECK(check_class(table_from_order(u), spec(ChoiceClass::Asso), u).member);
}

TEST_CASE("regularity") {
  const Formula aa = parse("a = a"), bb = parse("b = b"), ab = parse("a = b");
  ChoiceTable f;
  f.set(aa, ab);
  f.set(ab, bb);
  f.set(aa, bb);
  const ClassSpec reg{ChoiceClass::Reg, EquivOracle::bounded(2)};
  const ClassVerdict v = check_class(f, reg, {aa, bb, ab});
  CHECK_FALSE(v.member);
  CHECK(v.witness.size() == 3);
  CHECK_THROWS_AS(check_class(f, ClassSpec{ChoiceClass::Reg, std::nullopt}, {aa, bb, ab}), OracleRequired);

  ChoiceTable g;
  g.set(aa, ab);
  g.set(bb, ab);
  g.set(aa, bb);
  CHECK(check_class(g, reg, {aa, bb, ab}).member);
}

TEST_CASE("extendability") {
  for (ChoiceClass c : {ChoiceClass::AllF, ChoiceClass::Reg, ChoiceClass::Asso, ChoiceClass::RegStar, ChoiceClass::Dec})
    CHECK(extendable(ChoiceTable{}, spec(c)));

  const Formula a = parse("p0"), b = parse("p1"), c = parse("p2");
  ChoiceTable cyc;
  cyc.set(a, b);
  cyc.set(b, c);
  cyc.set(c, a);
  CHECK(extendable(cyc, spec(ChoiceClass::AllF)));
  CHECK_FALSE(extendable(cyc, spec(ChoiceClass::Asso)));
  CHECK_FALSE(extendable(cyc, spec(ChoiceClass::RegStar)));

  // p0 over p1 but ~~p1 over ~~p0.
  ChoiceTable irregular;
  irregular.set(a, b);
  irregular.set(parse("~~p1"), parse("~~p0"));
  CHECK(extendable(irregular, spec(ChoiceClass::AllF)));
  CHECK(extendable(irregular, spec(ChoiceClass::Asso)));
  CHECK_FALSE(extendable(irregular, spec(ChoiceClass::Reg)));

  // p0 < p1 forces ~p1 < ~p0 in a decreasing order.
  ChoiceTable dual;
  dual.set(a, b);
  dual.set(parse("~p0"), parse("~p1"));
  CHECK(extendable(dual, spec(ChoiceClass::RegStar)));
  CHECK_FALSE(extendable(dual, spec(ChoiceClass::Dec)));
  ChoiceTable dual_ok;
  dual_ok.set(a, b);
  dual_ok.set(parse("~p1"), parse("~p0"));
  CHECK(extendable(dual_ok, spec(ChoiceClass::Dec)));

  CHECK_THROWS_AS(extendable(irregular, ClassSpec{ChoiceClass::Reg, std::nullopt}), OracleRequired);
}

TEST_CASE("class inclusions on small universes") {
  const std::vector<Formula> u{parse("p0"), parse("~p0"), parse("p1"), parse("~p1")};
  for (unsigned bits = 0; bits < (1U << pair_count(u.size())); ++bits) {
    const ChoiceTable t = tournament(u, bits);
    const bool dec = check_class(t, spec(ChoiceClass::Dec), u).member;
    const bool star = check_class(t, spec(ChoiceClass::RegStar), u).member;
    const bool reg = check_class(t, spec(ChoiceClass::Reg), u).member;
    const bool asso = check_class(t, spec(ChoiceClass::Asso), u).member;
    if (dec) CHECK(star);
    if (star) CHECK(reg);
    if (star) CHECK(asso);
    CHECK(star == (reg && asso));
  }
}

TEST_CASE("enumerate_tables") {
  const Formula one = parse("p0 sup p1");
  std::vector<Formula> chosen;
  CHECK(enumerate_tables(ChoiceTable{}, spec(ChoiceClass::AllF), [&](const ChoiceTable& t) {
          chosen.push_back(collapse(t, one));
          return true;
        }) == 2);
  CHECK(chosen == std::vector<Formula>{parse("p0"), parse("p1")});

  const Formula nested = parse("(p0 sup p1) sup p2");
  CHECK(enumerate_tables(ChoiceTable{}, spec(ChoiceClass::AllF), [&](const ChoiceTable& t) {
          collapse(t, nested);
          return true;
        }) == 4);

  // Both sides of S4 on the same table.
  const Formula l = parse("(p0 sup p1) sup p2"), r = parse("p0 sup (p1 sup p2)");
  int differ_all = 0, differ_asso = 0;
  const std::size_t all = enumerate_tables(ChoiceTable{}, spec(ChoiceClass::AllF), [&](const ChoiceTable& t) {
    differ_all += collapse(t, l) != collapse(t, r);
    return true;
  });
  const std::size_t asso = enumerate_tables(ChoiceTable{}, spec(ChoiceClass::Asso), [&](const ChoiceTable& t) {
    differ_asso += collapse(t, l) != collapse(t, r);
    CHECK(extendable(t, spec(ChoiceClass::Asso)));
    return true;
  });
  CHECK(asso < all);
  CHECK(differ_all > 0);
  CHECK(differ_asso == 0);

  // Stopping early.
  CHECK(enumerate_tables(ChoiceTable{}, spec(ChoiceClass::AllF), [&](const ChoiceTable& t) {
          collapse(t, nested);
          return false;
        }) == 1);

  // Over-constrained seed.
  ChoiceTable cyc;
  cyc.set(parse("p0"), parse("p1"));
  cyc.set(parse("p1"), parse("p2"));
  cyc.set(parse("p2"), parse("p0"));
  CHECK(enumerate_tables(cyc, spec(ChoiceClass::Asso), [](const ChoiceTable&) { return true; }) == 0);
}
