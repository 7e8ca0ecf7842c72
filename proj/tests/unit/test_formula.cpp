#include <gtest/gtest.h>

#include <random>

#include "pts/experiments.hpp"
#include "pts/formula.hpp"
#include "pts/sequent.hpp"

using namespace pts;

namespace {

Formula random_formula(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 1 ? 3 : 7);
  switch (pick(rng)) {
    case 0:
      return Formula::atom("p");
    case 1:
      return Formula::atom("q");
    case 2:
      return Formula::atom("r1");
    case 3:
      return Formula::bottom();
    case 4:
      return Formula::conj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 5:
      return Formula::disj(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    case 6:
      return Formula::impl(random_formula(rng, depth - 1), random_formula(rng, depth - 1));
    default:
      return Formula::neg(random_formula(rng, depth - 1));
  }
}

}  // namespace

TEST(Formula, Precedence) {
  EXPECT_EQ(parse_formula("p & q | r"), Formula::disj(Formula::conj(Formula::atom("p"), Formula::atom("q")),
                                                      Formula::atom("r")));
  EXPECT_EQ(parse_formula("p -> q -> r"),
            Formula::impl(Formula::atom("p"), Formula::impl(Formula::atom("q"), Formula::atom("r"))));
  EXPECT_EQ(parse_formula("~p & q"), Formula::conj(Formula::neg(Formula::atom("p")), Formula::atom("q")));
  EXPECT_EQ(parse_formula("p | q -> r"),
            Formula::impl(Formula::disj(Formula::atom("p"), Formula::atom("q")), Formula::atom("r")));
}

TEST(Formula, NegationIsImplicationToBottom) {
  EXPECT_EQ(parse_formula("~p"), parse_formula("p -> bot"));
  EXPECT_EQ(to_string(parse_formula("p -> bot")), "~p");
  EXPECT_EQ(to_string(parse_formula("~~p")), "~~p");
}

TEST(Formula, Printing) {
  EXPECT_EQ(to_string(parse_formula("(p -> q) -> r")), "(p -> q) -> r");
  EXPECT_EQ(to_string(parse_formula("p & (q | r)")), "p & (q | r)");
  EXPECT_EQ(to_unicode(parse_formula("~(p & q) | bot")), "¬(p ∧ q) ∨ ⊥");
}

TEST(Formula, HeightAndSize) {
  EXPECT_EQ(parse_formula("p").height(), 1u);
  EXPECT_EQ(parse_formula("~p").height(), 2u);
  EXPECT_EQ(parse_formula("(p -> q) -> r").height(), 3u);
  EXPECT_EQ(parse_formula("p & q").size(), 3u);
}

TEST(Formula, ParseErrors) {
  for (const char* bad : {"", "p &", "(p", "p q", "p -> -> q", "&", "p)", "1p"}) {
    EXPECT_THROW(parse_formula(bad), ParseError) << bad;
  }
}

TEST(Formula, ParseErrorPosition) {
  try {
    parse_formula("p & & q");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
}

TEST(Formula, Atoms) {
  EXPECT_EQ(atoms_of(parse_formula("p & ~q | bot")), (AtomSet{"p", "q"}));
  EXPECT_TRUE(is_identifier("a_1"));
  EXPECT_FALSE(is_identifier("1a"));
}

TEST(Formula, Substitution) {
  const Formula f = parse_formula("p -> q & p");
  const Formula g = substitute(f, {{"p", parse_formula("r | s")}});
  EXPECT_EQ(g, parse_formula("(r | s) -> q & (r | s)"));
}

TEST(FormulaProperty, TextRoundTrip) {
  std::mt19937 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Formula f = random_formula(rng, 5);
    EXPECT_EQ(parse_formula(to_string(f)), f) << to_string(f);
    EXPECT_EQ(f.text(), to_string(f));
  }
}

TEST(FormulaProperty, JsonRoundTrip) {
  for (const auto& f : formulas_up_to({"p", "q"}, 3)) {
    EXPECT_EQ(formula_from_json(to_json(f)), f);
  }
}

TEST(FormulaProperty, OrderingAgreesWithEquality) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    const Formula a = random_formula(rng, 4), b = random_formula(rng, 4);
    EXPECT_EQ(a == b, (a <=> b) == 0);
    if (a == b) {
      EXPECT_EQ(a.hash(), b.hash());
    }
  }
}

TEST(Sequent, ParseAndNormalize) {
  const Sequent s = parse_sequent("q, p, q |- r");
  EXPECT_EQ(s.premises, (std::vector<Formula>{parse_formula("p"), parse_formula("q")}));
  EXPECT_EQ(to_string(s), "p, q |- r");
  EXPECT_TRUE(parse_sequent("|- p | ~p").closed());
  EXPECT_EQ(parse_sequent(to_string(s)), s);
  EXPECT_THROW(parse_sequent("p |-"), ParseError);
  EXPECT_THROW(parse_sequent("p"), ParseError);
}

TEST(Sequent, Json) {
  const Sequent s = parse_sequent("p -> q, p |- q");
  const auto j = to_json(s);
  EXPECT_EQ(j["conclusion"], "q");
  EXPECT_EQ(j["premises"].size(), 2u);
}
