#include <gtest/gtest.h>

#include "pts/experiments.hpp"
#include "pts/validity.hpp"

using namespace pts;

namespace {

ArgumentStructure arg(const std::string& text) { return parse_argument(text); }
Formula f(const std::string& text) { return parse_formula(text); }

Verdict closed(const std::string& base, const std::string& structure, const std::string& j) {
  ValidityChecker c(parse_base(base));
  return c.check_closed({arg(structure), reductions_by_names(j)}).verdict;
}

Verdict alpha(const std::string& base, const std::string& sequent) {
  return models_alpha(parse_base(base), parse_sequent(sequent)).result.verdict;
}

}  // namespace

TEST(Validity, ClosedExamples) {
  EXPECT_EQ(closed("p\nq", "andI(<p>, <q>)", "none"), Verdict::valid);
  EXPECT_EQ(closed("p\nq", "andE1(andI(<p>, <q>))", "phi_and"), Verdict::valid);
  EXPECT_EQ(closed("p\nq", "andE1(andI(<p>, <q>))", "none"), Verdict::invalid);
  EXPECT_EQ(closed("p", "orL(orI(<p>) : p | q)", "phi_or_lambda"), Verdict::valid);
  // A zero-premise step for an atom the base does not give.
  EXPECT_EQ(closed("p", "<q>", "std"), Verdict::invalid);
  EXPECT_EQ(closed("p", "orI(<q>) : p | q", "std"), Verdict::invalid);
}

TEST(Validity, ClosedEvidenceCarriesThePath) {
  ValidityChecker c(parse_base("p\nq"));
  const ValidityResult r = c.check_closed({arg("andE1(andI(<p>, <q>))"), standard_reductions()});
  ASSERT_EQ(r.verdict, Verdict::valid);
  EXPECT_FALSE(r.evidence.is_null());
  EXPECT_NE(r.evidence.dump().find("phi_and"), std::string::npos);
}

TEST(Validity, OpenOneStepFromPToQ) {
  const Argument a{arg("step([p]) : q"), ReductionSet{}};
  ValidityChecker empty(Base{});
  EXPECT_EQ(empty.check_open(a, {}).verdict, Verdict::valid);
  ValidityChecker with_p(parse_base("p"));
  const SuiteMember m{{{f("p"), arg("<p>")}}, ReductionSet{}};
  EXPECT_EQ(with_p.check_open(a, {m}).verdict, Verdict::invalid);
}

TEST(Validity, OpenOrLambdaAgainstCanonicalSuite) {
  for (const std::string base : {"", "p", "(q => p)"}) {
    ValidityChecker c(parse_base(base));
    std::vector<SuiteMember> suite;
    for (const auto& x : enumerate_closed_arguments(c, f("p | q"), 3, true)) {
      suite.push_back({{{f("p | q"), x.structure}}, x.justifications});
    }
    ASSERT_FALSE(suite.empty());
    const Argument a{or_lambda(ArgumentStructure::assumption(f("p | q"), 1)), reductions_by_names("phi_or_lambda")};
    EXPECT_EQ(c.check_open(a, suite).verdict, Verdict::valid) << base;
  }
  // Once q holds the right injection gives a counterexample.
  ValidityChecker c(parse_base("q"));
  const Argument a{or_lambda(ArgumentStructure::assumption(f("p | q"), 1)), reductions_by_names("phi_or_lambda")};
  const SuiteMember right{{{f("p | q"), arg("orI(<q>) : p | q")}}, ReductionSet{}};
  EXPECT_EQ(c.check_open(a, {right}).verdict, Verdict::invalid);
}

TEST(Validity, WeakeningNeedsItsReduction) {
  const ArgumentStructure wk = weakening(ArgumentStructure::assumption(f("p -> q"), 1), f("r"));
  const SuiteMember m{{{f("p -> q"), arg("impI(<q>) : p -> q")}}, ReductionSet{}};
  ValidityChecker c(parse_base("q"));
  EXPECT_EQ(c.check_open({wk, reductions_by_names("phi_and,phi_wk,phi_imp")}, {m}).verdict, Verdict::valid);
  EXPECT_EQ(c.check_open({wk, reductions_by_names("phi_and,phi_imp")}, {m}).verdict, Verdict::invalid);
}

TEST(Alpha, Examples) {
  EXPECT_EQ(alpha("p", "|- p | q"), Verdict::valid);
  EXPECT_EQ(alpha("", "p |- q"), Verdict::valid);
  EXPECT_EQ(alpha("", "|- p"), Verdict::invalid);
  EXPECT_EQ(alpha("p", "p |- q"), Verdict::invalid);
  EXPECT_EQ(alpha("", "p | q |- p"), Verdict::valid);
  EXPECT_EQ(alpha("q", "p | q |- p"), Verdict::invalid);
  EXPECT_EQ(alpha("", "|- p | ~p"), Verdict::valid);
}

TEST(Alpha, WitnessShapes) {
  const AlphaResult r = models_alpha(parse_base("p"), parse_sequent("|- p | q"));
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(matches(Schema::or_intro, r.witness->structure));
  EXPECT_EQ(r.standard, Decision::yes);
  const AlphaResult no = models_alpha(Base{}, parse_sequent("|- p"));
  EXPECT_FALSE(no.witness);
  EXPECT_EQ(no.standard, Decision::no);
  EXPECT_FALSE(to_json(no)["evidence"]["trace"].is_null());
}

TEST(Synthesis, Examples) {
  const Argument atom = synthesize_witness(parse_base("p"), parse_sequent("|- p"));
  EXPECT_TRUE(atom.justifications.empty());
  EXPECT_TRUE(structure_to_derivation(atom.structure, parse_base("p")));

  const Base b = parse_base("p\n(p => q)");
  const Argument pair = synthesize_witness(b, parse_sequent("|- p & q"));
  ASSERT_TRUE(matches(Schema::and_intro, pair.structure));
  // The halves are the derivations the derive engine finds.
  EXPECT_EQ(pair.structure.child(0), derivation_to_structure(*derive(b, {}, "p").derivation));
  EXPECT_EQ(pair.structure.child(1), derivation_to_structure(*derive(b, {}, "q").derivation));
  ValidityChecker c(b);
  EXPECT_EQ(c.check_closed(pair).verdict, Verdict::valid);

  const Argument vacuous = synthesize_witness(Base{}, parse_sequent("p |- q"));
  EXPECT_EQ(vacuous.structure.conclusion(), f("q"));
  EXPECT_EQ(vacuous.structure.assumptions(), std::vector<Formula>{f("p")});
  EXPECT_FALSE(vacuous.justifications.has_pointers());

  EXPECT_THROW(synthesize_witness(Base{}, parse_sequent("|- p")), std::invalid_argument);
}

TEST(Synthesis, ImplicationNeedsAPointerOnlyWhenTheAntecedentHolds) {
  for (const std::string base : {"q", "p\nq", "p\n(p => q)"}) {
    const Base b = parse_base(base);
    const Argument w = synthesize_witness(b, parse_sequent("|- p -> q"));
    EXPECT_TRUE(matches(Schema::imp_intro, w.structure));
    EXPECT_EQ(w.justifications.has_pointers(), Deriver(b).derivable("p")) << base;
    ValidityChecker c(b);
    EXPECT_EQ(c.check(w).verdict, Verdict::valid) << base;
  }
}

TEST(Strict, Mode) {
  // No synthesis for implications without a certificate.
  EXPECT_EQ(models_alpha_strict(Base{}, parse_sequent("|- p -> p"), std::nullopt).result.verdict,
            Verdict::inconclusive);
  EXPECT_EQ(models_alpha_strict(parse_base("p"), parse_sequent("|- p & p"), std::nullopt).result.verdict,
            Verdict::valid);
  const Argument id{arg("impI({1} [p]_1) : p -> p"), ReductionSet{}};
  EXPECT_EQ(models_alpha_strict(Base{}, parse_sequent("|- p -> p"), id).result.verdict, Verdict::valid);
  EXPECT_EQ(models_alpha_strict(Base{}, parse_sequent("|- q -> q"), id).result.verdict, Verdict::invalid);
  // Pointer-justified certificates are refused.
  const Base pq = parse_base("p\nq");
  const Argument pointed = synthesize_witness(pq, parse_sequent("|- p -> q"));
  ASSERT_TRUE(pointed.justifications.has_pointers());
  EXPECT_NE(models_alpha_strict(pq, parse_sequent("|- p -> q"), pointed).result.verdict, Verdict::valid);
}

TEST(Comparison, Report) {
  const std::vector<Sequent> sample = {parse_sequent("|- p | ~p"), parse_sequent("p |- q"),
                                       parse_sequent("|- p | q")};
  const ComparisonReport empty = compare_sandqvist_alpha(Base{}, sample);
  ASSERT_EQ(empty.rows.size(), 3u);
  EXPECT_EQ(empty.rows[0].sandqvist, Decision::yes);
  EXPECT_EQ(empty.rows[0].alpha, Verdict::valid);
  EXPECT_EQ(empty.rows[1].alpha, Verdict::valid);
  EXPECT_EQ(empty.rows[2].sandqvist, Decision::no);
  EXPECT_EQ(empty.rows[2].alpha, Verdict::invalid);
  EXPECT_EQ(empty.sandqvist_to_alpha.size(), 2u);
  EXPECT_EQ(empty.inversion, InversionStatus::satisfied);
  EXPECT_EQ(empty.inconclusive_cells, 0u);

  const ComparisonReport p = compare_sandqvist_alpha(parse_base("p"), {parse_sequent("|- p | q")});
  EXPECT_EQ(p.rows[0].sandqvist, Decision::yes);
  EXPECT_EQ(p.rows[0].alpha, Verdict::valid);
  EXPECT_EQ(to_json(p)["alpha_implies_sandqvist_on_sample"], "satisfied");
}

TEST(ValidityProperty, ExtendingJustificationsKeepsValidity) {
  const auto formulas = formulas_up_to({"p", "q"}, 2);
  const std::vector<Base> bases = {Base{}, parse_base("p"), parse_base("(p => q)\np"), parse_base("([p => q] => r)")};
  for (const auto& b : bases) {
    ValidityChecker c(b);
    for (std::size_t i = 0; i < formulas.size(); i += 3) {
      for (const auto& x : enumerate_closed_arguments(c, formulas[i], 2, false)) {
        if (c.check_closed(x).verdict != Verdict::valid) continue;
        const Argument wider{x.structure, x.justifications.united(standard_reductions())};
        EXPECT_EQ(c.check_closed(wider).verdict, Verdict::valid) << to_text(x.structure) << " on " << b.text();
      }
    }
  }
}

TEST(ValidityProperty, ValidPremisesGiveValidConclusion) {
  const auto formulas = formulas_up_to({"p", "q"}, 2);
  for (const auto& b : small_bases()) {
    ValidityChecker c(b);
    for (std::size_t i = 0; i < formulas.size(); i += 5) {
      const Formula& g = formulas[i];
      if (models_alpha(c, Sequent{{}, g}).result.verdict != Verdict::valid) continue;
      for (std::size_t j = 0; j < formulas.size(); j += 4) {
        const Formula& a = formulas[j];
        if (models_alpha(c, Sequent{{g}, a}).result.verdict != Verdict::valid) continue;
        EXPECT_EQ(models_alpha(c, Sequent{{}, a}).result.verdict, Verdict::valid)
            << to_string(g) << " |- " << to_string(a) << " on " << b.text();
      }
    }
  }
}

TEST(ValidityProperty, WitnessesCheckValidPerBase) {
  const auto formulas = formulas_up_to({"p", "q"}, 2);
  for (const auto& b : small_bases()) {
    ValidityChecker c(b);
    for (std::size_t i = 0; i < formulas.size(); i += 2) {
      const Sequent s{{}, formulas[i]};
      if (!c.standard().models(s)) continue;
      const Argument w = synthesize_witness(b, s);
      EXPECT_TRUE(w.structure.closed());
      EXPECT_EQ(w.structure.conclusion(), s.conclusion);
      EXPECT_EQ(c.check(w).verdict, Verdict::valid) << to_string(s) << " on " << b.text();
    }
  }
}
