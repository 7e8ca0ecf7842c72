#include <gtest/gtest.h>

#include "pts/arguments.hpp"
#include "pts/experiments.hpp"

using namespace pts;

namespace {

ArgumentStructure arg(const std::string& text) { return parse_argument(text); }
Formula f(const std::string& text) { return parse_formula(text); }

// Structure discharging [A]_1 through impI, reused by several tests.
ArgumentStructure identity_for(const std::string& a) {
  return imp_intro(f(a), 1, ArgumentStructure::assumption(f(a), 1));
}

}  // namespace

TEST(Arguments, TextRoundTrip) {
  for (const std::string text :
       {"impI({1} orI([p]_1) : p | q) : p -> p | q", "andI([p], [q])", "andE1([p & q])",
        "orE([p | q], {1} [r]_1, {2} [r]_2)", "impE([p -> q], [p])", "Wk(impI({1} [p]_1) : p -> p) : p & r -> p",
        "step(<p>, [q]) : r"}) {
    const ArgumentStructure d = arg(text);
    EXPECT_EQ(arg(to_text(d)), d) << text;
    EXPECT_EQ(argument_from_json(to_json(d)), d) << text;
  }
}

TEST(Arguments, ParseErrors) {
  EXPECT_THROW(arg("andI([p]"), ParseError);
  EXPECT_THROW(arg("step([p])"), ParseError);  // no conclusion
  EXPECT_THROW(arg("[p"), ParseError);
}

TEST(Arguments, AssumptionsAndClosedness) {
  const ArgumentStructure open = arg("andI([p], [q])");
  EXPECT_EQ(open.assumptions(), (std::vector<Formula>{f("p"), f("q")}));
  EXPECT_FALSE(open.closed());
  const ArgumentStructure closed = identity_for("p");
  EXPECT_TRUE(closed.assumptions().empty());
  EXPECT_TRUE(closed.closed());
  // An axiomatic top node is not an assumption.
  EXPECT_TRUE(arg("step(<p>) : q").closed());
  EXPECT_EQ(closed.size(), 2u);
  EXPECT_EQ(closed.height(), 2u);
}

TEST(Arguments, FingerprintIgnoresLabelNamesAndRuleNames) {
  EXPECT_EQ(arg("impI({1} [p]_1) : p -> p"), arg("impI({7} [p]_7) : p -> p"));
  EXPECT_EQ(arg("andI([p], [q])").fingerprint(), arg("whatever([p], [q]) : p & q").fingerprint());
  // Which nodes a binder discharges does matter.
  EXPECT_NE(arg("impI({1} andI([p]_1, [p]) : p & p) : p -> p & p"),
            arg("impI({1} andI([p]_1, [p]_1) : p & p) : p -> p & p"));
}

TEST(Arguments, Validation) {
  EXPECT_TRUE(validate(identity_for("p")).ok());
  // The same binder label twice.
  EXPECT_FALSE(validate(arg("andI(impI({1} [p]_1) : p -> p, impI({1} [q]_1) : q -> q)")).ok());
  // A free label clashing with a binder label.
  EXPECT_FALSE(validate(arg("andI(impI({1} [p]_1) : p -> p, [q]_1)")).ok());
  // Discharged axiomatic node without binder.
  EXPECT_FALSE(validate(arg("step(<p>_3) : q")).ok());
}

TEST(Arguments, Positions) {
  const ArgumentStructure d = arg("andI(andE1([p & q]), [r])");
  const auto ps = positions(d);
  ASSERT_EQ(ps.size(), 4u);
  EXPECT_TRUE(ps[0].empty());
  EXPECT_EQ(path_text(ps[0]), "0");
  EXPECT_EQ(path_text(ps[1]), "0.0");
  EXPECT_EQ(path_text(ps[2]), "0.1");
  EXPECT_EQ(path_text(ps[3]), "0.0.0");
  EXPECT_EQ(subtree(d, *parse_path("0.0.0")).conclusion(), f("p & q"));
  EXPECT_EQ(*parse_path("0"), Path{});
  EXPECT_FALSE(parse_path("0..1"));
  EXPECT_FALSE(parse_path("1.0"));
}

TEST(Arguments, InstantiateClosesAssumptions) {
  const ArgumentStructure d = arg("andI([p], [q])");
  const Closure sigma{{f("p"), arg("step() : p")}, {f("q"), identity_for("r")}};
  EXPECT_THROW(instantiate(d, sigma), std::invalid_argument);  // q is not r -> r
  const Closure ok{{f("p"), arg("step() : p")}, {f("q"), arg("step() : q")}};
  const ArgumentStructure c = instantiate(d, ok);
  EXPECT_TRUE(c.closed());
  EXPECT_EQ(c.conclusion(), d.conclusion());
  EXPECT_THROW(instantiate(d, {{f("p"), arg("step() : p")}}), std::invalid_argument);
}

TEST(Arguments, InstantiateKeepsDischargedAssumptions) {
  const ArgumentStructure d = arg("impI({1} andI([p]_1, [q]) : p & q) : p -> p & q");
  const ArgumentStructure c = instantiate(d, {{f("q"), arg("step() : q")}});
  EXPECT_TRUE(c.closed());
  EXPECT_EQ(subtree(c, {0, 0}).conclusion(), f("p"));
  EXPECT_TRUE(subtree(c, {0, 0}).is_top());
}

TEST(ArgumentsProperty, InstantiationPreservesConclusionAndValidity) {
  const auto formulas = formulas_up_to({"p", "q"}, 2);
  for (const auto& a : formulas) {
    for (const auto& b : formulas) {
      const ArgumentStructure d =
          imp_intro(a, 1, and_intro(ArgumentStructure::assumption(a, 1), ArgumentStructure::assumption(b)));
      Closure sigma;
      sigma.emplace(b, and_elim(1, ArgumentStructure::step(Formula::conj(b, b), {})));
      const ArgumentStructure c = instantiate(d, sigma);
      EXPECT_TRUE(c.closed());
      EXPECT_EQ(c.conclusion(), d.conclusion());
      EXPECT_TRUE(validate(c).ok()) << to_text(c);
    }
  }
}

TEST(Arguments, ReplaceAtRootIsIdentityOnReplacement) {
  const ArgumentStructure d = arg("andE1([p & q])");
  const ArgumentStructure with = arg("step() : p");
  EXPECT_EQ(replace(d, {}, with), with);
  EXPECT_THROW(replace(d, {}, arg("step() : q")), std::invalid_argument);
}

TEST(Arguments, ReplaceLetsBindersAboveCaptureFreeLabels) {
  const ArgumentStructure d = arg("impI({1} andE1([p & p]) : p) : p -> p");
  const ArgumentStructure r = replace(d, {0}, ArgumentStructure::assumption(f("p"), 1));
  EXPECT_EQ(r, identity_for("p"));
  EXPECT_TRUE(r.closed());
}

TEST(Arguments, ReplaceRejectsDanglingDischarge) {
  // A discharged axiomatic node whose binder would be cut away.
  const ArgumentStructure d = arg("andI([p], [q])");
  EXPECT_THROW(replace(d, {0}, arg("step(<r>_4) : p")), std::invalid_argument);
}

TEST(Arguments, SchemaMatching) {
  EXPECT_TRUE(matches(Schema::and_intro, arg("andI([p], [q])")));
  EXPECT_TRUE(matches(Schema::and_intro, arg("foo([p], [q]) : p & q")));  // shape, not name
  EXPECT_FALSE(matches(Schema::and_intro, arg("andI_fake([p], [q]) : q & p")));
  EXPECT_TRUE(matches(Schema::or_intro, arg("orI([q]) : p | q")));
  EXPECT_TRUE(matches(Schema::imp_intro, identity_for("p")));
  EXPECT_TRUE(matches(Schema::imp_intro, arg("impI([q]) : p -> q")));  // vacuous discharge
  EXPECT_TRUE(matches(Schema::and_elim1, arg("andE1([p & q])")));
  EXPECT_TRUE(matches(Schema::and_elim2, arg("andE2([p & q])")));
  EXPECT_TRUE(matches(Schema::or_elim, arg("orE([p | q], {1} impE([p -> r], [p]_1), {2} impE([q -> r], [q]_2))")));
  EXPECT_FALSE(matches(Schema::or_elim, arg("orE([p | q], {1} [r]_1, {2} [r]_2)")));  // binds r, not the disjuncts
  EXPECT_TRUE(matches(Schema::imp_elim, arg("impE([p -> q], [p])")));
  EXPECT_TRUE(matches(Schema::weakening, arg("Wk(impI({1} [p]_1) : p -> p) : p & r -> p")));
  // The schemata only fix the shape; the premise may be any structure.
  EXPECT_TRUE(matches(Schema::weakening, arg("Wk([p -> p]) : p & r -> p")));
  EXPECT_FALSE(matches(Schema::weakening, arg("Wk([p -> p]) : r & p -> p")));
  EXPECT_TRUE(matches(Schema::or_lambda, arg("orL(orI([p]) : p | q)")));
  EXPECT_TRUE(matches(Schema::or_lambda, arg("orL([p | q])")));
  EXPECT_FALSE(matches(Schema::or_lambda, arg("orL([p | q]) : q")));
}

TEST(Arguments, Canonicity) {
  EXPECT_TRUE(is_canonical(arg("andI([p], [q])")));
  EXPECT_TRUE(is_canonical(identity_for("p")));
  EXPECT_FALSE(is_canonical(arg("andE1([p & q])")));
  EXPECT_FALSE(is_canonical(arg("Wk(impI({1} [p]_1) : p -> p) : p & r -> p")));
  EXPECT_FALSE(is_canonical(arg("[p & q]")));
  EXPECT_FALSE(is_canonical(arg("step() : p")));
}

TEST(Arguments, BuildersCheckShapes) {
  const auto p = ArgumentStructure::assumption(f("p"));
  EXPECT_THROW(or_intro(p, f("q | r")), std::invalid_argument);
  EXPECT_THROW(and_elim(1, p), std::invalid_argument);
  EXPECT_THROW(imp_elim(p, p), std::invalid_argument);
  EXPECT_THROW(or_lambda(p), std::invalid_argument);
  EXPECT_EQ(weakening(identity_for("p"), f("r")).conclusion(), f("p & r -> p"));
}

TEST(Arguments, ImmediateSubstructureOpensDischargedNodes) {
  const ArgumentStructure sub = immediate_substructure(identity_for("p"), 0);
  EXPECT_EQ(sub.assumptions(), std::vector<Formula>{f("p")});
}

TEST(Arguments, DerivationRoundTrip) {
  const Base base = parse_base("p\n(p => q)\n([p => q] => r)");
  for (const std::string goal : {"p", "q", "r"}) {
    const DeriveResult r = derive(base, {}, goal);
    ASSERT_EQ(r.decision, Decision::yes) << goal;
    const ArgumentStructure d = derivation_to_structure(*r.derivation);
    EXPECT_TRUE(d.closed());
    EXPECT_EQ(d.conclusion(), f(goal));
    EXPECT_TRUE(validate(d).ok());
    const auto back = structure_to_derivation(d, base);
    ASSERT_TRUE(back) << goal;
    EXPECT_EQ(derivation_to_structure(*back), d);
  }
  // Not a derivation in a base lacking the rule.
  const DeriveResult q = derive(base, {}, "q");
  EXPECT_FALSE(structure_to_derivation(derivation_to_structure(*q.derivation), parse_base("p")));
}

TEST(Arguments, DischargedRulesBecomeLabelledNodes) {
  const Base base = parse_base("([p => q] => r)\n(p => q)");
  const DeriveResult r = derive(base, {}, "r");
  ASSERT_EQ(r.decision, Decision::yes);
  const ArgumentStructure d = derivation_to_structure(*r.derivation);
  EXPECT_FALSE(d.binder_labels().empty());
  EXPECT_TRUE(validate(d).ok());
  EXPECT_TRUE(structure_to_derivation(d, base));
}

TEST(Arguments, PrettyPrintShowsRuleLine) {
  const std::string s = pretty_print(arg("andI([p], [q])"));
  EXPECT_NE(s.find("p & q"), std::string::npos);
  EXPECT_NE(s.find("andI"), std::string::npos);
}

namespace {

// Open structure with an edge-set discharge (label 2) and an axiomatic discharge (label 3).
const char* kExampleOpen =
    "impI({1} step(step({2} step({3} step(step(step([p & ~q]_1, step() : ~r) : q, [s])_2 : t,"
    " step(<q>_3, [~~p | r]) : q -> ~s) : r) : t, step() : s) : p) : q -> p | r) : p & ~q -> (q -> p | r)";

const char* kExampleClosed =
    "impI({1} step(step({2} step({3} step(step(step([p & ~q]_1, step() : ~r) : q, step(step() : p | q) : s)_2 : t,"
    " step(<q>_3, step({4} step(step() : p, [q -> s]_4) : q | p) : ~~p | r) : q -> ~s) : r) : t, step() : s) : p)"
    " : q -> p | r) : p & ~q -> (q -> p | r)";

}  // namespace

TEST(Arguments, LabelledExampleStructure) {
  const ArgumentStructure d = arg(kExampleOpen);
  EXPECT_TRUE(validate(d).ok()) << validate(d).errors.front();
  EXPECT_EQ(d.assumptions(), (std::vector<Formula>{f("s"), f("~~p | r")}));
  EXPECT_EQ(d.conclusion(), f("p & ~q -> (q -> p | r)"));
  EXPECT_TRUE(is_canonical(d));
  EXPECT_FALSE(is_canonical(immediate_substructure(d, 0)));
  // Instance of itself under the identity closure.
  const Closure identity{{f("s"), ArgumentStructure::assumption(f("s"))},
                         {f("~~p | r"), ArgumentStructure::assumption(f("~~p | r"))}};
  EXPECT_EQ(instantiate(d, identity), d);
}

TEST(Arguments, LabelledExampleClosedInstance) {
  const ArgumentStructure c = arg(kExampleClosed);
  EXPECT_TRUE(validate(c).ok());
  EXPECT_TRUE(c.closed());
  const Closure sigma{{f("s"), arg("step(step() : p | q) : s")},
                      {f("~~p | r"), arg("step({4} step(step() : p, [q -> s]_4) : q | p) : ~~p | r")}};
  EXPECT_EQ(instantiate(arg(kExampleOpen), sigma), c);
}
