#include <gtest/gtest.h>

#include "pts/reductions.hpp"

using namespace pts;

namespace {

ArgumentStructure arg(const std::string& text) { return parse_argument(text); }
Formula f(const std::string& text) { return parse_formula(text); }

const ArgumentStructure kP = ArgumentStructure::step(Formula::atom("p"), {});
const ArgumentStructure kQ = ArgumentStructure::step(Formula::atom("q"), {});

}  // namespace

TEST(Reductions, AndDetour) {
  const auto r = phi_and()->apply(arg("andE2(andI(step() : p, step() : q))"));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, kQ);
  EXPECT_FALSE(phi_and()->apply(arg("andE1([p & q])")));
  EXPECT_TRUE(phi_and()->schematic());
}

TEST(Reductions, OrDetourGraftsTheMinorPremise) {
  const ArgumentStructure d = arg("orE(orI(step() : p) : p | q, {1} andI([p]_1, [p]_1), {2} andI(step() : p, step() : p))");
  const auto r = phi_or()->apply(d);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, and_intro(kP, kP));
}

TEST(Reductions, ImpDetour) {
  const auto r = phi_imp()->apply(arg("impE(impI({1} andI([p]_1, [q]) : p & q) : p -> p & q, step() : p)"));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, and_intro(kP, ArgumentStructure::assumption(f("q"))));
}

TEST(Reductions, WeakeningUsesFirstConjunct) {
  const ArgumentStructure d = parse_argument(
      "Wk(impI({1} orI([p]_1) : p | q) : p -> p | q) : p & r -> p | q");
  const auto r = phi_wk()->apply(d);
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, arg("impI({1} orI(andE1([p & r]_1)) : p | q) : p & r -> p | q"));
}

TEST(Reductions, OrLambda) {
  EXPECT_EQ(*phi_or_lambda()->apply(arg("orL(orI(step() : p) : p | q)")), kP);
  EXPECT_FALSE(phi_or_lambda()->apply(arg("orL(orI(step() : q) : p | q)")));
}

TEST(Reductions, PointerDomainIsExact) {
  const ArgumentStructure target = arg("step() : r");
  auto ptr = pointer_reduction({kP}, target);
  EXPECT_FALSE(ptr->schematic());
  EXPECT_EQ(*ptr->apply(ArgumentStructure::step(f("r"), {kP})), target);
  EXPECT_FALSE(ptr->apply(ArgumentStructure::step(f("r"), {arg("andE1(andI(step() : p, step() : q))")})));
  EXPECT_FALSE(ptr->apply(ArgumentStructure::step(f("r"), {kP, kP})));
  auto constant = constant_reduction({f("p")}, target);
  EXPECT_EQ(*constant->apply(ArgumentStructure::step(f("r"), {arg("andE1(andI(step() : p, step() : q))")})), target);
}

TEST(Reductions, SetsAreOrderedAndKeyed) {
  const ReductionSet a({phi_and(), phi_or()});
  const ReductionSet b({phi_or(), phi_and()});
  EXPECT_EQ(a.key(), b.key());
  EXPECT_EQ(a.names(), (std::vector<std::string>{"phi_and", "phi_or"}));
  EXPECT_TRUE(standard_reductions().includes(a));
  EXPECT_FALSE(a.includes(standard_reductions()));
  EXPECT_EQ(reductions_by_names("none").size(), 0u);
  EXPECT_EQ(reductions_by_names("phi_wk,phi_and").size(), 2u);
  EXPECT_THROW(reductions_by_names("phi_nope"), std::invalid_argument);
}

TEST(Reductions, TwoDisjointDetoursGiveTwoReducts) {
  const ArgumentStructure d =
      arg("andI(andE1(andI(step() : p, step() : q)), andE2(andI(step() : p, step() : q)))");
  const auto reducts = reduce_step(d, standard_reductions());
  ASSERT_EQ(reducts.size(), 2u);
  EXPECT_EQ(path_text(reducts[0].position), "0.0");
  EXPECT_EQ(path_text(reducts[1].position), "0.1");
  EXPECT_EQ(reducts[0].result, and_intro(kP, arg("andE2(andI(step() : p, step() : q))")));
}

TEST(Reductions, ReducesToIsReflexiveAndTransitive) {
  const ArgumentStructure d =
      arg("andI(andE1(andI(step() : p, step() : q)), andE2(andI(step() : p, step() : q)))");
  const ReductionSet j = standard_reductions();
  EXPECT_EQ(reduces_to(d, d, j, 100).decision, Decision::yes);
  EXPECT_EQ(reduces_to(d, d, j, 100).path.size(), 0u);
  const ReduceOutcome full = reduces_to(d, and_intro(kP, kQ), j, 100);
  ASSERT_EQ(full.decision, Decision::yes);
  EXPECT_EQ(full.path.size(), 2u);
  EXPECT_EQ(reduces_to(and_intro(kP, kQ), d, j, 100).decision, Decision::no);
  EXPECT_EQ(reduces_to(d, and_intro(kP, kQ), ReductionSet{}, 100).decision, Decision::no);
}

TEST(Reductions, BudgetExhaustionIsInconclusive) {
  const ArgumentStructure d =
      arg("andI(andE1(andI(step() : p, step() : q)), andE2(andI(step() : p, step() : q)))");
  const ReduceOutcome r = reduces_to(d, and_intro(kP, kQ), standard_reductions(), 1);
  EXPECT_EQ(r.decision, Decision::resource_limit);
}

TEST(Reductions, TraceJson) {
  const ReduceOutcome r = reduces_to(arg("andE1(andI(step() : p, step() : q))"), kP, standard_reductions(), 10);
  ASSERT_EQ(r.path.size(), 1u);
  const auto j = to_json(r.path);
  EXPECT_EQ(j[0]["reduction"], "phi_and");
  EXPECT_EQ(j[0]["position"], "0");
}

namespace {

// Structures with detours of every kind, open and closed.
std::vector<ArgumentStructure> detour_samples() {
  std::vector<ArgumentStructure> out;
  for (const std::string text : {
           "andE1(andI([p], [q]))",
           "andE2(andI(andE1(andI([p], [r])), [q]))",
           "orE(orI([p]) : p | q, {1} andI([p]_1, [s]) : p & s, {2} andI(step() : p, [s]) : p & s)",
           "orE(orI([q]) : p | q, {1} [r]_9, {2} impE([q -> r], [q]_2))",
           "impE(impI({1} andI([p]_1, [p]_1) : p & p) : p -> p & p, andE1([p & q]))",
           "impE(impI([q]) : p -> q, [p])",
           "impE(Wk(impI({1} orI([p]_1) : p | q) : p -> p | q) : p & r -> p | q, andI([p], [r]))",
           "andI(orL(orI([p]) : p | q), andE2(andI([r], [s])))",
       }) {
    out.push_back(parse_argument(text));
  }
  return out;
}

// Every structure reachable by standard one-step reductions, breadth first.
std::vector<ArgumentStructure> reachable(const ArgumentStructure& d) {
  std::vector<ArgumentStructure> seen{d};
  for (std::size_t i = 0; i < seen.size() && seen.size() < 200; ++i) {
    for (const auto& r : reduce_step(seen[i], standard_reductions())) {
      if (std::find(seen.begin(), seen.end(), r.result) == seen.end()) seen.push_back(r.result);
    }
  }
  return seen;
}

bool subset(const std::vector<Formula>& a, const std::vector<Formula>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST(ReductionsProperty, PreserveConclusionAndShrinkAssumptions) {
  for (const auto& d : detour_samples()) {
    for (const auto& e : reachable(d)) {
      EXPECT_EQ(e.conclusion(), d.conclusion()) << to_text(e);
      EXPECT_TRUE(subset(e.assumptions(), d.assumptions())) << to_text(d) << " ~> " << to_text(e);
      EXPECT_TRUE(validate(e).ok()) << to_text(e);
    }
  }
}

TEST(ReductionsProperty, CommuteWithInstantiation) {
  for (const auto& d : detour_samples()) {
    Closure sigma;
    for (const auto& a : d.assumptions()) sigma.emplace(a, ArgumentStructure::step(a, {}, "c"));
    const ArgumentStructure closed = instantiate(d, sigma);
    for (const auto& r : reduce_step(d, standard_reductions())) {
      // (D reduced)^σ is reachable from D^σ in one step at the same position.
      const ArgumentStructure expected = instantiate(r.result, sigma);
      bool found = false;
      for (const auto& s : reduce_step(closed, standard_reductions())) {
        if (s.position == r.position && s.reduction == r.reduction && s.result == expected) found = true;
      }
      EXPECT_TRUE(found) << to_text(d) << " at " << path_text(r.position);
    }
  }
}

TEST(ReductionsProperty, SearchFindsOnlyReachableStructures) {
  for (const auto& d : detour_samples()) {
    const auto all = reachable(d);
    for (const auto& e : all) EXPECT_EQ(reduces_to(d, e, standard_reductions(), 1000).decision, Decision::yes);
    const ReduceOutcome none = search_reducts(d, standard_reductions(), 1000,
                                              [](const ArgumentStructure&) { return Decision::no; });
    EXPECT_EQ(none.decision, Decision::no);
    EXPECT_EQ(none.steps + 1 >= all.size(), true);
  }
}
