#include "pts/experiments.hpp"

#include <random>

#include "pts/il_prover.hpp"

namespace pts {

bool PackReport::all_passed() const {
  for (const auto& i : items) {
    if (!i.passed) return false;
  }
  return !items.empty();
}

nlohmann::json to_json(const PackItem& item) {
  return {{"name", item.name}, {"passed", item.passed}, {"detail", item.detail}};
}

nlohmann::json to_json(const PackReport& report) {
  nlohmann::json items = nlohmann::json::array();
  std::size_t passed = 0;
  for (const auto& i : report.items) {
    items.push_back(to_json(i));
    passed += i.passed ? 1 : 0;
  }
  return {{"items", items}, {"passed", passed}, {"total", report.items.size()}, {"all_passed", report.all_passed()}};
}

std::vector<Formula> formulas_up_to(const std::vector<std::string>& atoms, int h) {
  std::vector<Formula> base;
  for (const auto& a : atoms) base.push_back(Formula::atom(a));
  base.push_back(Formula::bottom());
  std::vector<Formula> out = base;
  for (int level = 2; level <= h; ++level) {
    std::vector<Formula> next = base;
    for (const auto& l : out) {
      for (const auto& r : out) {
        next.push_back(Formula::conj(l, r));
        next.push_back(Formula::disj(l, r));
        next.push_back(Formula::impl(l, r));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::vector<Base> small_bases() {
  std::vector<Base> out;
  for_each_base({"p", "q"}, SearchBounds{2, 3, 2}, [&](const Base& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

PackItem non_monotonicity() {
  PackItem item{"non-monotonicity", true, nlohmann::json::object()};
  const Sequent s = parse_sequent("p |- q");
  const Base empty;
  const Base p = parse_base("p");
  for (SemanticsKind k : {SemanticsKind::standard, SemanticsKind::sandqvist}) {
    const Decision on_empty = models(k, empty, s).decision;
    const Decision on_p = models(k, p, s).decision;
    item.detail[std::string(to_string(k))] = {{"empty", to_string(on_empty)}, {"{p}", to_string(on_p)}};
    item.passed = item.passed && on_empty == Decision::yes && on_p == Decision::no;
  }
  item.detail["sequent"] = to_string(s);
  return item;
}

PackItem export_failure(const SearchBounds& bounds) {
  const ExportResult r =
      export_principle_holds(SemanticsKind::standard, Base{}, parse_sequent("p |- q"), {}, bounds);
  PackItem item{"export-principle-failure", false, to_json(r)};
  item.passed = r.verdict == ExportVerdict::confirmed_failure && r.right.counterexample &&
                *r.right.counterexample == parse_base("p");
  return item;
}

PackItem base_incompleteness(CheckOptions options) {
  PackItem item{"base-incompleteness", true, nlohmann::json::object()};
  for (SemanticsKind k : {SemanticsKind::standard, SemanticsKind::sandqvist}) {
    const CompletenessWitness w = base_completeness_witness(k);
    item.detail[w.kind] = to_json(w);
    item.passed = item.passed && w.refutes_completeness();
  }
  const Sequent s = parse_sequent("p |- q");
  const AlphaResult a = models_alpha(Base{}, s, options);
  const Decision il = il_derives(s.premises, s.conclusion);
  item.detail["alpha"] = {{"sequent", to_string(s)},
                          {"base", "{}"},
                          {"models", to_string(a.result.verdict)},
                          {"il", to_string(il)}};
  item.passed = item.passed && a.result.verdict == Verdict::valid && il == Decision::no;
  return item;
}

PackItem classical_sweep(const SearchBounds& bounds) {
  PackItem item{"classical-tautology-sweep", true, nlohmann::json::array()};
  for (const char* text : {"((p -> q) -> p) -> p", "~~p -> p", "p | ~p"}) {
    const Sequent s{{}, parse_formula(text)};
    for (SemanticsKind k : {SemanticsKind::standard, SemanticsKind::sandqvist}) {
      const SearchResult r = search_counterexample(k, s, bounds);
      nlohmann::json row = to_json(r);
      row["sequent"] = to_string(s);
      row["semantics"] = to_string(k);
      item.detail.push_back(row);
      item.passed = item.passed && !r.counterexample && r.inconclusive == 0;
    }
  }
  return item;
}

nlohmann::json to_json(const ReplayStats& s) {
  return {{"bases", s.bases},     {"checks", s.checks},
          {"valid", s.valid},     {"invalid", s.invalid},
          {"inconclusive", s.inconclusive}, {"suite_members", s.suite_members},
          {"failures", s.failures}};
}

namespace {

void tally(ReplayStats& stats, const ValidityResult& r, const std::string& where) {
  ++stats.checks;
  if (r.verdict == Verdict::valid) {
    ++stats.valid;
    return;
  }
  (r.verdict == Verdict::invalid ? stats.invalid : stats.inconclusive)++;
  if (stats.failures.size() < 5) stats.failures.push_back(where + ": " + std::string(to_string(r.verdict)) + " " + r.reason);
}

std::vector<SuiteMember> suite_for(ValidityChecker& checker, const Formula& assumption, int depth,
                                   bool canonical_only) {
  std::vector<SuiteMember> suite;
  for (auto& a : enumerate_closed_arguments(checker, assumption, depth, canonical_only)) {
    SuiteMember m;
    m.sigma.emplace(assumption, a.structure);
    m.extension = a.justifications;
    suite.push_back(std::move(m));
  }
  return suite;
}

}  // namespace

ReplayStats or_lambda_replay(const std::vector<Base>& bases, CheckOptions options) {
  ReplayStats stats;
  const Formula pq = parse_formula("p | q");
  const Argument arg{or_lambda(ArgumentStructure::assumption(pq, 1)), reductions_by_names("phi_or_lambda")};
  for (const auto& b : bases) {
    ValidityChecker checker(b, options);
    if (checker.standard().holds(Formula::atom("q"))) continue;
    ++stats.bases;
    const auto suite = suite_for(checker, pq, 3, true);
    stats.suite_members += suite.size();
    tally(stats, checker.check_open(arg, suite), b.text());
  }
  return stats;
}

std::vector<WkTriple> wk_triples(std::uint64_t seed, std::size_t extra) {
  const auto atoms = formulas_up_to({"p", "q"}, 1);
  std::vector<WkTriple> out;
  for (const auto& a : atoms) {
    for (const auto& b : atoms) {
      for (const auto& c : atoms) out.push_back({a, b, c});
    }
  }
  const auto pool = formulas_up_to({"p", "q"}, 2);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (std::size_t i = 0; i < extra; ++i) out.push_back({pool[pick(rng)], pool[pick(rng)], pool[pick(rng)]});
  return out;
}

ReplayStats wk_replay(const std::vector<Base>& bases, const std::vector<WkTriple>& triples, CheckOptions options) {
  ReplayStats stats;
  const ReductionSet j = reductions_by_names("phi_and,phi_wk,phi_imp");
  for (const auto& b : bases) {
    ++stats.bases;
    ValidityChecker checker(b, options);
    for (const auto& [a, bb, c] : triples) {
      const Formula imp = Formula::impl(a, bb);
      const Argument arg{weakening(ArgumentStructure::assumption(imp, 1), c), j};
      const auto suite = suite_for(checker, imp, 3, false);
      stats.suite_members += suite.size();
      tally(stats, checker.check_open(arg, suite), b.text() + " " + to_string(imp) + " / " + to_string(c));
    }
  }
  return stats;
}

PackItem comparison_table(CheckOptions options) {
  PackItem item{"sandqvist-alpha-comparison", true, nlohmann::json::array()};
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"", {"|- p | ~p", "p |- q", "|- p -> p", "|- p | q"}},
      {"p", {"|- p | q", "p |- q", "|- q -> p", "|- ~~p -> p"}},
  };
  for (const auto& [base_text, texts] : cases) {
    std::vector<Sequent> sample;
    for (const auto& t : texts) sample.push_back(parse_sequent(t));
    const ComparisonReport r = compare_sandqvist_alpha(parse_base(base_text), sample, options);
    item.detail.push_back(to_json(r));
    item.passed = item.passed && r.inconclusive_cells == 0;
  }
  return item;
}

PackReport run_pack(const SearchBounds& bounds, std::uint64_t seed, CheckOptions options) {
  PackReport out;
  out.items.push_back(non_monotonicity());
  out.items.push_back(export_failure(bounds));
  out.items.push_back(base_incompleteness(options));
  out.items.push_back(classical_sweep(bounds));
  const auto bases = small_bases();
  {
    const ReplayStats s = or_lambda_replay(bases, options);
    out.items.push_back({"or-lambda-replay", s.all_valid(), to_json(s)});
  }
  {
    const ReplayStats s = wk_replay(bases, wk_triples(seed, 8), options);
    nlohmann::json detail = to_json(s);
    detail["seed"] = seed;
    out.items.push_back({"weakening-replay", s.all_valid(), detail});
  }
  out.items.push_back(comparison_table(options));
  return out;
}

}  // namespace pts
