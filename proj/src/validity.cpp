#include "pts/validity.hpp"

#include <algorithm>
#include <set>

namespace pts {

nlohmann::json to_json(const Argument& a) {
  return {{"structure", to_json(a.structure)},
          {"text", to_text(a.structure)},
          {"hash", a.structure.hash_hex()},
          {"justifications", a.justifications.names()}};
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::valid:
      return "VALID";
    case Verdict::invalid:
      return "INVALID";
    case Verdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

Verdict from_decision(Decision d) {
  return d == Decision::yes ? Verdict::valid : d == Decision::no ? Verdict::invalid : Verdict::inconclusive;
}

Decision to_decision(Verdict v) {
  return v == Verdict::valid ? Decision::yes : v == Verdict::invalid ? Decision::no : Decision::resource_limit;
}

ReductionSet schematic_only(const ReductionSet& j) {
  ReductionSet out;
  for (const auto& r : j.members()) {
    if (r->schematic()) out.insert(r);
  }
  return out;
}

}  // namespace

ValidityChecker::ValidityChecker(Base base, CheckOptions options)
    : base_(std::move(base)), options_(options), standard_(SemanticsKind::standard, base_, options.eval),
      provider_(bridge_closures()) {}

bool ValidityChecker::allowed(const ReductionSet& j) const {
  if (options_.mode != CheckMode::strict) return true;
  for (const auto& r : j.members()) {
    if (!r->schematic()) return false;
  }
  return true;
}

Verdict ValidityChecker::canonical_subs(const ArgumentStructure& d, const ReductionSet& j, nlohmann::json* evidence) {
  bool inconclusive = false;
  bool invalid = false;
  for (std::size_t i = 0; i < d.children().size() && !invalid; ++i) {
    const ArgumentStructure sub = immediate_substructure(d, i);
    Verdict v;
    std::string reason;
    if (sub.closed()) {
      v = closed_verdict(sub, j, &reason, nullptr);
    } else {
      auto suite = provider_(sub, *this);
      if (!suite) {
        v = Verdict::inconclusive;
        reason = "no closures available for the open sub-structure";
      } else {
        v = open_verdict(sub, j, *suite, &reason, nullptr);
      }
    }
    if (evidence) {
      (*evidence).push_back({{"position", path_text({i})},
                             {"closed", sub.closed()},
                             {"verdict", to_string(v)},
                             {"reason", reason},
                             {"hash", sub.hash_hex()}});
    }
    if (v == Verdict::invalid) invalid = true;
    if (v == Verdict::inconclusive) inconclusive = true;
  }
  return invalid ? Verdict::invalid : inconclusive ? Verdict::inconclusive : Verdict::valid;
}

Verdict ValidityChecker::closed_verdict(const ArgumentStructure& d, const ReductionSet& j_in, std::string* reason,
                                        nlohmann::json* evidence) {
  const ReductionSet j = allowed(j_in) ? j_in : schematic_only(j_in);
  const auto key = std::make_pair(d.fingerprint(), j.key());
  if (!evidence) {
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (reason) *reason = it->second.reason;
      return it->second.verdict;
    }
  }
  if (in_progress_.count(key)) {
    if (reason) *reason = "circular justification";
    return Verdict::inconclusive;
  }
  in_progress_[key] = true;

  const bool atomic = d.conclusion().is_atomic();
  const bool explosion = options_.eval.derive.explosion;
  std::optional<DerivationNode> derivation;
  ReduceOutcome out = search_reducts(d, j, options_.budget, [&](const ArgumentStructure& s) {
    if (atomic) {
      derivation = structure_to_derivation(s, base_, explosion);
      return derivation ? Decision::yes : Decision::no;
    }
    if (!is_canonical(s)) return Decision::no;
    return to_decision(canonical_subs(s, j, nullptr));
  });
  in_progress_.erase(key);

  Verdict v = from_decision(out.decision);
  std::string why;
  if (v == Verdict::valid) {
    why = atomic ? "reduces to an atomic derivation" : "reduces to a canonical structure with valid sub-structures";
  } else if (v == Verdict::invalid) {
    why = atomic ? "no reduct is an atomic derivation in the base"
                 : "no reduct is canonical with valid immediate sub-structures";
  } else {
    why = out.steps >= options_.budget ? "reduction budget exhausted" : "a sub-argument was inconclusive";
  }
  memo_[key] = {v, why};
  if (reason) *reason = why;
  if (evidence) {
    nlohmann::json ev = {{"reduction_path", to_json(out.path)},
                         {"reduction_steps", out.steps},
                         {"start", d.hash_hex()},
                         {"justifications", j.names()}};
    if (out.found) {
      ev["reached"] = out.found->hash_hex();
      ev["reached_text"] = to_text(*out.found);
      if (derivation) {
        ev["derivation"] = to_json(*derivation);
      } else {
        nlohmann::json subs = nlohmann::json::array();
        canonical_subs(*out.found, j, &subs);
        ev["sub_verdicts"] = subs;
      }
    }
    *evidence = ev;
  }
  return v;
}

Verdict ValidityChecker::open_verdict(const ArgumentStructure& d, const ReductionSet& j,
                                      const std::vector<SuiteMember>& suite, std::string* reason,
                                      nlohmann::json* evidence) {
  const std::vector<Formula> gamma = d.assumptions();
  bool inconclusive = false;
  std::size_t applicable = 0;
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t m = 0; m < suite.size(); ++m) {
    const SuiteMember& member = suite[m];
    const ReductionSet jp = j.united(member.extension);
    bool premises_valid = true;
    bool premises_unknown = false;
    for (const auto& a : gamma) {
      auto it = member.sigma.find(a);
      if (it == member.sigma.end()) throw std::invalid_argument("suite member misses assumption " + a.text());
      if (it->second.conclusion() != a || !it->second.closed()) {
        throw std::invalid_argument("suite member for " + a.text() + " is not a closed structure for it");
      }
      const Verdict pv = closed_verdict(it->second, jp, nullptr, nullptr);
      if (pv == Verdict::invalid) premises_valid = false;
      if (pv == Verdict::inconclusive) premises_unknown = true;
    }
    std::string entry = "vacuous";
    if (!premises_valid) {
      entry = "vacuous";
    } else if (premises_unknown) {
      inconclusive = true;
      entry = "premises inconclusive";
    } else {
      ++applicable;
      const ArgumentStructure inst = instantiate(d, member.sigma);
      std::string why;
      const Verdict v = closed_verdict(inst, jp, &why, nullptr);
      entry = std::string(to_string(v));
      if (v == Verdict::invalid) {
        if (reason) *reason = "closure " + std::to_string(m) + " is not valid: " + why;
        if (evidence) {
          nlohmann::json sigma = nlohmann::json::object();
          for (const auto& [f, s] : member.sigma) sigma[f.text()] = to_text(s);
          nlohmann::json inst_ev;
          closed_verdict(inst, jp, nullptr, &inst_ev);
          *evidence = {{"counterexample_closure", sigma},
                       {"instance", to_text(inst)},
                       {"instance_check", inst_ev},
                       {"suite_size", suite.size()}};
        }
        return Verdict::invalid;
      }
      if (v == Verdict::inconclusive) inconclusive = true;
    }
    if (evidence) members.push_back({{"member", m}, {"outcome", entry}});
  }
  if (reason) {
    *reason = inconclusive ? "some closure was inconclusive"
                           : "valid relative to " + std::to_string(suite.size()) + " closures (" +
                                 std::to_string(applicable) + " with valid premises)";
  }
  if (evidence) {
    *evidence = {{"suite_size", suite.size()},
                 {"applicable", applicable},
                 {"members", members},
                 {"qualification", "relative to the listed closures only"}};
  }
  return inconclusive ? Verdict::inconclusive : Verdict::valid;
}

ValidityResult ValidityChecker::check_closed(const Argument& arg) {
  if (!arg.structure.closed()) throw std::invalid_argument("check_closed on an open structure");
  ValidityResult r;
  r.verdict = closed_verdict(arg.structure, arg.justifications, &r.reason, &r.evidence);
  return r;
}

ValidityResult ValidityChecker::check_open(const Argument& arg, const std::vector<SuiteMember>& suite) {
  ValidityResult r;
  r.verdict = open_verdict(arg.structure, arg.justifications, suite, &r.reason, &r.evidence);
  return r;
}

ValidityResult ValidityChecker::check(const Argument& arg) {
  if (arg.structure.closed()) return check_closed(arg);
  auto suite = provider_(arg.structure, *this);
  if (!suite) {
    return {Verdict::inconclusive, "no closures available for the open argument", nlohmann::json::object()};
  }
  return check_open(arg, *suite);
}

ValidityChecker::ClosureProvider bridge_closures() {
  return [](const ArgumentStructure& open, ValidityChecker& self) -> std::optional<std::vector<SuiteMember>> {
    SuiteMember member;
    for (const auto& a : open.assumptions()) {
      // No closed valid argument exists for a failing assumption.
      if (!self.standard().holds(a)) return std::vector<SuiteMember>{};
      auto w = self.witness(a);
      if (!w) return std::nullopt;
      member.sigma.emplace(a, w->structure);
      member.extension.insert_all(w->justifications);
    }
    return std::vector<SuiteMember>{std::move(member)};
  };
}

std::optional<Argument> ValidityChecker::witness(const Formula& a) {
  const std::string key = a.text();
  if (auto it = witnesses_.find(key); it != witnesses_.end()) return it->second;
  std::optional<Argument> out;
  if (standard_.holds(a)) {
    const bool strict = options_.mode == CheckMode::strict;
    switch (a.kind()) {
      case Connective::atom:
      case Connective::bottom: {
        DeriveResult d = standard_.deriver().derive(a.name());
        if (d.decision == Decision::yes) out = Argument{derivation_to_structure(*d.derivation), {}};
        break;
      }
      case Connective::conj: {
        auto l = witness(a.left());
        auto r = witness(a.right());
        if (l && r) out = Argument{and_intro(l->structure, r->structure), l->justifications.united(r->justifications)};
        break;
      }
      case Connective::disj: {
        auto w = standard_.holds(a.left()) ? witness(a.left()) : witness(a.right());
        if (w) out = Argument{or_intro(w->structure, a), w->justifications};
        break;
      }
      case Connective::impl: {
        if (strict) break;
        const ArgumentStructure body =
            ArgumentStructure::step(a.right(), {ArgumentStructure::assumption(a.left(), 1)}, "step");
        Argument arg{imp_intro(a.left(), 1, body), standard_reductions()};
        if (standard_.holds(a.left())) {
          auto wa = witness(a.left());
          auto wb = witness(a.right());
          if (!wa || !wb) break;
          arg.justifications.insert(options_.constant_pointers
                                        ? constant_reduction({a.left()}, wb->structure)
                                        : pointer_reduction({wa->structure}, wb->structure));
          arg.justifications.insert_all(wa->justifications);
          arg.justifications.insert_all(wb->justifications);
        }
        out = std::move(arg);
        break;
      }
    }
  }
  witnesses_.emplace(key, out);
  return out;
}

std::optional<Argument> ValidityChecker::witness(const Sequent& s) {
  if (s.closed()) return witness(s.conclusion);
  const std::string key = "|" + to_string(s);
  if (auto it = witnesses_.find(key); it != witnesses_.end()) return it->second;
  std::optional<Argument> out;
  if (options_.mode != CheckMode::strict && standard_.models(s)) {
    std::vector<ArgumentStructure> tops;
    for (const auto& g : s.premises) tops.push_back(ArgumentStructure::assumption(g));
    Argument arg{ArgumentStructure::step(s.conclusion, tops, "step"), standard_reductions()};
    bool all = true;
    for (const auto& g : s.premises) all = all && standard_.holds(g);
    bool ok = true;
    if (all) {
      std::vector<ArgumentStructure> inputs;
      for (const auto& g : s.premises) {
        auto w = witness(g);
        if (!w) {
          ok = false;
          break;
        }
        inputs.push_back(w->structure);
        arg.justifications.insert_all(w->justifications);
      }
      auto wa = ok ? witness(s.conclusion) : std::nullopt;
      if (ok && wa) {
        arg.justifications.insert(options_.constant_pointers ? constant_reduction(s.premises, wa->structure)
                                                             : pointer_reduction(inputs, wa->structure));
        arg.justifications.insert_all(wa->justifications);
      } else {
        ok = false;
      }
    }
    if (ok) out = std::move(arg);
  }
  witnesses_.emplace(key, out);
  return out;
}

Argument synthesize_witness(const Base& base, const Sequent& s, CheckOptions options) {
  ValidityChecker checker(base, options);
  if (!checker.standard().models(s)) throw std::invalid_argument("sequent " + to_string(s) + " does not hold");
  auto w = checker.witness(s);
  if (!w) throw std::invalid_argument("no witness for " + to_string(s) + " in this mode");
  return *w;
}

// ---------------------------------------------------------------------------

AlphaResult models_alpha(ValidityChecker& checker, const Sequent& s) {
  AlphaResult out;
  out.standard = checker.standard().decide(s);
  if (out.standard == Decision::resource_limit) {
    out.result = {Verdict::inconclusive, "standard evaluation exceeded its step cap", nlohmann::json::object()};
    return out;
  }
  if (out.standard == Decision::no) {
    const ModelsResult trace = models(SemanticsKind::standard, checker.base(), s, checker.options().eval);
    out.result = {Verdict::invalid, "the sequent fails under the standard semantics", to_json(trace)};
    return out;
  }
  out.witness = checker.witness(s);
  if (!out.witness) {
    out.result = {Verdict::inconclusive, "no witness can be built without pointer reductions",
                  nlohmann::json::object()};
    return out;
  }
  out.result = checker.check(*out.witness);
  return out;
}

AlphaResult models_alpha(const Base& base, const Sequent& s, CheckOptions options) {
  ValidityChecker checker(base, options);
  return models_alpha(checker, s);
}

AlphaResult models_alpha_strict(const Base& base, const Sequent& s, const std::optional<Argument>& certificate,
                                CheckOptions options) {
  options.mode = CheckMode::strict;
  ValidityChecker checker(base, options);
  if (!certificate) return models_alpha(checker, s);
  AlphaResult out;
  out.standard = checker.standard().decide(s);
  out.witness = certificate;
  const ArgumentStructure& d = certificate->structure;
  if (d.conclusion() != s.conclusion) {
    out.result = {Verdict::invalid, "certificate concludes " + d.conclusion().text(), nlohmann::json::object()};
    return out;
  }
  for (const auto& a : d.assumptions()) {
    if (!std::binary_search(s.premises.begin(), s.premises.end(), a)) {
      out.result = {Verdict::invalid, "certificate depends on " + a.text() + " outside the premises",
                    nlohmann::json::object()};
      return out;
    }
  }
  for (const auto& r : certificate->justifications.members()) {
    if (!r->schematic()) {
      out.result = {Verdict::inconclusive, "certificate uses the non-schematic reduction " + r->name(),
                    nlohmann::json::object()};
      return out;
    }
  }
  out.result = checker.check(*certificate);
  return out;
}

nlohmann::json to_json(const AlphaResult& r) {
  nlohmann::json out = {{"verdict", to_string(r.result.verdict)},
                        {"reason", r.result.reason},
                        {"standard", to_string(r.standard)},
                        {"evidence", r.result.evidence}};
  out["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(InversionStatus s) {
  switch (s) {
    case InversionStatus::vacuous:
      return "vacuous";
    case InversionStatus::satisfied:
      return "satisfied";
    case InversionStatus::refuted_on_sample:
      return "refuted-on-sample";
  }
  return "?";
}

ComparisonReport compare_sandqvist_alpha(const Base& base, const std::vector<Sequent>& sequents, CheckOptions options) {
  ComparisonReport out;
  out.base_text = base.text();
  ValidityChecker checker(base, options);
  Evaluator sandqvist(SemanticsKind::sandqvist, base, options.eval);
  bool any_alpha = false, refuted = false;
  for (const auto& s : sequents) {
    ComparisonRow row{s, sandqvist.decide(s), models_alpha(checker, s).result.verdict};
    if (row.sandqvist == Decision::resource_limit || row.alpha == Verdict::inconclusive) {
      ++out.inconclusive_cells;
    } else {
      if (row.sandqvist == Decision::yes && row.alpha == Verdict::valid) out.sandqvist_to_alpha.push_back(s);
      if (row.alpha == Verdict::valid) {
        any_alpha = true;
        if (row.sandqvist == Decision::no) refuted = true;
      }
    }
    out.rows.push_back(std::move(row));
  }
  out.inversion = refuted ? InversionStatus::refuted_on_sample
                          : any_alpha ? InversionStatus::satisfied : InversionStatus::vacuous;
  return out;
}

nlohmann::json to_json(const ComparisonReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    rows.push_back(
        {{"sequent", to_string(row.sequent)}, {"sandqvist", to_string(row.sandqvist)}, {"alpha", to_string(row.alpha)}});
  }
  nlohmann::json both = nlohmann::json::array();
  for (const auto& s : r.sandqvist_to_alpha) both.push_back(to_string(s));
  return {{"base", r.base_text},
          {"rows", rows},
          {"sandqvist_and_alpha", both},
          {"alpha_implies_sandqvist_on_sample", to_string(r.inversion)},
          {"inconclusive_cells", r.inconclusive_cells},
          {"note", "the hypothesis under which alpha-consequence would imply Sandqvist consequence is not decided"}};
}

// ---------------------------------------------------------------------------

namespace {

void add_unique(std::vector<Argument>& out, std::set<std::string>& seen, Argument a) {
  if (seen.insert(a.structure.fingerprint()).second) out.push_back(std::move(a));
}

std::vector<Argument> enumerate_rec(ValidityChecker& checker, const Formula& a, int depth) {
  std::vector<Argument> out;
  std::set<std::string> seen;
  if (depth <= 0) return out;
  switch (a.kind()) {
    case Connective::atom:
    case Connective::bottom: {
      if (auto w = checker.witness(a)) add_unique(out, seen, *w);
      add_unique(out, seen, Argument{ArgumentStructure::step(a, {}, "step"), {}});
      break;
    }
    case Connective::conj: {
      const auto ls = enumerate_rec(checker, a.left(), depth - 1);
      const auto rs = enumerate_rec(checker, a.right(), depth - 1);
      for (const auto& l : ls) {
        for (const auto& r : rs) {
          add_unique(out, seen,
                     Argument{and_intro(l.structure, r.structure), l.justifications.united(r.justifications)});
        }
      }
      break;
    }
    case Connective::disj: {
      for (const Formula& side : {a.left(), a.right()}) {
        for (const auto& x : enumerate_rec(checker, side, depth - 1)) {
          add_unique(out, seen, Argument{or_intro(x.structure, a), x.justifications});
        }
      }
      break;
    }
    case Connective::impl: {
      for (const auto& y : enumerate_rec(checker, a.right(), depth - 1)) {
        const Label l = y.structure.max_label() + 1;
        add_unique(out, seen, Argument{imp_intro(a.left(), l, y.structure), y.justifications});
      }
      break;
    }
  }
  if (auto w = checker.witness(a)) add_unique(out, seen, *w);
  return out;
}

}  // namespace

std::vector<Argument> enumerate_closed_arguments(ValidityChecker& checker, const Formula& a, int depth,
                                                 bool canonical_only) {
  std::vector<Argument> all = enumerate_rec(checker, a, depth);
  if (!canonical_only) return all;
  std::vector<Argument> out;
  for (auto& x : all) {
    if (is_canonical(x.structure)) out.push_back(std::move(x));
  }
  return out;
}

}  // namespace pts
