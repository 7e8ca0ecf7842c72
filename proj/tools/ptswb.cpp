// ptswb: command-line front end for the proof-theoretic semantics workbench.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pts/experiments.hpp"
#include "pts/il_prover.hpp"

namespace {

using namespace pts;

enum Exit { kHolds = 0, kFails = 1, kInconclusive = 2, kUsage = 64, kParse = 65, kInternal = 70 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string base_path;
  std::string sequent;
  std::string semantics = "standard";
  std::string bounds = "3,4,2";
  std::size_t budget = 10000;
  std::string output;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::string arg_path;
  std::string target_path;
  std::string reductions = "std";
  std::string atom;
  bool strict = false;
  bool explosion = false;
};

struct Report {
  int code = kHolds;
  std::string text;
  nlohmann::json json;
};

Base load_base(const Config& c) {
  if (c.base_path.empty()) return Base{};
  return load_base_file(c.base_path);
}

Base consistent_base(const Config& c) {
  Base b = load_base(c);
  if (check_consistency(b) != Decision::yes) throw ParseError("base " + b.text() + " is inconsistent", 0);
  return b;
}

Sequent required_sequent(const Config& c) {
  if (c.sequent.empty()) throw UsageError("--sequent is required");
  return parse_sequent(c.sequent);
}

SearchBounds bounds_of(const Config& c) {
  auto b = parse_bounds(c.bounds);
  if (!b || b->max_atoms <= 0 || b->max_rules <= 0 || b->max_level <= 0) {
    throw UsageError("--bounds expects three positive integers a,r,l");
  }
  return *b;
}

CheckOptions check_options(const Config& c) {
  CheckOptions o;
  o.budget = c.budget;
  o.mode = c.strict ? CheckMode::strict : CheckMode::bridge;
  o.eval.derive.explosion = c.explosion;
  return o;
}

int verdict_code(Verdict v) {
  return v == Verdict::valid ? kHolds : v == Verdict::invalid ? kFails : kInconclusive;
}

int decision_code(Decision d) {
  return d == Decision::yes ? kHolds : d == Decision::no ? kFails : kInconclusive;
}

std::string trace_text(const std::vector<TraceEntry>& trace) {
  std::ostringstream out;
  for (const auto& e : trace) {
    out << std::string(2 * static_cast<std::size_t>(e.depth), ' ') << e.clause << " " << e.subject << " : "
        << (e.holds ? "holds" : "fails") << "\n";
  }
  return out.str();
}

Report cmd_eval(const Config& c) {
  const Base base = consistent_base(c);
  const Sequent s = required_sequent(c);
  Report r;
  if (c.semantics == "alpha") {
    const AlphaResult a = c.strict ? models_alpha_strict(base, s, std::nullopt, check_options(c))
                                   : models_alpha(base, s, check_options(c));
    r.code = verdict_code(a.result.verdict);
    r.json = to_json(a);
    r.text = to_string(s) + " on " + base.text() + " (alpha): " + std::string(to_string(a.result.verdict)) + "\n" +
             a.result.reason + "\n";
    if (a.witness) r.text += "witness: " + to_text(a.witness->structure) + "\n";
  } else {
    const auto kind = parse_semantics_kind(c.semantics);
    if (!kind) throw UsageError("unknown semantics '" + c.semantics + "'");
    EvalOptions eo;
    eo.derive.explosion = c.explosion;
    const ModelsResult m = models(*kind, base, s, eo);
    r.code = decision_code(m.decision);
    r.json = to_json(m);
    r.json["sequent"] = to_string(s);
    r.json["base"] = base.text();
    r.json["semantics"] = to_string(*kind);
    const char* word = m.decision == Decision::yes ? "holds" : m.decision == Decision::no ? "fails" : "inconclusive";
    r.text = to_string(s) + " on " + base.text() + " (" + std::string(to_string(*kind)) + "): " + word + "\n" +
             trace_text(m.trace);
  }
  return r;
}

Report cmd_check_valid(const Config& c) {
  const Base base = consistent_base(c);
  Report r;
  CheckOptions o = check_options(c);
  if (c.arg_path.empty()) {
    const Sequent s = required_sequent(c);
    const AlphaResult a = c.strict ? models_alpha_strict(base, s, std::nullopt, o) : models_alpha(base, s, o);
    r.code = verdict_code(a.result.verdict);
    r.json = to_json(a);
    r.text = std::string(to_string(a.result.verdict)) + ": " + a.result.reason + "\n";
    if (a.witness) r.text += pretty_print(a.witness->structure);
    return r;
  }
  const Argument arg{load_argument_file(c.arg_path), reductions_by_names(c.reductions)};
  ValidityResult v;
  if (c.strict && !c.sequent.empty()) {
    v = models_alpha_strict(base, parse_sequent(c.sequent), arg, o).result;
  } else {
    ValidityChecker checker(base, o);
    v = checker.check(arg);
  }
  r.code = verdict_code(v.verdict);
  r.json = {{"verdict", to_string(v.verdict)},
            {"reason", v.reason},
            {"evidence", v.evidence},
            {"argument", to_json(arg)},
            {"base", base.text()}};
  r.text = std::string(to_string(v.verdict)) + ": " + v.reason + "\n" + pretty_print(arg.structure);
  return r;
}

Report cmd_reduce(const Config& c) {
  if (c.arg_path.empty()) throw UsageError("--arg is required");
  const ArgumentStructure d = load_argument_file(c.arg_path);
  const ReductionSet j = reductions_by_names(c.reductions);
  Report r;
  if (c.target_path.empty()) {
    const auto reducts = reduce_step(d, j);
    r.code = reducts.empty() ? kFails : kHolds;
    r.json = {{"argument", to_text(d)}, {"reducts", nlohmann::json::array()}};
    r.text = std::to_string(reducts.size()) + " one-step reducts\n";
    for (const auto& x : reducts) {
      r.json["reducts"].push_back(
          {{"position", path_text(x.position)}, {"reduction", x.reduction}, {"result", to_text(x.result)}});
      r.text += path_text(x.position) + " " + x.reduction + ": " + to_text(x.result) + "\n";
    }
    return r;
  }
  const ArgumentStructure target = load_argument_file(c.target_path);
  const ReduceOutcome out = reduces_to(d, target, j, c.budget);
  r.code = decision_code(out.decision);
  r.json = {{"decision", to_string(out.decision)},
            {"path", to_json(out.path)},
            {"steps", out.steps},
            {"source", to_text(d)},
            {"target", to_text(target)}};
  const char* word = out.decision == Decision::yes ? "YES" : out.decision == Decision::no ? "NO" : "INCONCLUSIVE";
  r.text = std::string(word) + " with " + std::to_string(out.path.size()) + "-step path\n";
  for (const auto& s : out.path) r.text += "  " + s.position + " " + s.reduction + " " + s.before + " -> " + s.after + "\n";
  return r;
}

Report cmd_search(const Config& c) {
  const Sequent s = required_sequent(c);
  const auto kind = parse_semantics_kind(c.semantics);
  if (!kind) throw UsageError("search supports the standard and sandqvist semantics");
  const SearchResult res = search_counterexample(*kind, s, bounds_of(c));
  Report r;
  r.json = to_json(res);
  r.json["sequent"] = to_string(s);
  r.json["bounds"] = c.bounds;
  r.json["semantics"] = to_string(*kind);
  if (res.counterexample) {
    r.code = kFails;
    r.text = "counterexample: " + res.counterexample->text() + "\n";
  } else {
    r.code = res.inconclusive ? kInconclusive : kHolds;
    r.text = "none found within bounds " + c.bounds + " (" + std::to_string(res.bases_checked) + " bases)\n";
  }
  return r;
}

Report cmd_suite(const Config& c) {
  const PackReport pack = run_pack(bounds_of(c), c.seed, check_options(c));
  Report r;
  r.code = pack.all_passed() ? kHolds : kFails;
  r.json = to_json(pack);
  for (const auto& item : pack.items) r.text += std::string(item.passed ? "PASS " : "FAIL ") + item.name + "\n";
  return r;
}

Report cmd_derive(const Config& c) {
  if (c.atom.empty()) throw UsageError("--atom is required");
  const Base base = load_base(c);
  DeriveOptions o;
  o.explosion = c.explosion;
  const DeriveResult d = derive(base, {}, c.atom, o);
  Report r;
  r.code = decision_code(d.decision);
  r.json = {{"atom", c.atom}, {"base", base.text()}, {"decision", to_string(d.decision)}};
  r.json["derivation"] = d.derivation ? to_json(*d.derivation) : nlohmann::json(nullptr);
  r.text = c.atom + " in " + base.text() + ": " + std::string(to_string(d.decision)) + "\n";
  if (d.derivation) r.text += pretty_print(derivation_to_structure(*d.derivation));
  return r;
}

Report cmd_il(const Config& c) {
  const Sequent s = required_sequent(c);
  const Decision d = il_derives(s.premises, s.conclusion);
  return {decision_code(d), to_string(s) + " in IL: " + std::string(to_string(d)) + "\n",
          {{"sequent", to_string(s)}, {"il_derives", to_string(d)}}};
}

void emit(const Config& c, const Report& r) {
  const std::string body = c.format == "json" ? r.json.dump(2) + "\n" : r.text;
  if (c.output.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + c.output + "'");
  out << body;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ptswb: base-extension and reducibility semantics workbench"};
  app.require_subcommand(1);
  Config c;

  const char* env_budget = std::getenv("PTSWB_BUDGET");
  if (env_budget) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(env_budget, &used);
      if (used != std::string(env_budget).size() || v <= 0) throw std::invalid_argument("budget");
      c.budget = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      std::cerr << "PTSWB_BUDGET must be a positive integer\n";
      return kUsage;
    }
  }

  auto common = [&](CLI::App* sub) {
    sub->add_option("--output,-o", c.output, "write the report to a file");
    sub->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--budget", c.budget, "reduction budget (default from PTSWB_BUDGET or 10000)")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--explosion", c.explosion, "allow ex falso on atomic derivations");
  };

  auto* eval = app.add_subcommand("eval", "evaluate a sequent on a base");
  eval->add_option("--base", c.base_path, "base file")->check(CLI::ExistingFile);
  eval->add_option("--sequent", c.sequent, "sequent, e.g. \"p |- q\"");
  eval->add_option("--semantics", c.semantics, "standard, sandqvist or alpha")
      ->check(CLI::IsMember({"standard", "sandqvist", "alpha"}));
  eval->add_flag("--strict", c.strict, "strict reading for alpha");
  common(eval);

  auto* check = app.add_subcommand("check-valid", "check an argument, or a sequent via its witness");
  check->add_option("--base", c.base_path, "base file")->check(CLI::ExistingFile);
  check->add_option("--arg", c.arg_path, "argument file")->check(CLI::ExistingFile);
  check->add_option("--sequent", c.sequent, "sequent to witness");
  check->add_option("--reductions", c.reductions, "std, none or comma-separated names");
  check->add_flag("--strict", c.strict, "refuse pointer reductions");
  common(check);

  auto* reduce = app.add_subcommand("reduce", "one-step reducts, or reachability of a target");
  reduce->add_option("--arg", c.arg_path, "argument file")->check(CLI::ExistingFile);
  reduce->add_option("--target", c.target_path, "target argument file")->check(CLI::ExistingFile);
  reduce->add_option("--reductions", c.reductions, "std, none or comma-separated names");
  common(reduce);

  auto* search = app.add_subcommand("search", "smallest counterexample base within bounds");
  search->add_option("--sequent", c.sequent, "sequent");
  search->add_option("--semantics", c.semantics, "standard or sandqvist")
      ->check(CLI::IsMember({"standard", "sandqvist"}));
  search->add_option("--bounds", c.bounds, "atoms,rules,level");
  common(search);

  auto* suite = app.add_subcommand("suite", "run the experiment pack");
  suite->add_option("--bounds", c.bounds, "atoms,rules,level for the searches");
  suite->add_option("--seed", c.seed, "seed for sampled suites");
  common(suite);

  auto* derive_cmd = app.add_subcommand("derive", "derivability of an atom in a base");
  derive_cmd->add_option("--base", c.base_path, "base file")->check(CLI::ExistingFile);
  derive_cmd->add_option("--atom", c.atom, "goal atom");
  common(derive_cmd);

  auto* il = app.add_subcommand("il", "intuitionistic derivability");
  il->add_option("--sequent", c.sequent, "sequent");
  common(il);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    Report r;
    if (eval->parsed()) r = cmd_eval(c);
    else if (check->parsed()) r = cmd_check_valid(c);
    else if (reduce->parsed()) r = cmd_reduce(c);
    else if (search->parsed()) r = cmd_search(c);
    else if (suite->parsed()) r = cmd_suite(c);
    else if (derive_cmd->parsed()) r = cmd_derive(c);
    else r = cmd_il(c);
    emit(c, r);
    return r.code;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
