#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pts/arguments.hpp"
#include "pts/base_semantics.hpp"
#include "pts/reductions.hpp"

namespace pts {

/// Argument structure together with its justifications.
struct Argument {
  ArgumentStructure structure;
  ReductionSet justifications;
};

nlohmann::json to_json(const Argument& a);

enum class Verdict { valid, invalid, inconclusive };
std::string_view to_string(Verdict v);

struct ValidityResult {
  Verdict verdict = Verdict::inconclusive;
  std::string reason;
  nlohmann::json evidence;  // reduction path, sub-verdicts, suite description
};

/// One closure of an open argument: closed structures for its assumptions
/// and the justifications added for them (the set J+ is J united with this).
struct SuiteMember {
  Closure sigma;
  ReductionSet extension;
};

enum class CheckMode {
  bridge,  // open sub-arguments are closed with synthesized witnesses
  strict,  // pointer reductions are refused and nothing is synthesized for -> or premises
};

struct CheckOptions {
  std::size_t budget = 10000;  // reduction applications per search
  CheckMode mode = CheckMode::bridge;
  /// Use constant reductions (one target for every closed instance) instead
  /// of exact pointers when synthesizing.
  bool constant_pointers = false;
  EvalOptions eval;
};

/// Validity of arguments on one base.
///
/// Every verdict on an open argument is relative to the closures it was
/// checked against: explicitly supplied suites for check_open, and for open
/// immediate sub-structures met while checking closed arguments the closures
/// produced by the closure provider. The default provider realizes the
/// correspondence with standard consequence: if an assumption fails under the
/// standard semantics it offers no closure, otherwise it offers the
/// synthesized witness of each assumption.
class ValidityChecker {
 public:
  using ClosureProvider =
      std::function<std::optional<std::vector<SuiteMember>>(const ArgumentStructure& open, ValidityChecker& self)>;

  ValidityChecker(Base base, CheckOptions options = {});
  void set_closure_provider(ClosureProvider provider) { provider_ = std::move(provider); }

  const Base& base() const { return base_; }
  const CheckOptions& options() const { return options_; }
  Evaluator& standard() { return standard_; }

  /// Closed arguments.
  ValidityResult check_closed(const Argument& arg);
  /// Open arguments against an explicit suite. VALID means valid relative to the suite.
  ValidityResult check_open(const Argument& arg, const std::vector<SuiteMember>& suite);
  /// Closed: check_closed. Open: check_open on the provider's closures.
  ValidityResult check(const Argument& arg);

  /// Witness for a sequent that holds under the standard semantics, or
  /// nothing when it does not (or, in strict mode, when the formula needs a
  /// pointer). Memoized per formula.
  std::optional<Argument> witness(const Sequent& s);
  std::optional<Argument> witness(const Formula& a);

  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct MemoEntry {
    Verdict verdict;
    std::string reason;
  };
  Verdict closed_verdict(const ArgumentStructure& d, const ReductionSet& j, std::string* reason, nlohmann::json* evidence);
  Verdict open_verdict(const ArgumentStructure& d, const ReductionSet& j, const std::vector<SuiteMember>& suite,
                       std::string* reason, nlohmann::json* evidence);
  Verdict canonical_subs(const ArgumentStructure& d, const ReductionSet& j, nlohmann::json* evidence);
  bool allowed(const ReductionSet& j) const;

  Base base_;
  CheckOptions options_;
  Evaluator standard_;
  ClosureProvider provider_;
  std::map<std::pair<std::string, std::uint64_t>, MemoEntry> memo_;
  std::map<std::pair<std::string, std::uint64_t>, bool> in_progress_;
  std::unordered_map<std::string, std::optional<Argument>> witnesses_;
};

/// The default closure provider described above.
ValidityChecker::ClosureProvider bridge_closures();

/// Builds a witness for Γ ⊨_B A following the standard clauses: derivations
/// for atoms, introductions for ∧ and ∨, and for → and nonempty Γ a one-step
/// structure justified by a pointer reduction to the witness of the
/// conclusion (or by nothing when an antecedent fails). Throws
/// std::invalid_argument when the sequent does not hold.
Argument synthesize_witness(const Base& base, const Sequent& s, CheckOptions options = {});

struct AlphaResult {
  ValidityResult result;
  Decision standard = Decision::no;
  std::optional<Argument> witness;
};

/// Γ ⊨^α_B A through the standard semantics: evaluate, synthesize a witness
/// on success and re-check it. The verdict is the re-check's verdict.
AlphaResult models_alpha(ValidityChecker& checker, const Sequent& s);
AlphaResult models_alpha(const Base& base, const Sequent& s, CheckOptions options = {});
/// Strict reading: checks a supplied certificate whose justifications must
/// all be schematic. Without a certificate, only sequents whose witness
/// needs no pointer are decided.
AlphaResult models_alpha_strict(const Base& base, const Sequent& s, const std::optional<Argument>& certificate,
                                CheckOptions options = {});
nlohmann::json to_json(const AlphaResult& r);

struct ComparisonRow {
  Sequent sequent;
  Decision sandqvist = Decision::no;
  Verdict alpha = Verdict::inconclusive;
};

enum class InversionStatus { vacuous, satisfied, refuted_on_sample };
std::string_view to_string(InversionStatus s);

struct ComparisonReport {
  std::string base_text;
  std::vector<ComparisonRow> rows;
  std::vector<Sequent> sandqvist_to_alpha;  // holds under both
  InversionStatus inversion = InversionStatus::vacuous;  // does α imply s on the sample?
  std::size_t inconclusive_cells = 0;
};

ComparisonReport compare_sandqvist_alpha(const Base& base, const std::vector<Sequent>& sequents,
                                         CheckOptions options = {});
nlohmann::json to_json(const ComparisonReport& r);

/// Closed argument structures for a formula up to the given height: the
/// derivation of each derivable atom, a zero-premise inference for every
/// atom (which is never valid), introductions over smaller ones, and the
/// synthesized witness when the formula holds. With `canonical_only` only
/// structures whose last inference is an introduction are kept.
std::vector<Argument> enumerate_closed_arguments(ValidityChecker& checker, const Formula& a, int depth,
                                                 bool canonical_only);

}  // namespace pts
