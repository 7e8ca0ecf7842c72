#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pts/atomic_system.hpp"
#include "pts/formula.hpp"
#include "pts/sequent.hpp"

namespace pts {

enum class SemanticsKind { standard, sandqvist };

std::string_view to_string(SemanticsKind kind);
std::optional<SemanticsKind> parse_semantics_kind(std::string_view text);

struct TraceEntry {
  int depth = 0;
  std::string clause;   // atom, bot, and, or, or-elim, imp, premises
  std::string subject;  // formula or sequent text
  bool holds = false;
};

nlohmann::json to_json(const TraceEntry& e);

struct EvalOptions {
  DeriveOptions derive;
  std::size_t max_steps = 1u << 22;
  bool record_trace = false;
};

/// Evaluates consequence on one fixed base.
///
/// Closed formulas are evaluated once and memoized. The disjunction clause of
/// the Sandqvist kind quantifies over atoms; that quantifier ranges over the
/// atoms of the base, the atoms of every formula evaluated so far, absurdity
/// and one fresh atom standing for all others.
class Evaluator {
 public:
  Evaluator(SemanticsKind kind, Base base, EvalOptions options = {});

  SemanticsKind kind() const { return kind_; }
  const Base& base() const { return base_; }

  /// ⊨_B A for closed A. Throws ResourceLimitExceeded.
  bool holds(const Formula& a);
  /// Γ ⊨_B A. Throws ResourceLimitExceeded.
  bool models(const Sequent& s);
  Decision decide(const Sequent& s);

  bool atom_derivable(const std::string& atom);
  Deriver& deriver() { return *deriver_; }

  /// Atoms the disjunction clause quantifies over (Sandqvist kind only).
  std::vector<std::string> atom_universe() const;
  const std::string& fresh_atom() const { return fresh_; }

  const std::vector<TraceEntry>& trace() const { return trace_; }
  void clear_trace() { trace_.clear(); }
  std::size_t steps() const { return steps_; }

 private:
  void admit_atoms(const AtomSet& atoms);
  bool eval(const Formula& a, int depth);
  void note(int depth, std::string clause, const std::string& subject, bool holds);

  SemanticsKind kind_;
  Base base_;
  EvalOptions options_;
  std::unique_ptr<Deriver> deriver_;
  AtomSet universe_;
  std::string fresh_;
  std::unordered_map<std::string, bool> memo_;
  std::vector<TraceEntry> trace_;
  std::size_t steps_ = 0;
};

struct ModelsResult {
  Decision decision = Decision::no;
  std::vector<TraceEntry> trace;
  std::vector<std::string> assumptions;
  std::string error;
};

/// One-shot evaluation with trace. Inconsistent bases raise std::invalid_argument.
ModelsResult models(SemanticsKind kind, const Base& base, const Sequent& s, EvalOptions options = {});
nlohmann::json to_json(const ModelsResult& r);

struct SearchBounds {
  int max_atoms = 3;
  int max_rules = 4;
  int max_level = 2;
};

std::optional<SearchBounds> parse_bounds(std::string_view text);  // "a,r,l"

/// Visits consistent bases in increasing (atom count, rule count, maximal
/// level). Atom count k uses the first k names of `vocabulary`; every base
/// at count k > 0 mentions the k-th name, so each base is visited once.
/// The visitor returns false to stop. Returns the number of bases visited.
struct BaseEnumerationStats {
  std::size_t visited = 0;
  std::size_t skipped_inconsistent = 0;
  std::size_t undecided_consistency = 0;
  bool stopped = false;
};
BaseEnumerationStats for_each_base(const std::vector<std::string>& vocabulary, const SearchBounds& bounds,
                                   const std::function<bool(const Base&)>& visit,
                                   DeriveOptions options = {});

/// Vocabulary for a search about `s`: its atoms in order, then fresh names.
std::vector<std::string> search_vocabulary(const Sequent& s, int max_atoms);

struct SearchResult {
  std::optional<Base> counterexample;
  std::size_t bases_checked = 0;
  std::size_t skipped_inconsistent = 0;
  std::size_t inconclusive = 0;
};

/// Smallest base within bounds on which the sequent fails. Finding none is
/// not a validity claim.
SearchResult search_counterexample(SemanticsKind kind, const Sequent& s, const SearchBounds& bounds,
                                   EvalOptions options = {});
nlohmann::json to_json(const SearchResult& r);

struct MonotoneResult {
  Decision decision = Decision::yes;
  std::optional<Base> refuting_extension;
  std::size_t extensions_checked = 0;
};

/// Γ ⊨ A on every consistent B' with B ⊆ B' ⊆ B ∪ universe.
MonotoneResult models_monotone_bounded(SemanticsKind kind, const Base& base, const Sequent& s,
                                       const std::vector<AtomicRule>& universe, EvalOptions options = {});

enum class ExportVerdict { confirmed_failure, no_counterexample_in_bounds };
std::string_view to_string(ExportVerdict v);

struct ExportResult {
  ExportVerdict verdict = ExportVerdict::no_counterexample_in_bounds;
  Decision left = Decision::no;  // Γ ⊨ A on B extended by the assumed rules
  Sequent translated;            // Γ, 𝔠*, B* |- A
  SearchResult right;            // counterexample search for the translated sequent
};

ExportResult export_principle_holds(SemanticsKind kind, const Base& base, const Sequent& s,
                                    const std::vector<AtomicRule>& assumed, const SearchBounds& bounds,
                                    EvalOptions options = {});
nlohmann::json to_json(const ExportResult& r);

struct CompletenessWitness {
  std::string kind;
  Sequent sequent;        // p |- q
  std::string base_text;  // {}
  Decision models = Decision::no;
  Decision il = Decision::no;
  bool refutes_completeness() const { return models == Decision::yes && il == Decision::no; }
};

CompletenessWitness base_completeness_witness(SemanticsKind kind);
/// Same witness under the extension-quantified reading restricted to `universe`.
CompletenessWitness base_completeness_witness_monotone(SemanticsKind kind,
                                                       const std::vector<AtomicRule>& universe);
nlohmann::json to_json(const CompletenessWitness& w);

}  // namespace pts
