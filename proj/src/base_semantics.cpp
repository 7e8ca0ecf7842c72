#include "pts/base_semantics.hpp"

#include <algorithm>
#include <sstream>

#include "pts/il_prover.hpp"

namespace pts {

std::string_view to_string(SemanticsKind kind) {
  return kind == SemanticsKind::standard ? "standard" : "sandqvist";
}

std::optional<SemanticsKind> parse_semantics_kind(std::string_view text) {
  if (text == "standard") return SemanticsKind::standard;
  if (text == "sandqvist") return SemanticsKind::sandqvist;
  return std::nullopt;
}

nlohmann::json to_json(const TraceEntry& e) {
  return {{"depth", e.depth}, {"clause", e.clause}, {"subject", e.subject}, {"holds", e.holds}};
}

Evaluator::Evaluator(SemanticsKind kind, Base base, EvalOptions options)
    : kind_(kind), base_(std::move(base)), options_(options) {
  deriver_ = std::make_unique<Deriver>(base_, std::vector<AtomicRule>{}, options_.derive);
  admit_atoms(base_.atoms());
}

void Evaluator::admit_atoms(const AtomSet& atoms) {
  bool grew = false;
  for (const auto& a : atoms) grew |= universe_.insert(a).second;
  if (fresh_.empty() || universe_.count(fresh_)) {
    grew = true;
    for (int i = 0;; ++i) {
      fresh_ = i == 0 ? "_c" : "_c" + std::to_string(i);
      if (!universe_.count(fresh_)) break;
    }
  }
  // New atoms enlarge the disjunction quantifier; cached verdicts may change.
  if (grew && kind_ == SemanticsKind::sandqvist) memo_.clear();
}

std::vector<std::string> Evaluator::atom_universe() const {
  std::vector<std::string> out(universe_.begin(), universe_.end());
  out.push_back(fresh_);
  out.emplace_back(kBottomName);
  return out;
}

bool Evaluator::atom_derivable(const std::string& atom) { return deriver_->derivable(atom); }

void Evaluator::note(int depth, std::string clause, const std::string& subject, bool holds) {
  if (options_.record_trace) trace_.push_back({depth, std::move(clause), subject, holds});
}

bool Evaluator::holds(const Formula& a) {
  admit_atoms(atoms_of(a));
  return eval(a, 0);
}

bool Evaluator::eval(const Formula& a, int depth) {
  if (auto it = memo_.find(a.text()); it != memo_.end()) return it->second;
  if (++steps_ > options_.max_steps) {
    throw ResourceLimitExceeded("evaluation exceeded " + std::to_string(options_.max_steps) + " steps");
  }
  bool result = false;
  switch (a.kind()) {
    case Connective::atom:
      result = deriver_->derivable(a.name());
      note(depth, "atom", a.text(), result);
      break;
    case Connective::bottom:
      result = deriver_->derivable(std::string(kBottomName));
      note(depth, "bot", a.text(), result);
      break;
    case Connective::conj:
      result = eval(a.left(), depth + 1) && eval(a.right(), depth + 1);
      note(depth, "and", a.text(), result);
      break;
    case Connective::impl:
      result = !eval(a.left(), depth + 1) || eval(a.right(), depth + 1);
      note(depth, "imp", a.text(), result);
      break;
    case Connective::disj:
      if (kind_ == SemanticsKind::standard) {
        result = eval(a.left(), depth + 1) || eval(a.right(), depth + 1);
        note(depth, "or", a.text(), result);
      } else {
        // For every atom C: A ⊨ C and B ⊨ C together imply ⊨ C.
        const bool l = eval(a.left(), depth + 1);
        const bool r = eval(a.right(), depth + 1);
        result = true;
        for (const auto& c : atom_universe()) {
          const bool c_holds = deriver_->derivable(c);
          const bool hyp = (!l || c_holds) && (!r || c_holds);
          if (hyp && !c_holds) {
            result = false;
            note(depth + 1, "or-elim", a.text() + " at " + c, false);
            break;
          }
        }
        note(depth, "or-elim", a.text(), result);
      }
      break;
  }
  memo_.emplace(a.text(), result);
  return result;
}

bool Evaluator::models(const Sequent& s) {
  admit_atoms(s.atoms());
  if (s.closed()) return eval(s.conclusion, 0);
  bool all = true;
  for (const auto& g : s.premises) {
    if (!eval(g, 1)) {
      all = false;
      break;
    }
  }
  const bool result = !all || eval(s.conclusion, 1);
  note(0, "premises", to_string(s), result);
  return result;
}

Decision Evaluator::decide(const Sequent& s) {
  try {
    return models(s) ? Decision::yes : Decision::no;
  } catch (const ResourceLimitExceeded&) {
    return Decision::resource_limit;
  }
}

ModelsResult models(SemanticsKind kind, const Base& base, const Sequent& s, EvalOptions options) {
  const Decision consistent = check_consistency(base, options.derive);
  if (consistent == Decision::no) throw std::invalid_argument("base " + base.text() + " is inconsistent");
  ModelsResult out;
  if (consistent == Decision::resource_limit) {
    out.decision = Decision::resource_limit;
    out.error = "consistency check exceeded the derivation state cap";
    return out;
  }
  options.record_trace = true;
  Evaluator ev(kind, base, options);
  try {
    out.decision = ev.models(s) ? Decision::yes : Decision::no;
  } catch (const ResourceLimitExceeded& e) {
    out.decision = Decision::resource_limit;
    out.error = e.what();
  }
  out.trace = ev.trace();
  if (kind == SemanticsKind::sandqvist) {
    std::string atoms;
    for (const auto& a : ev.atom_universe()) atoms += (atoms.empty() ? "" : ", ") + a;
    out.assumptions.push_back("disjunction clause quantifies over the atoms {" + atoms + "} where " +
                              ev.fresh_atom() + " stands for every atom foreign to the problem");
    out.assumptions.push_back("disjunction clause reads: for all atoms C, A |= C and B |= C imply |= C");
  }
  return out;
}

nlohmann::json to_json(const ModelsResult& r) {
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& e : r.trace) trace.push_back(to_json(e));
  nlohmann::json out = {{"decision", to_string(r.decision)}, {"trace", trace}, {"assumptions", r.assumptions}};
  if (!r.error.empty()) out["error"] = r.error;
  return out;
}

// ---------------------------------------------------------------------------

std::optional<SearchBounds> parse_bounds(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  SearchBounds b;
  if (!(in >> b.max_atoms >> b.max_rules >> b.max_level)) return std::nullopt;
  std::string rest;
  if (in >> rest) return std::nullopt;
  if (b.max_atoms < 0 || b.max_rules < 0 || b.max_level < 0) return std::nullopt;
  return b;
}

std::vector<std::string> search_vocabulary(const Sequent& s, int max_atoms) {
  const AtomSet atoms = s.atoms();
  std::vector<std::string> out(atoms.begin(), atoms.end());
  for (int i = 1; static_cast<int>(out.size()) < max_atoms; ++i) {
    std::string name = "a" + std::to_string(i);
    if (!atoms.count(name)) out.push_back(name);
  }
  return out;
}

namespace {

bool mentions(const AtomicRule& r, const std::string& atom) {
  if (r.conclusion() == atom) return true;
  for (const auto& p : r.premises()) {
    if (p.conclusion == atom) return true;
    for (const auto& c : p.discharged) {
      if (mentions(c, atom)) return true;
    }
  }
  return false;
}

}  // namespace

BaseEnumerationStats for_each_base(const std::vector<std::string>& vocabulary, const SearchBounds& bounds,
                                   const std::function<bool(const Base&)>& visit,
                                   DeriveOptions options) {
  BaseEnumerationStats stats;
  const int max_atoms = std::min<int>(bounds.max_atoms, static_cast<int>(vocabulary.size()));
  auto offer = [&](std::vector<AtomicRule> rules) {
    Base b(std::move(rules));
    const Decision c = check_consistency(b, options);
    if (c == Decision::no) {
      ++stats.skipped_inconsistent;
      return true;
    }
    if (c == Decision::resource_limit) {
      ++stats.undecided_consistency;
      return true;
    }
    ++stats.visited;
    return visit(b);
  };

  if (!offer({})) {
    stats.stopped = true;
    return stats;
  }
  for (int k = 1; k <= max_atoms; ++k) {
    const std::vector<std::string> atoms(vocabulary.begin(), vocabulary.begin() + k);
    const std::vector<AtomicRule> all = enumerate_rules(atoms, bounds.max_level);
    for (int r = 1; r <= bounds.max_rules; ++r) {
      for (int level = 0; level <= bounds.max_level; ++level) {
        std::vector<const AtomicRule*> pool;
        std::vector<char> new_atom;
        for (const auto& rule : all) {
          if (rule.level() <= level) {
            pool.push_back(&rule);
            new_atom.push_back(mentions(rule, atoms.back()));
          }
        }
        const int n = static_cast<int>(pool.size());
        if (n < r) continue;
        std::vector<int> idx(r);
        for (int i = 0; i < r; ++i) idx[i] = i;
        while (true) {
          bool has_level = false, has_atom = false;
          for (int i : idx) {
            has_level |= pool[i]->level() == level;
            has_atom |= new_atom[i] != 0;
          }
          if (has_level && has_atom) {
            std::vector<AtomicRule> rules;
            rules.reserve(r);
            for (int i : idx) rules.push_back(*pool[i]);
            if (!offer(std::move(rules))) {
              stats.stopped = true;
              return stats;
            }
          }
          int i = r - 1;
          while (i >= 0 && idx[i] == n - r + i) --i;
          if (i < 0) break;
          ++idx[i];
          for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        }
      }
    }
  }
  return stats;
}

SearchResult search_counterexample(SemanticsKind kind, const Sequent& s, const SearchBounds& bounds,
                                   EvalOptions options) {
  SearchResult out;
  options.record_trace = false;
  const auto stats = for_each_base(
      search_vocabulary(s, bounds.max_atoms), bounds,
      [&](const Base& b) {
        ++out.bases_checked;
        Evaluator ev(kind, b, options);
        const Decision d = ev.decide(s);
        if (d == Decision::resource_limit) ++out.inconclusive;
        if (d == Decision::no) {
          out.counterexample = b;
          return false;
        }
        return true;
      },
      options.derive);
  out.skipped_inconsistent = stats.skipped_inconsistent;
  out.inconclusive += stats.undecided_consistency;
  return out;
}

nlohmann::json to_json(const SearchResult& r) {
  nlohmann::json out = {{"bases_checked", r.bases_checked},
                        {"skipped_inconsistent", r.skipped_inconsistent},
                        {"inconclusive", r.inconclusive},
                        {"found", r.counterexample.has_value()}};
  out["counterexample"] = r.counterexample ? to_json(*r.counterexample) : nlohmann::json(nullptr);
  return out;
}

// ---------------------------------------------------------------------------

MonotoneResult models_monotone_bounded(SemanticsKind kind, const Base& base, const Sequent& s,
                                       const std::vector<AtomicRule>& universe, EvalOptions options) {
  std::vector<AtomicRule> extra;
  for (const auto& r : universe) {
    if (!base.contains(r)) extra.push_back(r);
  }
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());
  if (extra.size() > 20) throw std::invalid_argument("extension universe too large to enumerate");

  MonotoneResult out;
  options.record_trace = false;
  const std::size_t n = std::size_t{1} << extra.size();
  for (std::size_t mask = 0; mask < n; ++mask) {
    std::vector<AtomicRule> add;
    for (std::size_t i = 0; i < extra.size(); ++i) {
      if (mask & (std::size_t{1} << i)) add.push_back(extra[i]);
    }
    const Base ext = base.extended(add);
    const Decision c = check_consistency(ext, options.derive);
    if (c == Decision::no) continue;
    if (c == Decision::resource_limit) {
      out.decision = Decision::resource_limit;
      continue;
    }
    ++out.extensions_checked;
    Evaluator ev(kind, ext, options);
    const Decision d = ev.decide(s);
    if (d == Decision::no) {
      out.decision = Decision::no;
      out.refuting_extension = ext;
      return out;
    }
    if (d == Decision::resource_limit) out.decision = Decision::resource_limit;
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string_view to_string(ExportVerdict v) {
  return v == ExportVerdict::confirmed_failure ? "confirmed-failure" : "no-counterexample-in-bounds";
}

ExportResult export_principle_holds(SemanticsKind kind, const Base& base, const Sequent& s,
                                    const std::vector<AtomicRule>& assumed, const SearchBounds& bounds,
                                    EvalOptions options) {
  ExportResult out;
  options.record_trace = false;
  Evaluator left(kind, base.extended(assumed), options);
  out.left = left.decide(s);

  std::vector<Formula> gamma = s.premises;
  for (const auto& r : assumed) gamma.push_back(star_translate(r));
  for (const auto& f : star_translate_base(base)) gamma.push_back(f);
  out.translated = Sequent(std::move(gamma), s.conclusion);
  out.right = search_counterexample(kind, out.translated, bounds, options);

  // The two sides can only be seen to differ when the left holds and the
  // right is refuted; the converse would need a validity proof.
  if (out.left == Decision::yes && out.right.counterexample) {
    out.verdict = ExportVerdict::confirmed_failure;
  }
  return out;
}

nlohmann::json to_json(const ExportResult& r) {
  return {{"verdict", to_string(r.verdict)},
          {"left", to_string(r.left)},
          {"translated", to_json(r.translated)},
          {"right_search", to_json(r.right)}};
}

// ---------------------------------------------------------------------------

namespace {

Sequent p_entails_q() { return Sequent({Formula::atom("p")}, Formula::atom("q")); }

}  // namespace

CompletenessWitness base_completeness_witness(SemanticsKind kind) {
  CompletenessWitness w;
  w.kind = std::string(to_string(kind));
  w.sequent = p_entails_q();
  const Base empty;
  w.base_text = empty.text();
  w.models = models(kind, empty, w.sequent).decision;
  w.il = il_derives(w.sequent.premises, w.sequent.conclusion);
  return w;
}

CompletenessWitness base_completeness_witness_monotone(SemanticsKind kind,
                                                       const std::vector<AtomicRule>& universe) {
  CompletenessWitness w;
  w.kind = std::string(to_string(kind)) + "-monotone-bounded";
  w.sequent = p_entails_q();
  const Base empty;
  w.base_text = empty.text();
  w.models = models_monotone_bounded(kind, empty, w.sequent, universe).decision;
  w.il = il_derives(w.sequent.premises, w.sequent.conclusion);
  return w;
}

nlohmann::json to_json(const CompletenessWitness& w) {
  return {{"kind", w.kind},
          {"sequent", to_string(w.sequent)},
          {"base", w.base_text},
          {"models", to_string(w.models)},
          {"il_derives", to_string(w.il)},
          {"refutes_base_completeness", w.refutes_completeness()}};
}

}  // namespace pts
