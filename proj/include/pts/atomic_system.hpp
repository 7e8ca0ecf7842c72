#pragma once

#include <cstddef>
#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pts/formula.hpp"

namespace pts {

/// Thrown when a search exceeds its state cap. Distinct from a negative answer.
class ResourceLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A higher-level atomic rule. Premise i is a pair (discharged rules, atom):
/// the atom must be derived while the discharged rules are temporarily
/// available. A rule without premises is an axiom and stands for its atom.
///
/// Premises and discharged sets are sets: they are stored sorted and
/// duplicate-free, so equality ignores the order they were written in.
/// Absurdity is the atom "bot".
class AtomicRule {
 public:
  struct Premise {
    std::vector<AtomicRule> discharged;
    std::string conclusion;
  };

  explicit AtomicRule(std::string axiom);
  AtomicRule(std::vector<Premise> premises, std::string conclusion);

  bool is_axiom() const;
  const std::string& conclusion() const;
  const std::vector<Premise>& premises() const;

  /// 0 for axioms; otherwise 1 + max over premises of (0 for an empty
  /// discharge set, else 1 + the highest discharged level).
  int level() const;

  /// Canonical text, e.g. `p`, `(p => q)`, `([p => q] => r)`.
  const std::string& text() const;
  std::size_t hash() const;

  friend bool operator==(const AtomicRule& a, const AtomicRule& b);
  friend std::strong_ordering operator<=>(const AtomicRule& a, const AtomicRule& b);

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

/// Finite set of atomic rules. Consistency is a property checked with
/// check_consistency(); the constructor itself accepts any rule set so that
/// enumerators can discard inconsistent candidates.
class Base {
 public:
  Base() = default;
  explicit Base(std::vector<AtomicRule> rules, std::string name = "");

  const std::vector<AtomicRule>& rules() const { return rules_; }
  const std::string& name() const { return name_; }
  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }
  bool contains(const AtomicRule& r) const;
  int level() const;
  /// Named atoms occurring anywhere in the rules (absurdity excluded).
  AtomSet atoms() const;

  Base extended(const std::vector<AtomicRule>& more) const;

  /// `{p, (p => q)}`
  std::string text() const;

  friend bool operator==(const Base& a, const Base& b) { return a.rules_ == b.rules_; }
  friend auto operator<=>(const Base& a, const Base& b) { return a.rules_ <=> b.rules_; }

 private:
  std::vector<AtomicRule> rules_;
  std::string name_;
};

enum class Decision { yes, no, resource_limit };

std::string_view to_string(Decision d);

/// Derivation tree. `rule` is empty only for an explosion step (from bot to
/// anything), which is allowed only when DeriveOptions::explosion is set.
struct DerivationNode {
  std::string conclusion;
  std::optional<AtomicRule> rule;
  std::vector<DerivationNode> children;

  std::size_t height() const;
};

struct DeriveOptions {
  bool explosion = false;
  std::size_t max_states = 1u << 20;
};

struct DeriveResult {
  Decision decision = Decision::no;
  std::optional<DerivationNode> derivation;
};

/// Memoized derivability for one base plus assumed rules.
///
/// For a set S of available rules the derivable atoms are the least fixed
/// point of "some rule of S concludes a and each premise atom is derivable
/// from S extended by that premise's discharged rules". Extensions only add
/// sub-rules of the input, so there are finitely many sets and the
/// recursion terminates; the state cap is only a guard.
class Deriver {
 public:
  Deriver(const Base& base, std::vector<AtomicRule> assumed = {}, DeriveOptions options = {});
  ~Deriver();
  Deriver(const Deriver&) = delete;
  Deriver& operator=(const Deriver&) = delete;

  DeriveResult derive(const std::string& goal);
  bool derivable(const std::string& goal);  // throws ResourceLimitExceeded
  /// Atoms derivable from the root rule set (absurdity included if derivable).
  AtomSet derivable_atoms();
  std::size_t states_explored() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

DeriveResult derive(const Base& base, const std::vector<AtomicRule>& assumed,
                    const std::string& goal, DeriveOptions options = {});

/// yes = consistent (bot not derivable).
Decision check_consistency(const Base& base, DeriveOptions options = {});

/// Independent checker for derivation trees: every node must apply a rule
/// available at that point (base, assumed, or discharged by an ancestor
/// premise). Returns an error description, or nothing when the tree replays.
std::optional<std::string> replay_derivation(const Base& base,
                                             const std::vector<AtomicRule>& assumed,
                                             const DerivationNode& tree, bool explosion = false);

/// Disjunction-free translation: an axiom maps to its atom; a rule maps to
/// (conjunction of its premises' translations) -> conclusion, where the
/// premise (C, a) is read as the rule "from C infer a".
Formula star_translate(const AtomicRule& rule);
std::vector<Formula> star_translate_base(const Base& base);

/// Formula for an atom name ("bot" maps to absurdity).
Formula atom_formula(const std::string& name);

/// Concrete syntax: `p` or `(P1, ..., Pn => a)`, where a premise is an atom
/// or `[R1, ..., Rm => a]` with the bracketed rules discharged.
AtomicRule parse_rule(std::string_view text);

/// Base file: one rule per line, optional trailing '.', '#' starts a comment.
Base parse_base(std::string_view text, std::string name = "");
Base load_base_file(const std::string& path);

nlohmann::json to_json(const AtomicRule& rule);
AtomicRule rule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Base& base);
Base base_from_json(const nlohmann::json& j);
nlohmann::json to_json(const DerivationNode& node);

/// Finite rule shapes over the given atoms, used by enumerators:
///   level 0: a
///   level 1: (a => c), (a, b => c)   with c outside the premises, c may be bot
///   level 2: ([a => b] => c)         a != b, c may be bot
///   level 3: ([(a => b) => c] => d)  a != b, d may be bot
/// Returned in increasing level, then text order.
std::vector<AtomicRule> enumerate_rules(const std::vector<std::string>& atoms, int max_level);

}  // namespace pts
