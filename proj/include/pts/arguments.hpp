#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pts/atomic_system.hpp"
#include "pts/formula.hpp"

namespace pts {

/// Discharge label, as in the bracket indices [A]^1.
using Label = int;

class ArgumentStructure;

/// Child edge. `binds` lists the labels discharged at the parent for the
/// nodes of this child's subtree.
struct Child;

/// Immutable argument structure: a finite rooted tree of formulas with a
/// discharge function given by labels.
///
/// Top nodes are axiomatic or not. A top node carrying a label is discharged
/// when some ancestor edge on its path binds that label; otherwise the label
/// is free. An internal node may carry a label too: it then stands for an
/// edge-set (the node and all its children, all atomic) discharged like a
/// top node. Structural equality is alpha-equivalence (see fingerprint()).
class ArgumentStructure {
 public:
  ArgumentStructure();  // assumption of absurdity

  static ArgumentStructure assumption(Formula a, std::optional<Label> label = std::nullopt);
  static ArgumentStructure axiom(Formula a, std::optional<Label> label = std::nullopt);
  static ArgumentStructure inference(Formula conclusion, std::vector<Child> children,
                                     std::string rule = "", std::optional<Label> label = std::nullopt,
                                     std::optional<AtomicRule> atomic_rule = std::nullopt);
  /// Inference without discharges.
  static ArgumentStructure step(Formula conclusion, std::vector<ArgumentStructure> premises,
                                std::string rule = "");

  const Formula& conclusion() const;
  bool is_top() const;
  bool axiomatic() const;
  std::optional<Label> label() const;
  const std::vector<Child>& children() const;
  const ArgumentStructure& child(std::size_t i) const;
  const std::vector<Label>& binds(std::size_t i) const;
  /// Display name of the inference ("andI", "step", ...). Never used for matching.
  const std::string& rule() const;
  const std::optional<AtomicRule>& atomic_rule() const;

  std::size_t size() const;
  std::size_t height() const;

  /// Labels of undischarged non-axiomatic top nodes' formulas (sorted, unique).
  std::vector<Formula> assumptions() const;
  bool closed() const;
  /// Every label used by a node but not bound inside this structure.
  std::set<Label> free_labels() const;
  std::set<Label> binder_labels() const;
  Label max_label() const;  // 0 when no labels occur

  /// Alpha-invariant description of the discharge structure and formulas.
  /// Rule names and atomic-rule hints are ignored.
  const std::string& fingerprint() const;
  std::uint64_t hash() const;
  std::string hash_hex() const;

  friend bool operator==(const ArgumentStructure& a, const ArgumentStructure& b);
  friend bool operator<(const ArgumentStructure& a, const ArgumentStructure& b) {
    return a.fingerprint() < b.fingerprint();
  }

 private:
  struct Node;
  explicit ArgumentStructure(std::shared_ptr<const Node> node);
  std::shared_ptr<const Node> node_;
};

struct Child {
  ArgumentStructure sub;
  std::vector<Label> binds;
};

struct Validation {
  std::vector<std::string> errors;
  std::vector<std::string> warnings;
  bool ok() const { return errors.empty(); }
};

/// Well-formedness: unique binder labels, free labels distinct from binder
/// labels, discharged axiomatic top nodes and edge-sets atomic and bound,
/// and no non-axiomatic top node discharged at an edge-set node or at the
/// target of an edge-set.
Validation validate(const ArgumentStructure& d);

// Positions ------------------------------------------------------------------

using Path = std::vector<std::size_t>;

std::string path_text(const Path& p);  // "0", "0.1", ...
std::optional<Path> parse_path(std::string_view text);
/// All node positions, outermost first and leftmost within a level.
std::vector<Path> positions(const ArgumentStructure& d);
const ArgumentStructure& subtree(const ArgumentStructure& d, const Path& p);
/// Labels bound by the edges on the way from the root to `p`.
std::set<Label> bound_above(const ArgumentStructure& d, const Path& p);

// Construction helpers -------------------------------------------------------

/// Renames labels; labels outside `mapping` are kept.
ArgumentStructure relabel(const ArgumentStructure& d, const std::map<Label, Label>& mapping);
/// Renames binder labels to fresh ones starting at `next` (advanced).
ArgumentStructure freshen_binders(const ArgumentStructure& d, Label& next);
/// Renames every label, bound or free, to fresh ones starting at `next`.
ArgumentStructure freshen_all(const ArgumentStructure& d, Label& next);

/// Replaces every top node carrying `label` (bound or free) by a freshened
/// copy of `with`, which must conclude the top node's formula.
ArgumentStructure graft_label(const ArgumentStructure& d, Label label, const ArgumentStructure& with);

/// D^σ: each undischarged non-axiomatic top node for A is replaced by a
/// freshened copy of σ(A). Throws std::invalid_argument when σ misses an
/// assumption of d or a structure does not conclude its formula.
using Closure = std::map<Formula, ArgumentStructure>;
ArgumentStructure instantiate(const ArgumentStructure& d, const Closure& sigma);

/// D[with/D*] for the sub-structure D* at `at`. The replacement's binders are
/// freshened; its free labels keep their names so that labels bound above the
/// hole capture them. Throws std::invalid_argument on a conclusion mismatch,
/// or when a discharged axiomatic node or edge-set of the replacement would
/// be left without a binder.
ArgumentStructure replace(const ArgumentStructure& d, const Path& at, const ArgumentStructure& with);

/// The i-th immediate sub-structure: the child subtree on its own. Nodes
/// discharged at the root become open assumptions there.
ArgumentStructure immediate_substructure(const ArgumentStructure& d, std::size_t i);

// Inference schemata (matched on shape, never on the rule name) ------------

enum class Schema { and_intro, or_intro, imp_intro, and_elim1, and_elim2, or_elim, imp_elim, weakening, or_lambda };

std::string_view to_string(Schema s);
std::optional<Schema> parse_schema(std::string_view text);

/// Does the last inference of d belong to the schema?
bool matches(Schema s, const ArgumentStructure& d);
std::vector<Schema> matching_schemata(const ArgumentStructure& d);
bool is_canonical(const ArgumentStructure& d);

/// Schema builders; they check the shape and throw std::invalid_argument.
ArgumentStructure and_intro(const ArgumentStructure& l, const ArgumentStructure& r);
ArgumentStructure or_intro(const ArgumentStructure& d, const Formula& disjunction);
/// →I discharging the top nodes labelled `label` (which must conclude a).
ArgumentStructure imp_intro(const Formula& a, Label label, const ArgumentStructure& d);
ArgumentStructure and_elim(int i, const ArgumentStructure& d);
ArgumentStructure or_elim(const ArgumentStructure& major, Label left_label, const ArgumentStructure& left,
                          Label right_label, const ArgumentStructure& right);
ArgumentStructure imp_elim(const ArgumentStructure& major, const ArgumentStructure& minor);
ArgumentStructure weakening(const ArgumentStructure& d, const Formula& extra);
ArgumentStructure or_lambda(const ArgumentStructure& d);

// Atomic derivations ---------------------------------------------------------

/// Argument structure of a derivation tree. Discharged rules get labels;
/// their uses become labelled axiomatic top nodes and labelled edge-sets.
ArgumentStructure derivation_to_structure(const DerivationNode& tree, Label first_label = 1);

/// Reads an argument structure as an atomic derivation in the base (the
/// DER_B test). Rules are matched against the base, or against the rules
/// discharged by an ancestor when the node carries a bound label. The result
/// is replayed with replay_derivation before it is returned.
std::optional<DerivationNode> structure_to_derivation(const ArgumentStructure& d, const Base& base,
                                                      bool explosion = false);

// Text, JSON, display ------------------------------------------------------

/// Term syntax, e.g. `impI({1} orI([p]_1) : p | q) : p -> p | q`.
///   [A] or [A]_n          assumption (optionally labelled)
///   <A> or <A>_n          axiomatic top node
///   name"hint"(children)_n : A
/// A child is optionally prefixed by `{n, m}` for the labels bound on it.
/// The `: A` annotation may be omitted when the name fixes the conclusion
/// (andI, andE1, andE2, orE, impE).
ArgumentStructure parse_argument(std::string_view text);
std::string to_text(const ArgumentStructure& d);
ArgumentStructure load_argument_file(const std::string& path);

nlohmann::json to_json(const ArgumentStructure& d);
ArgumentStructure argument_from_json(const nlohmann::json& j);

/// Natural-deduction layout: premises side by side above a rule line.
std::string pretty_print(const ArgumentStructure& d);

}  // namespace pts
