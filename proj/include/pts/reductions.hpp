#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pts/arguments.hpp"

namespace pts {

/// Partial rewriting function on argument structures.
class Reduction {
 public:
  virtual ~Reduction() = default;
  virtual const std::string& name() const = 0;
  virtual std::optional<ArgumentStructure> apply(const ArgumentStructure& d) const = 0;
  /// True for reductions given by a schema, which commute with instantiation
  /// by construction. Pointer reductions are not schematic.
  virtual bool schematic() const = 0;
  /// Fingerprint of the single structure this reduction is defined on, if any.
  virtual const std::string* exact_domain() const { return nullptr; }
  virtual nlohmann::json to_json() const;
};

using ReductionPtr = std::shared_ptr<const Reduction>;

/// ∧-detour: andE_i(andI(D1, D2)) to D_i.
ReductionPtr phi_and();
/// ∨-detour: orE(orI(D), D1, D2) to D_j with D grafted on the discharged nodes.
ReductionPtr phi_or();
/// →-detour: impE(impI(D_B), D_A) to D_B with D_A grafted on the discharged
/// nodes. Not displayed among the standard figures; included so closed
/// arguments for implications can be normalized.
ReductionPtr phi_imp();
/// Wk(impI(D)) : (A & C) -> B  to  impI(D with andE1([A & C]) on the discharged nodes).
ReductionPtr phi_wk();
/// orL(orI(D)) : A  to  D, when D concludes the left disjunct.
ReductionPtr phi_or_lambda();

/// Reduction defined exactly on the one-step structure with the given closed
/// premises concluding target's conclusion, sending it to target.
std::shared_ptr<const Reduction> pointer_reduction(const std::vector<ArgumentStructure>& inputs,
                                                   const ArgumentStructure& target);
/// Constant reduction: every one-step structure from closed premises for
/// `premises` (in order) to target's conclusion is sent to target.
std::shared_ptr<const Reduction> constant_reduction(const std::vector<Formula>& premises,
                                                    const ArgumentStructure& target);

/// Set of reductions ordered by name; extension is inclusion.
class ReductionSet {
 public:
  ReductionSet() = default;
  explicit ReductionSet(const std::vector<ReductionPtr>& rs);

  void insert(const ReductionPtr& r);
  void insert_all(const ReductionSet& other);
  ReductionSet united(const ReductionSet& other) const;
  bool contains(const std::string& name) const { return by_name_.count(name) > 0; }
  bool includes(const ReductionSet& other) const;
  std::size_t size() const { return by_name_.size(); }
  bool empty() const { return by_name_.empty(); }
  std::vector<std::string> names() const;
  std::vector<ReductionPtr> members() const;
  bool has_pointers() const { return !indexed_.empty() || has_unindexed_pointers_; }
  /// Stable 64-bit digest of the member names.
  std::uint64_t key() const { return key_; }

  /// Reductions of the set defined on d, in name order, with their results.
  std::vector<std::pair<ReductionPtr, ArgumentStructure>> apply_all(const ArgumentStructure& d) const;

  nlohmann::json to_json() const;

 private:
  void rekey();
  std::map<std::string, ReductionPtr> by_name_;
  std::vector<ReductionPtr> general_;
  std::unordered_map<std::string, std::vector<ReductionPtr>> indexed_;
  bool has_unindexed_pointers_ = false;
  std::uint64_t key_ = 0;
};

ReductionSet standard_reductions();
/// "std", "none", or comma-separated names among phi_and, phi_or, phi_imp,
/// phi_wk, phi_or_lambda. Throws std::invalid_argument.
ReductionSet reductions_by_names(const std::string& names);

struct Reduct {
  Path position;
  std::string reduction;
  ArgumentStructure result;
};

/// All one-step reducts, outermost position first, leftmost within a level,
/// then by reduction name; alpha-equivalent duplicates are dropped.
std::vector<Reduct> reduce_step(const ArgumentStructure& d, const ReductionSet& j);

struct TraceStep {
  std::string position;
  std::string reduction;
  std::string before;  // structure hash
  std::string after;
};

nlohmann::json to_json(const TraceStep& s);
nlohmann::json to_json(const std::vector<TraceStep>& path);

struct ReduceOutcome {
  Decision decision = Decision::no;  // resource_limit when the budget ran out
  std::optional<ArgumentStructure> found;
  std::vector<TraceStep> path;
  std::size_t steps = 0;  // successful reduction applications performed
};

/// Breadth-first search over reducts of d (d itself first). `accept` is
/// asked about each structure reached; yes stops the search, resource_limit
/// marks the search inconclusive but continues. A no answer means the
/// reachable set was exhausted.
ReduceOutcome search_reducts(const ArgumentStructure& d, const ReductionSet& j, std::size_t budget,
                             const std::function<Decision(const ArgumentStructure&)>& accept);

/// D ≤_J target within the budget.
ReduceOutcome reduces_to(const ArgumentStructure& d, const ArgumentStructure& target, const ReductionSet& j,
                         std::size_t budget);

}  // namespace pts
