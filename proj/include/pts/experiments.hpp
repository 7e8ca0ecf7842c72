#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pts/validity.hpp"

namespace pts {

/// One item of the fixed experiment pack.
struct PackItem {
  std::string name;
  bool passed = false;
  nlohmann::json detail;
};

struct PackReport {
  std::vector<PackItem> items;
  bool all_passed() const;
};

nlohmann::json to_json(const PackItem& item);
nlohmann::json to_json(const PackReport& report);

/// Formulas over the atoms and bot with height at most h, by height.
std::vector<Formula> formulas_up_to(const std::vector<std::string>& atoms, int h);

/// Consistent bases over {p, q} with at most 3 rules of level at most 2.
std::vector<Base> small_bases();

/// p |- q holds on the empty base and fails on {p}, for both kinds.
PackItem non_monotonicity();
/// Export principle on ({p}, q, empty base) with the counterexample {p}.
PackItem export_failure(const SearchBounds& bounds);
/// p |- q holds on the empty base for every kind while IL does not derive it.
PackItem base_incompleteness(CheckOptions options = {});
/// Peirce, double negation elimination and excluded middle have no
/// counterexample base within the bounds.
PackItem classical_sweep(const SearchBounds& bounds);

struct ReplayStats {
  std::size_t bases = 0;
  std::size_t checks = 0;
  std::size_t valid = 0;
  std::size_t invalid = 0;
  std::size_t inconclusive = 0;
  std::size_t suite_members = 0;
  std::vector<std::string> failures;  // first few non-VALID cells
  bool all_valid() const { return checks > 0 && valid == checks; }
};
nlohmann::json to_json(const ReplayStats& s);

/// orL from [p | q]_1 to p with {phi_or_lambda}, against every canonical
/// closed argument for p | q up to depth 3, on each base where q fails.
ReplayStats or_lambda_replay(const std::vector<Base>& bases, CheckOptions options = {});

using WkTriple = std::array<Formula, 3>;  // A, B, C
/// All triples of atoms over {p, q, bot} plus `extra` triples of formulas
/// of height at most 2 drawn with the seed.
std::vector<WkTriple> wk_triples(std::uint64_t seed, std::size_t extra);
/// Wk from [A -> B]_1 to (A & C) -> B with {phi_and, phi_wk, phi_imp},
/// against the closed arguments for A -> B up to depth 3.
ReplayStats wk_replay(const std::vector<Base>& bases, const std::vector<WkTriple>& triples,
                      CheckOptions options = {});

/// Sandqvist against alpha on the empty base and on {p}.
PackItem comparison_table(CheckOptions options = {});

PackReport run_pack(const SearchBounds& bounds, std::uint64_t seed, CheckOptions options = {});

}  // namespace pts
