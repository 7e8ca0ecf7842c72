#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pts/formula.hpp"

namespace pts {

/// Finite set of premises and one conclusion. Premises are kept sorted and
/// duplicate-free so that equal sequents compare equal.
struct Sequent {
  std::vector<Formula> premises;
  Formula conclusion;

  Sequent() = default;
  Sequent(std::vector<Formula> gamma, Formula a);

  bool closed() const { return premises.empty(); }
  AtomSet atoms() const;

  friend bool operator==(const Sequent&, const Sequent&) = default;
  friend auto operator<=>(const Sequent& a, const Sequent& b) {
    if (auto c = a.conclusion <=> b.conclusion; c != 0) return c;
    return a.premises <=> b.premises;
  }
};

/// Text form: `p, q -> r |- s`; an empty left side means no premises.
Sequent parse_sequent(std::string_view text);
std::string to_string(const Sequent& s);

nlohmann::json to_json(const Sequent& s);

}  // namespace pts
