#pragma once

#include <vector>

#include "pts/atomic_system.hpp"
#include "pts/formula.hpp"

namespace pts {

/// Intuitionistic propositional derivability Γ ⊢ A, decided with the
/// contraction-free sequent calculus G4ip. Always answers yes or no.
Decision il_derives(const std::vector<Formula>& gamma, const Formula& a);

}  // namespace pts
