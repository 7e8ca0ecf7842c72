#pragma once

// Reference implementations used as test oracles. They share no code with
// the library beyond the data types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pts/atomic_system.hpp"
#include "pts/formula.hpp"
#include "pts/sequent.hpp"

namespace pts::oracle {

/// Atoms derivable by derivations of height at most `depth`, computed
/// layer by layer: an atom is in layer d under context C if some rule of C
/// concludes it and each premise atom is in layer d-1 under C extended by
/// the premise's discharged rules.
class BoundedDerivations {
 public:
  BoundedDerivations(const Base& base, int depth) : depth_(depth) {
    for (const auto& r : base.rules()) root_ |= bit(r);
  }

  bool derivable(const std::string& atom) { return layer(root_, depth_).count(atom) > 0; }

  /// Height of the lowest derivation of the atom, if one of height at most the bound exists.
  std::optional<int> min_height(const std::string& atom) {
    for (int d = 1; d <= depth_; ++d) {
      if (layer(root_, d).count(atom)) return d;
    }
    return std::nullopt;
  }

 private:
  // Contexts are sets of rules, given as bit masks over the rules met so far.
  using Context = std::uint64_t;

  Context bit(const AtomicRule& r) {
    auto [it, fresh] = ids_.emplace(r.text(), rules_.size());
    if (fresh) rules_.push_back(r);
    return Context{1} << it->second;
  }

  const std::set<std::string>& layer(Context ctx, int d) {
    const auto key = std::make_pair(ctx, d);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::set<std::string> out;
    if (d > 0) {
      for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (!(ctx >> i & 1u)) continue;
        const AtomicRule r = rules_[i];
        bool ok = true;
        for (const auto& prem : r.premises()) {
          Context next = ctx;
          for (const auto& x : prem.discharged) next |= bit(x);
          if (!layer(next, d - 1).count(prem.conclusion)) {
            ok = false;
            break;
          }
        }
        if (ok) out.insert(r.conclusion());
      }
    }
    return memo_[key] = std::move(out);
  }

  int depth_;
  Context root_ = 0;
  std::vector<AtomicRule> rules_;
  std::map<std::string, std::size_t> ids_;
  std::map<std::pair<Context, int>, std::set<std::string>> memo_;
};

/// Standard consequence evaluated straight from the clauses, with atoms
/// decided by the bounded enumerator.
class TruthOracle {
 public:
  TruthOracle(const Base& base, int depth = 8) : der_(base, depth) {}

  bool holds(const Formula& a) {
    switch (a.kind()) {
      case Connective::atom:
      case Connective::bottom:
        return der_.derivable(a.name());
      case Connective::conj:
        return holds(a.left()) && holds(a.right());
      case Connective::disj:
        return holds(a.left()) || holds(a.right());
      case Connective::impl:
        return !holds(a.left()) || holds(a.right());
    }
    return false;
  }

  bool models(const Sequent& s) {
    for (const auto& g : s.premises) {
      if (!holds(g)) return true;
    }
    return holds(s.conclusion);
  }

 private:
  BoundedDerivations der_;
};

/// Finite Kripke frame given by its order relation; truth values are
/// up-closed sets of worlds, so formulas are evaluated in the Heyting
/// algebra of up-sets.
class KripkeFrame {
 public:
  // leq[i][j]: world j is above world i
  KripkeFrame(std::string name, std::vector<std::vector<bool>> leq) : name_(std::move(name)), leq_(std::move(leq)) {
    const std::size_t n = leq_.size();
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      if (up_closed(s)) upsets_.push_back(s);
    }
  }

  const std::string& name() const { return name_; }
  std::size_t worlds() const { return leq_.size(); }
  const std::vector<std::uint32_t>& upsets() const { return upsets_; }

  std::uint32_t value(const Formula& a, const std::map<std::string, std::uint32_t>& v) const {
    const std::uint32_t all = (1u << worlds()) - 1;
    switch (a.kind()) {
      case Connective::atom:
        return v.at(a.name());
      case Connective::bottom:
        return 0;
      case Connective::conj:
        return value(a.left(), v) & value(a.right(), v);
      case Connective::disj:
        return value(a.left(), v) | value(a.right(), v);
      case Connective::impl: {
        const std::uint32_t l = value(a.left(), v), r = value(a.right(), v);
        std::uint32_t out = 0;
        for (std::size_t w = 0; w < worlds(); ++w) {
          bool ok = true;
          for (std::size_t u = 0; u < worlds(); ++u) {
            if (leq_[w][u] && (l >> u & 1u) && !(r >> u & 1u)) ok = false;
          }
          if (ok) out |= 1u << w;
        }
        return out & all;
      }
    }
    return 0;
  }

  /// Some valuation of the atoms makes the premises true everywhere the
  /// conclusion is not; i.e. the sequent is refuted at some world.
  bool refutes(const Sequent& s) const {
    std::vector<std::string> atoms;
    for (const auto& x : s.atoms()) atoms.push_back(x);
    std::map<std::string, std::uint32_t> v;
    return search(s, atoms, 0, v);
  }

 private:
  bool up_closed(std::uint32_t s) const {
    for (std::size_t w = 0; w < leq_.size(); ++w) {
      if (!(s >> w & 1u)) continue;
      for (std::size_t u = 0; u < leq_.size(); ++u) {
        if (leq_[w][u] && !(s >> u & 1u)) return false;
      }
    }
    return true;
  }

  bool search(const Sequent& s, const std::vector<std::string>& atoms, std::size_t i,
              std::map<std::string, std::uint32_t>& v) const {
    if (i == atoms.size()) {
      std::uint32_t gamma = (1u << worlds()) - 1;
      for (const auto& g : s.premises) gamma &= value(g, v);
      return (gamma & ~value(s.conclusion, v)) != 0;
    }
    for (std::uint32_t u : upsets_) {
      v[atoms[i]] = u;
      if (search(s, atoms, i + 1, v)) return true;
    }
    return false;
  }

  std::string name_;
  std::vector<std::vector<bool>> leq_;
  std::vector<std::uint32_t> upsets_;
};

/// Rooted frames: a chain of n worlds, and a root below k incomparable leaves.
inline KripkeFrame chain_frame(std::size_t n) {
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) leq[i][j] = true;
  }
  return KripkeFrame("chain" + std::to_string(n), leq);
}

inline KripkeFrame fork_frame(std::size_t leaves) {
  const std::size_t n = leaves + 1;
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    leq[i][i] = true;
    leq[0][i] = true;
  }
  return KripkeFrame("fork" + std::to_string(leaves), leq);
}

/// Root, a middle world, and two leaves above the middle one.
inline KripkeFrame y_frame() {
  std::vector<std::vector<bool>> leq(4, std::vector<bool>(4, false));
  for (std::size_t i = 0; i < 4; ++i) leq[i][i] = true;
  for (std::size_t j = 1; j < 4; ++j) leq[0][j] = true;
  leq[1][2] = leq[1][3] = true;
  return KripkeFrame("y", leq);
}

inline std::vector<KripkeFrame> small_frames() {
  return {chain_frame(1), chain_frame(2), chain_frame(3), fork_frame(2), fork_frame(3), y_frame()};
}

/// Name of a frame refuting the sequent, or empty when every small frame validates it.
inline std::string kripke_refuter(const Sequent& s) {
  for (const auto& f : small_frames()) {
    if (f.refutes(s)) return f.name();
  }
  return "";
}

}  // namespace pts::oracle
