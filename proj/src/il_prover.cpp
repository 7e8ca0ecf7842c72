#include "pts/il_prover.hpp"

#include <set>
#include <string>
#include <unordered_map>

namespace pts {

namespace {

using Context = std::set<Formula>;

class G4ip {
 public:
  bool prove(Context gamma, const Formula& goal) {
    std::string key;
    for (const auto& g : gamma) key += g.text() + ";";
    key += "=>" + goal.text();
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    const bool result = search(std::move(gamma), goal);
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  static Context without(const Context& gamma, const Formula& f) {
    Context out = gamma;
    out.erase(f);
    return out;
  }

  bool search(Context gamma, const Formula& goal) {
    if (gamma.count(Formula::bottom()) || gamma.count(goal)) return true;

    // Invertible left rules.
    for (const auto& f : gamma) {
      switch (f.kind()) {
        case Connective::conj: {
          Context next = without(gamma, f);
          next.insert(f.left());
          next.insert(f.right());
          return prove(std::move(next), goal);
        }
        case Connective::disj: {
          Context rest = without(gamma, f);
          Context l = rest, r = rest;
          l.insert(f.left());
          r.insert(f.right());
          return prove(std::move(l), goal) && prove(std::move(r), goal);
        }
        case Connective::impl: {
          const Formula& a = f.left();
          const Formula& d = f.right();
          if (a.is_bottom()) return prove(without(gamma, f), goal);
          if (a.is_atom() && gamma.count(a)) {
            Context next = without(gamma, f);
            next.insert(d);
            return prove(std::move(next), goal);
          }
          if (a.kind() == Connective::conj) {
            Context next = without(gamma, f);
            next.insert(Formula::impl(a.left(), Formula::impl(a.right(), d)));
            return prove(std::move(next), goal);
          }
          if (a.kind() == Connective::disj) {
            Context next = without(gamma, f);
            next.insert(Formula::impl(a.left(), d));
            next.insert(Formula::impl(a.right(), d));
            return prove(std::move(next), goal);
          }
          break;
        }
        default:
          break;
      }
    }

    // Invertible right rules.
    if (goal.kind() == Connective::conj) {
      return prove(gamma, goal.left()) && prove(gamma, goal.right());
    }
    if (goal.kind() == Connective::impl) {
      Context next = gamma;
      next.insert(goal.left());
      return prove(std::move(next), goal.right());
    }

    if (goal.kind() == Connective::disj) {
      if (prove(gamma, goal.left()) || prove(gamma, goal.right())) return true;
    }
    for (const auto& f : gamma) {
      if (f.kind() != Connective::impl || f.left().kind() != Connective::impl) continue;
      const Formula& c = f.left().left();
      const Formula& d = f.left().right();
      const Formula& b = f.right();
      Context rest = without(gamma, f);
      Context first = rest;
      first.insert(Formula::impl(d, b));
      if (!prove(std::move(first), Formula::impl(c, d))) continue;
      Context second = rest;
      second.insert(b);
      if (prove(std::move(second), goal)) return true;
    }
    return false;
  }

  std::unordered_map<std::string, bool> memo_;
};

}  // namespace

Decision il_derives(const std::vector<Formula>& gamma, const Formula& a) {
  G4ip prover;
  return prover.prove(Context(gamma.begin(), gamma.end()), a) ? Decision::yes : Decision::no;
}

}  // namespace pts
