#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace pts {

/// Raised by every textual front end (formulas, sequents, bases, arguments).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

enum class Connective { atom, bottom, conj, disj, impl };

/// Immutable propositional formula over named atoms, absurdity and the
/// binary connectives. Negation is sugar: neg(A) is impl(A, bottom).
///
/// Equality and ordering are structural. Each node caches its canonical
/// ASCII rendering, which is injective, so comparisons go through it.
class Formula {
 public:
  Formula();  // absurdity

  static Formula atom(std::string name);
  static Formula bottom();
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);
  static Formula impl(Formula left, Formula right);
  static Formula neg(Formula operand);

  Connective kind() const;
  bool is_atom() const { return kind() == Connective::atom; }
  bool is_bottom() const { return kind() == Connective::bottom; }
  /// Atoms and absurdity.
  bool is_atomic() const { return is_atom() || is_bottom(); }

  /// Name of an atom; "bot" for absurdity.
  const std::string& name() const;
  const Formula& left() const;
  const Formula& right() const;

  std::size_t size() const;
  /// Height of the syntax tree; atoms and absurdity have height 1.
  std::size_t height() const;
  std::size_t hash() const;

  /// Canonical ASCII rendering; parse_formula(text()) == *this.
  const std::string& text() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node);
  static Formula build(Connective kind, const Formula& left, const Formula& right);
  std::shared_ptr<const Node> node_;
};

using AtomSet = std::set<std::string>;
using Substitution = std::map<std::string, Formula>;

/// Reserved spelling of absurdity in every concrete syntax.
inline constexpr std::string_view kBottomName = "bot";

bool is_identifier(std::string_view text);

Formula parse_formula(std::string_view text);

std::string to_string(const Formula& f);
/// Pretty-printer using the logical symbols; not accepted by the parser.
std::string to_unicode(const Formula& f);

Formula substitute(const Formula& f, const Substitution& mapping);
AtomSet atoms_of(const Formula& f);

nlohmann::json to_json(const Formula& f);
Formula formula_from_json(const nlohmann::json& j);

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

}  // namespace pts
