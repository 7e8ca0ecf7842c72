#include "pts/formula.hpp"

#include <cctype>
#include <functional>
#include <optional>

namespace pts {

struct Formula::Node {
  Connective kind;
  std::string name;
  std::optional<Formula> left;
  std::optional<Formula> right;
  std::size_t size = 1;
  std::size_t height = 1;
  std::string text;
  std::size_t hash = 0;
};

namespace {

// Binding strength used by the printer: larger binds tighter.
enum Precedence { kImpl = 1, kDisj = 2, kConj = 3, kNeg = 4, kAtomic = 5 };

int precedence_of(Connective kind, bool is_negation) {
  switch (kind) {
    case Connective::atom:
    case Connective::bottom:
      return kAtomic;
    case Connective::conj:
      return kConj;
    case Connective::disj:
      return kDisj;
    case Connective::impl:
      return is_negation ? kNeg : kImpl;
  }
  return kAtomic;
}

}  // namespace

Formula::Formula() : Formula(bottom()) {}

Formula::Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = Connective::atom;
  node->text = name;
  node->name = std::move(name);
  node->hash = std::hash<std::string>{}(node->text);
  return Formula(std::move(node));
}

Formula Formula::bottom() {
  static const std::shared_ptr<const Node> shared = [] {
    auto node = std::make_shared<Node>();
    node->kind = Connective::bottom;
    node->name = std::string(kBottomName);
    node->text = node->name;
    node->hash = std::hash<std::string>{}(node->text);
    return node;
  }();
  return Formula(shared);
}

namespace {

std::string wrap(const std::string& text, bool parens) {
  return parens ? "(" + text + ")" : text;
}

}  // namespace

Formula Formula::conj(Formula left, Formula right) {
  return build(Connective::conj, left, right);
}
Formula Formula::disj(Formula left, Formula right) {
  return build(Connective::disj, left, right);
}
Formula Formula::impl(Formula left, Formula right) {
  return build(Connective::impl, left, right);
}
Formula Formula::neg(Formula operand) {
  return impl(std::move(operand), bottom());
}

Formula Formula::build(Connective kind, const Formula& l, const Formula& r) {
  auto node = std::make_shared<Node>();
  node->kind = kind;
  node->left = l;
  node->right = r;
  node->size = 1 + l.size() + r.size();
  node->height = 1 + std::max(l.height(), r.height());

  const bool negation = kind == Connective::impl && r.is_bottom();
  const int lp = precedence_of(l.kind(), l.kind() == Connective::impl && l.right().is_bottom());
  const int rp = precedence_of(r.kind(), r.kind() == Connective::impl && r.right().is_bottom());
  switch (kind) {
    case Connective::conj:
      node->text = wrap(l.text(), lp < kConj) + " & " + wrap(r.text(), rp <= kConj);
      break;
    case Connective::disj:
      node->text = wrap(l.text(), lp < kDisj) + " | " + wrap(r.text(), rp <= kDisj);
      break;
    case Connective::impl:
      if (negation) {
        node->text = "~" + wrap(l.text(), lp < kNeg);
      } else {
        node->text = wrap(l.text(), lp <= kImpl) + " -> " + r.text();
      }
      break;
    default:
      throw std::logic_error("build() on a leaf connective");
  }
  node->hash = std::hash<std::string>{}(node->text);
  return Formula(std::move(node));
}

Connective Formula::kind() const { return node_->kind; }

const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::left() const {
  if (!node_->left) throw std::logic_error("left() on a leaf formula");
  return *node_->left;
}

const Formula& Formula::right() const {
  if (!node_->right) throw std::logic_error("right() on a leaf formula");
  return *node_->right;
}

std::size_t Formula::size() const { return node_->size; }
std::size_t Formula::height() const { return node_->height; }
std::size_t Formula::hash() const { return node_->hash; }
const std::string& Formula::text() const { return node_->text; }

bool operator==(const Formula& a, const Formula& b) {
  return a.node_ == b.node_ || (a.node_->hash == b.node_->hash && a.node_->text == b.node_->text);
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const int c = a.node_->text.compare(b.node_->text);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

bool is_identifier(std::string_view text) {
  if (text.empty() || text == kBottomName) return false;
  if (!(std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_')) return false;
  for (char c : text) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  }
  return true;
}

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view text) : text_(text) {}

  Formula parse_all() {
    Formula f = parse_impl();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  Formula parse_impl() {
    Formula lhs = parse_disj();
    if (accept("->")) return Formula::impl(lhs, parse_impl());
    return lhs;
  }

  Formula parse_disj() {
    Formula f = parse_conj();
    while (accept("|")) f = Formula::disj(f, parse_conj());
    return f;
  }

  Formula parse_conj() {
    Formula f = parse_unary();
    while (accept("&")) f = Formula::conj(f, parse_unary());
    return f;
  }

  Formula parse_unary() {
    skip_space();
    if (accept("~")) return Formula::neg(parse_unary());
    if (accept("(")) {
      Formula f = parse_impl();
      if (!accept(")")) fail("expected ')'");
      return f;
    }
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            (pos_ > start && text_[pos_] == '\''))) {
      ++pos_;
    }
    if (start == pos_) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                               : "unexpected end of input");
    }
    const std::string_view word = text_.substr(start, pos_ - start);
    if (word == kBottomName) return Formula::bottom();
    if (!is_identifier(word)) {
      pos_ = start;
      fail("invalid atom '" + std::string(word) + "'");
    }
    return Formula::atom(std::string(word));
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

std::string unicode_rec(const Formula& f, int context) {
  const bool negation = f.kind() == Connective::impl && f.right().is_bottom();
  const int own = precedence_of(f.kind(), negation);
  std::string out;
  switch (f.kind()) {
    case Connective::atom:
      return f.name();
    case Connective::bottom:
      return "⊥";
    case Connective::conj:
      out = unicode_rec(f.left(), kConj) + " ∧ " + unicode_rec(f.right(), kConj + 1);
      break;
    case Connective::disj:
      out = unicode_rec(f.left(), kDisj) + " ∨ " + unicode_rec(f.right(), kDisj + 1);
      break;
    case Connective::impl:
      if (negation) {
        out = "¬" + unicode_rec(f.left(), kNeg);
      } else {
        out = unicode_rec(f.left(), kImpl + 1) + " → " + unicode_rec(f.right(), kImpl);
      }
      break;
  }
  return own < context ? "(" + out + ")" : out;
}

void collect_atoms(const Formula& f, AtomSet& out) {
  switch (f.kind()) {
    case Connective::atom:
      out.insert(f.name());
      return;
    case Connective::bottom:
      return;
    default:
      collect_atoms(f.left(), out);
      collect_atoms(f.right(), out);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(text).parse_all(); }

std::string to_string(const Formula& f) { return f.text(); }

std::string to_unicode(const Formula& f) { return unicode_rec(f, 0); }

Formula substitute(const Formula& f, const Substitution& mapping) {
  switch (f.kind()) {
    case Connective::atom: {
      auto it = mapping.find(f.name());
      return it == mapping.end() ? f : it->second;
    }
    case Connective::bottom:
      return f;
    case Connective::conj:
      return Formula::conj(substitute(f.left(), mapping), substitute(f.right(), mapping));
    case Connective::disj:
      return Formula::disj(substitute(f.left(), mapping), substitute(f.right(), mapping));
    case Connective::impl:
      return Formula::impl(substitute(f.left(), mapping), substitute(f.right(), mapping));
  }
  return f;
}

AtomSet atoms_of(const Formula& f) {
  AtomSet out;
  collect_atoms(f, out);
  return out;
}

nlohmann::json to_json(const Formula& f) {
  switch (f.kind()) {
    case Connective::atom:
      return {{"op", "atom"}, {"name", f.name()}};
    case Connective::bottom:
      return {{"op", "bot"}};
    case Connective::conj:
      return {{"op", "and"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case Connective::disj:
      return {{"op", "or"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
    case Connective::impl:
      return {{"op", "imp"}, {"left", to_json(f.left())}, {"right", to_json(f.right())}};
  }
  return nullptr;
}

Formula formula_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_formula(j.get<std::string>());
  const std::string op = j.at("op").get<std::string>();
  if (op == "atom") return Formula::atom(j.at("name").get<std::string>());
  if (op == "bot") return Formula::bottom();
  Formula l = formula_from_json(j.at("left"));
  Formula r = formula_from_json(j.at("right"));
  if (op == "and") return Formula::conj(l, r);
  if (op == "or") return Formula::disj(l, r);
  if (op == "imp") return Formula::impl(l, r);
  throw std::invalid_argument("unknown formula op '" + op + "'");
}

}  // namespace pts
