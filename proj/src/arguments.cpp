#include "pts/arguments.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>

namespace pts {

struct ArgumentStructure::Node {
  Formula formula;
  bool axiomatic = false;
  std::optional<Label> label;
  std::vector<Child> children;
  std::string rule;
  std::optional<AtomicRule> atomic_rule;
  std::size_t size = 1;
  std::size_t height = 1;

  mutable std::once_flag fp_once;
  mutable std::string fp;
  mutable std::uint64_t hash = 0;
};

ArgumentStructure::ArgumentStructure() : ArgumentStructure(assumption(Formula::bottom())) {}

ArgumentStructure::ArgumentStructure(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

ArgumentStructure ArgumentStructure::assumption(Formula a, std::optional<Label> label) {
  auto n = std::make_shared<Node>();
  n->formula = std::move(a);
  n->label = label;
  return ArgumentStructure(std::move(n));
}

ArgumentStructure ArgumentStructure::axiom(Formula a, std::optional<Label> label) {
  auto n = std::make_shared<Node>();
  n->formula = std::move(a);
  n->axiomatic = true;
  n->label = label;
  return ArgumentStructure(std::move(n));
}

ArgumentStructure ArgumentStructure::inference(Formula conclusion, std::vector<Child> children, std::string rule,
                                               std::optional<Label> label,
                                               std::optional<AtomicRule> atomic_rule) {
  auto n = std::make_shared<Node>();
  n->formula = std::move(conclusion);
  n->label = label;
  n->rule = rule.empty() ? "step" : std::move(rule);
  n->atomic_rule = std::move(atomic_rule);
  std::size_t h = 0;
  for (auto& c : children) {
    std::sort(c.binds.begin(), c.binds.end());
    c.binds.erase(std::unique(c.binds.begin(), c.binds.end()), c.binds.end());
    n->size += c.sub.size();
    h = std::max(h, c.sub.height());
  }
  // A zero-premise inference is still an inference, not a top node.
  n->height = 1 + h;
  n->children = std::move(children);
  if (n->children.empty()) n->size = 1;
  auto out = ArgumentStructure(std::move(n));
  return out;
}

ArgumentStructure ArgumentStructure::step(Formula conclusion, std::vector<ArgumentStructure> premises,
                                          std::string rule) {
  std::vector<Child> children;
  for (auto& p : premises) children.push_back({std::move(p), {}});
  auto out = inference(std::move(conclusion), std::move(children), std::move(rule));
  return out;
}

const Formula& ArgumentStructure::conclusion() const { return node_->formula; }
bool ArgumentStructure::is_top() const { return node_->children.empty() && node_->rule.empty(); }
bool ArgumentStructure::axiomatic() const { return node_->axiomatic; }
std::optional<Label> ArgumentStructure::label() const { return node_->label; }
const std::vector<Child>& ArgumentStructure::children() const { return node_->children; }
const ArgumentStructure& ArgumentStructure::child(std::size_t i) const { return node_->children.at(i).sub; }
const std::vector<Label>& ArgumentStructure::binds(std::size_t i) const { return node_->children.at(i).binds; }
const std::string& ArgumentStructure::rule() const { return node_->rule; }
const std::optional<AtomicRule>& ArgumentStructure::atomic_rule() const { return node_->atomic_rule; }
std::size_t ArgumentStructure::size() const { return node_->size; }
std::size_t ArgumentStructure::height() const { return node_->height; }

namespace {

// Visits every node with the multiset of labels bound above it.
struct LabelScope {
  std::map<Label, int> bound;
  void push(const std::vector<Label>& ls) {
    for (Label l : ls) ++bound[l];
  }
  void pop(const std::vector<Label>& ls) {
    for (Label l : ls) {
      if (--bound[l] == 0) bound.erase(l);
    }
  }
  bool has(Label l) const { return bound.count(l) > 0; }
};

void walk(const ArgumentStructure& d, LabelScope& scope,
          const std::function<void(const ArgumentStructure&, const LabelScope&)>& f) {
  f(d, scope);
  for (const auto& c : d.children()) {
    scope.push(c.binds);
    walk(c.sub, scope, f);
    scope.pop(c.binds);
  }
}

void walk(const ArgumentStructure& d, const std::function<void(const ArgumentStructure&, const LabelScope&)>& f) {
  LabelScope scope;
  walk(d, scope, f);
}

}  // namespace

std::vector<Formula> ArgumentStructure::assumptions() const {
  std::vector<Formula> out;
  walk(*this, [&](const ArgumentStructure& n, const LabelScope& scope) {
    if (n.is_top() && !n.axiomatic() && !(n.label() && scope.has(*n.label()))) {
      out.push_back(n.conclusion());
    }
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool ArgumentStructure::closed() const {
  bool open = false;
  walk(*this, [&](const ArgumentStructure& n, const LabelScope& scope) {
    if (n.is_top() && !n.axiomatic() && !(n.label() && scope.has(*n.label()))) open = true;
  });
  return !open;
}

std::set<Label> ArgumentStructure::free_labels() const {
  std::set<Label> out;
  walk(*this, [&](const ArgumentStructure& n, const LabelScope& scope) {
    if (n.label() && !scope.has(*n.label())) out.insert(*n.label());
  });
  return out;
}

std::set<Label> ArgumentStructure::binder_labels() const {
  std::set<Label> out;
  walk(*this, [&](const ArgumentStructure& n, const LabelScope&) {
    for (const auto& c : n.children()) out.insert(c.binds.begin(), c.binds.end());
  });
  return out;
}

Label ArgumentStructure::max_label() const {
  Label out = 0;
  walk(*this, [&](const ArgumentStructure& n, const LabelScope&) {
    if (n.label()) out = std::max(out, *n.label());
    for (const auto& c : n.children()) {
      for (Label l : c.binds) out = std::max(out, l);
    }
  });
  return out;
}

namespace {

// Binder occurrences are numbered by first reference in preorder, free labels
// likewise; an edge's binder list is printed after its subtree so that every
// reference has been numbered by then.
struct FingerprintBuilder {
  std::map<Label, std::vector<int>> active;  // label -> stack of binder occurrence ids
  std::map<int, int> binder_number;
  std::map<Label, int> free_number;
  int next_binder_id = 0;
  std::string out;

  void node(const ArgumentStructure& d) {
    out += '"';
    out += d.conclusion().text();
    out += '"';
    if (d.axiomatic()) out += '!';
    if (!d.is_top()) out += '*';
    if (d.label()) {
      auto it = active.find(*d.label());
      if (it != active.end() && !it->second.empty()) {
        const int id = it->second.back();
        auto [b, fresh] = binder_number.emplace(id, static_cast<int>(binder_number.size()));
        (void)fresh;
        out += "#b" + std::to_string(b->second);
      } else {
        auto [f, fresh] = free_number.emplace(*d.label(), static_cast<int>(free_number.size()));
        (void)fresh;
        out += "#f" + std::to_string(f->second);
      }
    }
    if (d.children().empty()) return;
    out += '(';
    for (std::size_t i = 0; i < d.children().size(); ++i) {
      if (i) out += ',';
      const auto& c = d.children()[i];
      std::vector<int> ids;
      for (Label l : c.binds) {
        ids.push_back(next_binder_id);
        active[l].push_back(next_binder_id++);
      }
      node(c.sub);
      std::vector<int> numbers;
      for (std::size_t k = 0; k < c.binds.size(); ++k) {
        active[c.binds[k]].pop_back();
        if (auto it = binder_number.find(ids[k]); it != binder_number.end()) numbers.push_back(it->second);
      }
      std::sort(numbers.begin(), numbers.end());
      out += '{';
      for (std::size_t k = 0; k < numbers.size(); ++k) {
        if (k) out += ' ';
        out += std::to_string(numbers[k]);
      }
      out += '}';
    }
    out += ')';
  }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

const std::string& ArgumentStructure::fingerprint() const {
  std::call_once(node_->fp_once, [this] {
    FingerprintBuilder b;
    b.node(*this);
    node_->fp = std::move(b.out);
    node_->hash = fnv1a(node_->fp);
  });
  return node_->fp;
}

std::uint64_t ArgumentStructure::hash() const {
  fingerprint();
  return node_->hash;
}

std::string ArgumentStructure::hash_hex() const {
  static const char* digits = "0123456789abcdef";
  std::uint64_t h = hash();
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

bool operator==(const ArgumentStructure& a, const ArgumentStructure& b) {
  return a.node_ == b.node_ || (a.hash() == b.hash() && a.fingerprint() == b.fingerprint());
}

// ---------------------------------------------------------------------------

std::string path_text(const Path& p) {
  std::string out = "0";
  for (auto i : p) out += "." + std::to_string(i);
  return out;
}

std::optional<Path> parse_path(std::string_view text) {
  if (text.empty() || text[0] != '0') return std::nullopt;
  Path out;
  std::size_t pos = 1;
  while (pos < text.size()) {
    if (text[pos] != '.') return std::nullopt;
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (start == pos) return std::nullopt;
    out.push_back(std::stoul(std::string(text.substr(start, pos - start))));
  }
  return out;
}

std::vector<Path> positions(const ArgumentStructure& d) {
  std::vector<Path> out;
  std::deque<std::pair<Path, const ArgumentStructure*>> queue{{Path{}, &d}};
  while (!queue.empty()) {
    auto [p, n] = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < n->children().size(); ++i) {
      Path q = p;
      q.push_back(i);
      queue.emplace_back(std::move(q), &n->child(i));
    }
    out.push_back(std::move(p));
  }
  return out;
}

const ArgumentStructure& subtree(const ArgumentStructure& d, const Path& p) {
  const ArgumentStructure* n = &d;
  for (auto i : p) {
    if (i >= n->children().size()) throw std::out_of_range("no node at position " + path_text(p));
    n = &n->child(i);
  }
  return *n;
}

std::set<Label> bound_above(const ArgumentStructure& d, const Path& p) {
  std::set<Label> out;
  const ArgumentStructure* n = &d;
  for (auto i : p) {
    if (i >= n->children().size()) throw std::out_of_range("no node at position " + path_text(p));
    out.insert(n->binds(i).begin(), n->binds(i).end());
    n = &n->child(i);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

enum class UseKind { assumption, axiom, edge_set };

struct Use {
  UseKind kind;
  Formula formula;
};

// References to `labels` inside d (binder labels are unique, so no shadowing).
std::vector<Use> uses_of(const ArgumentStructure& d, const std::vector<Label>& labels) {
  std::vector<Use> out;
  if (labels.empty()) return out;
  walk(d, [&](const ArgumentStructure& n, const LabelScope&) {
    if (!n.label() || !std::binary_search(labels.begin(), labels.end(), *n.label())) return;
    const UseKind k = !n.is_top() ? UseKind::edge_set : n.axiomatic() ? UseKind::axiom : UseKind::assumption;
    out.push_back({k, n.conclusion()});
  });
  return out;
}

}  // namespace

Validation validate(const ArgumentStructure& d) {
  Validation v;
  std::map<Label, std::string> binder_at;
  std::set<Label> free;
  // Binder label -> path of the node binding it.
  std::function<void(const ArgumentStructure&, const Path&, std::map<Label, Path>&)> rec;
  struct BinderInfo {
    Path node;
    bool assumption_use = false;
    bool edge_use = false;
  };
  std::map<Label, BinderInfo> info;
  std::vector<std::pair<Path, Label>> edge_sets;

  rec = [&](const ArgumentStructure& n, const Path& p, std::map<Label, Path>& scope) {
    const std::string where = path_text(p);
    if (n.label()) {
      const Label l = *n.label();
      const bool bound = scope.count(l) > 0;
      if (!bound) free.insert(l);
      if (n.is_top()) {
        if (n.axiomatic()) {
          if (!n.conclusion().is_atomic()) v.errors.push_back(where + ": discharged axiomatic node must be atomic");
          if (!bound) v.errors.push_back(where + ": axiomatic node label " + std::to_string(l) + " is not bound");
        }
        if (bound && !n.axiomatic()) info[l].assumption_use = true;
      } else {
        if (!n.conclusion().is_atomic()) v.errors.push_back(where + ": edge-set node must be atomic");
        for (const auto& c : n.children()) {
          if (!c.sub.conclusion().is_atomic()) {
            v.errors.push_back(where + ": edge-set children must be atomic");
            break;
          }
        }
        for (const auto& c : n.children()) {
          if (c.sub.is_top() && !c.sub.axiomatic()) {
            v.warnings.push_back(where + ": assumption directly above a discharged edge-set; scope is ambiguous");
            break;
          }
        }
        if (!bound) {
          v.errors.push_back(where + ": edge-set label " + std::to_string(l) + " is not bound");
        } else {
          info[l].edge_use = true;
          edge_sets.emplace_back(p, l);
        }
      }
    }
    for (std::size_t i = 0; i < n.children().size(); ++i) {
      const auto& c = n.children()[i];
      for (Label l : c.binds) {
        if (binder_at.count(l)) {
          v.errors.push_back(where + ": label " + std::to_string(l) + " is bound twice");
        } else {
          binder_at[l] = where;
          info[l].node = p;
        }
      }
      std::map<Label, Path> inner = scope;
      for (Label l : c.binds) inner[l] = p;
      Path q = p;
      q.push_back(i);
      rec(c.sub, q, inner);
    }
  };
  std::map<Label, Path> scope;
  rec(d, {}, scope);

  for (Label l : free) {
    if (binder_at.count(l)) {
      v.errors.push_back("free label " + std::to_string(l) + " coincides with a binder label");
    }
  }
  // Nodes at which some assumption is discharged.
  std::set<Path> assumption_targets;
  for (const auto& [l, bi] : info) {
    if (bi.assumption_use) assumption_targets.insert(bi.node);
  }
  for (const auto& [p, l] : edge_sets) {
    if (assumption_targets.count(p)) {
      v.errors.push_back(path_text(p) + ": an assumption is discharged at an edge-set node");
    }
    const Path& target = info[l].node;
    if (assumption_targets.count(target)) {
      v.errors.push_back(path_text(target) + ": an assumption is discharged at the target of edge-set " +
                         std::to_string(l));
    }
  }
  return v;
}

// ---------------------------------------------------------------------------

ArgumentStructure relabel(const ArgumentStructure& d, const std::map<Label, Label>& mapping) {
  auto map_one = [&](Label l) {
    auto it = mapping.find(l);
    return it == mapping.end() ? l : it->second;
  };
  if (d.is_top()) {
    std::optional<Label> l = d.label() ? std::optional<Label>(map_one(*d.label())) : std::nullopt;
    return d.axiomatic() ? ArgumentStructure::axiom(d.conclusion(), l) : ArgumentStructure::assumption(d.conclusion(), l);
  }
  std::vector<Child> children;
  for (const auto& c : d.children()) {
    std::vector<Label> binds;
    for (Label l : c.binds) binds.push_back(map_one(l));
    children.push_back({relabel(c.sub, mapping), std::move(binds)});
  }
  std::optional<Label> l = d.label() ? std::optional<Label>(map_one(*d.label())) : std::nullopt;
  return ArgumentStructure::inference(d.conclusion(), std::move(children), d.rule(), l, d.atomic_rule());
}

ArgumentStructure freshen_binders(const ArgumentStructure& d, Label& next) {
  std::map<Label, Label> m;
  for (Label l : d.binder_labels()) m[l] = next++;
  return m.empty() ? d : relabel(d, m);
}

ArgumentStructure freshen_all(const ArgumentStructure& d, Label& next) {
  std::map<Label, Label> m;
  for (Label l : d.binder_labels()) m[l] = next++;
  for (Label l : d.free_labels()) {
    if (!m.count(l)) m[l] = next++;
  }
  return m.empty() ? d : relabel(d, m);
}

namespace {

ArgumentStructure rebuild_with_children(const ArgumentStructure& d, std::vector<Child> children) {
  return ArgumentStructure::inference(d.conclusion(), std::move(children), d.rule(), d.label(), d.atomic_rule());
}

ArgumentStructure graft_rec(const ArgumentStructure& d, Label label, const ArgumentStructure& with, Label& next) {
  if (d.is_top()) {
    if (d.label() == label) {
      if (d.conclusion() != with.conclusion()) {
        throw std::invalid_argument("graft: structure concludes " + with.conclusion().text() + ", node is " +
                                    d.conclusion().text());
      }
      return freshen_binders(with, next);
    }
    return d;
  }
  std::vector<Child> children;
  for (const auto& c : d.children()) children.push_back({graft_rec(c.sub, label, with, next), c.binds});
  return rebuild_with_children(d, std::move(children));
}

}  // namespace

ArgumentStructure graft_label(const ArgumentStructure& d, Label label, const ArgumentStructure& with) {
  Label next = std::max(d.max_label(), with.max_label()) + 1;
  return graft_rec(d, label, with, next);
}

ArgumentStructure instantiate(const ArgumentStructure& d, const Closure& sigma) {
  for (const auto& a : d.assumptions()) {
    auto it = sigma.find(a);
    if (it == sigma.end()) throw std::invalid_argument("closure misses assumption " + a.text());
    if (it->second.conclusion() != a) {
      throw std::invalid_argument("closure for " + a.text() + " concludes " + it->second.conclusion().text());
    }
  }
  Label next = d.max_label();
  for (const auto& [a, s] : sigma) next = std::max(next, s.max_label());
  ++next;
  std::function<ArgumentStructure(const ArgumentStructure&, LabelScope&)> rec =
      [&](const ArgumentStructure& n, LabelScope& scope) -> ArgumentStructure {
    if (n.is_top()) {
      if (!n.axiomatic() && !(n.label() && scope.has(*n.label()))) {
        return freshen_all(sigma.at(n.conclusion()), next);
      }
      return n;
    }
    std::vector<Child> children;
    for (const auto& c : n.children()) {
      scope.push(c.binds);
      children.push_back({rec(c.sub, scope), c.binds});
      scope.pop(c.binds);
    }
    return rebuild_with_children(n, std::move(children));
  };
  LabelScope scope;
  return rec(d, scope);
}

namespace {

ArgumentStructure replace_rec(const ArgumentStructure& d, const Path& at, std::size_t depth,
                              const ArgumentStructure& with) {
  if (depth == at.size()) return with;
  std::vector<Child> children = d.children();
  children.at(at[depth]).sub = replace_rec(children[at[depth]].sub, at, depth + 1, with);
  return rebuild_with_children(d, std::move(children));
}

}  // namespace

ArgumentStructure replace(const ArgumentStructure& d, const Path& at, const ArgumentStructure& with) {
  const ArgumentStructure& hole = subtree(d, at);
  if (hole.conclusion() != with.conclusion()) {
    throw std::invalid_argument("replace: conclusion " + with.conclusion().text() + " does not match " +
                                hole.conclusion().text());
  }
  if (at.empty() && with.free_labels().empty()) return with;
  const std::set<Label> above = bound_above(d, at);
  Label next = std::max(d.max_label(), with.max_label()) + 1;
  ArgumentStructure r = freshen_binders(with, next);

  const std::set<Label> binders = d.binder_labels();
  std::map<Label, Label> rename;
  walk(r, [&](const ArgumentStructure& n, const LabelScope& scope) {
    if (!n.label() || scope.has(*n.label()) || above.count(*n.label())) return;
    if (!n.is_top() || n.axiomatic()) {
      throw std::invalid_argument("replace: dangling discharge of label " + std::to_string(*n.label()));
    }
    if (binders.count(*n.label()) && !rename.count(*n.label())) rename[*n.label()] = next++;
  });
  if (!rename.empty()) r = relabel(r, rename);
  return replace_rec(d, at, 0, r);
}

ArgumentStructure immediate_substructure(const ArgumentStructure& d, std::size_t i) { return d.child(i); }

// ---------------------------------------------------------------------------

std::string_view to_string(Schema s) {
  switch (s) {
    case Schema::and_intro:
      return "andI";
    case Schema::or_intro:
      return "orI";
    case Schema::imp_intro:
      return "impI";
    case Schema::and_elim1:
      return "andE1";
    case Schema::and_elim2:
      return "andE2";
    case Schema::or_elim:
      return "orE";
    case Schema::imp_elim:
      return "impE";
    case Schema::weakening:
      return "Wk";
    case Schema::or_lambda:
      return "orL";
  }
  return "?";
}

std::optional<Schema> parse_schema(std::string_view text) {
  for (Schema s : {Schema::and_intro, Schema::or_intro, Schema::imp_intro, Schema::and_elim1, Schema::and_elim2,
                   Schema::or_elim, Schema::imp_elim, Schema::weakening, Schema::or_lambda}) {
    if (to_string(s) == text) return s;
  }
  return std::nullopt;
}

namespace {

bool no_binds(const ArgumentStructure& d) {
  for (const auto& c : d.children()) {
    if (!c.binds.empty() && !uses_of(c.sub, c.binds).empty()) return false;
  }
  return true;
}

// All references to the child's binders are assumptions of formula a.
bool discharges_only(const Child& c, const Formula& a) {
  for (const auto& u : uses_of(c.sub, c.binds)) {
    if (u.kind != UseKind::assumption || u.formula != a) return false;
  }
  return true;
}

}  // namespace

bool matches(Schema s, const ArgumentStructure& d) {
  if (d.is_top() || d.label()) return false;
  const auto& ch = d.children();
  const Formula& c = d.conclusion();
  switch (s) {
    case Schema::and_intro:
      return ch.size() == 2 && c.kind() == Connective::conj && ch[0].sub.conclusion() == c.left() &&
             ch[1].sub.conclusion() == c.right() && no_binds(d);
    case Schema::or_intro:
      return ch.size() == 1 && c.kind() == Connective::disj &&
             (ch[0].sub.conclusion() == c.left() || ch[0].sub.conclusion() == c.right()) && no_binds(d);
    case Schema::imp_intro:
      return ch.size() == 1 && c.kind() == Connective::impl && ch[0].sub.conclusion() == c.right() &&
             discharges_only(ch[0], c.left());
    case Schema::and_elim1:
    case Schema::and_elim2: {
      if (ch.size() != 1 || ch[0].sub.conclusion().kind() != Connective::conj || !no_binds(d)) return false;
      const Formula& m = ch[0].sub.conclusion();
      return s == Schema::and_elim1 ? m.left() == c : m.right() == c;
    }
    case Schema::or_elim: {
      if (ch.size() != 3 || ch[0].sub.conclusion().kind() != Connective::disj) return false;
      const Formula& m = ch[0].sub.conclusion();
      return ch[1].sub.conclusion() == c && ch[2].sub.conclusion() == c &&
             uses_of(ch[0].sub, ch[0].binds).empty() && discharges_only(ch[1], m.left()) &&
             discharges_only(ch[2], m.right());
    }
    case Schema::imp_elim:
      return ch.size() == 2 && ch[0].sub.conclusion().kind() == Connective::impl &&
             ch[0].sub.conclusion().left() == ch[1].sub.conclusion() && ch[0].sub.conclusion().right() == c &&
             no_binds(d);
    case Schema::weakening: {
      if (ch.size() != 1 || !no_binds(d) || c.kind() != Connective::impl || c.left().kind() != Connective::conj) {
        return false;
      }
      const Formula& m = ch[0].sub.conclusion();
      return m.kind() == Connective::impl && m.left() == c.left().left() && m.right() == c.right();
    }
    case Schema::or_lambda: {
      if (ch.size() != 1 || !no_binds(d)) return false;
      const Formula& m = ch[0].sub.conclusion();
      return m.kind() == Connective::disj && m.left() == c;
    }
  }
  return false;
}

std::vector<Schema> matching_schemata(const ArgumentStructure& d) {
  std::vector<Schema> out;
  for (Schema s : {Schema::and_intro, Schema::or_intro, Schema::imp_intro, Schema::and_elim1, Schema::and_elim2,
                   Schema::or_elim, Schema::imp_elim, Schema::weakening, Schema::or_lambda}) {
    if (matches(s, d)) out.push_back(s);
  }
  return out;
}

bool is_canonical(const ArgumentStructure& d) {
  return matches(Schema::and_intro, d) || matches(Schema::or_intro, d) || matches(Schema::imp_intro, d);
}

namespace {

ArgumentStructure checked(Schema s, ArgumentStructure d) {
  if (!matches(s, d)) {
    throw std::invalid_argument("premises do not fit " + std::string(to_string(s)) + " for " +
                                d.conclusion().text());
  }
  return d;
}

}  // namespace

ArgumentStructure and_intro(const ArgumentStructure& l, const ArgumentStructure& r) {
  return checked(Schema::and_intro,
                 ArgumentStructure::step(Formula::conj(l.conclusion(), r.conclusion()), {l, r}, "andI"));
}

ArgumentStructure or_intro(const ArgumentStructure& d, const Formula& disjunction) {
  const bool left = disjunction.kind() == Connective::disj && disjunction.left() == d.conclusion();
  return checked(Schema::or_intro, ArgumentStructure::step(disjunction, {d}, left ? "orI1" : "orI2"));
}

ArgumentStructure imp_intro(const Formula& a, Label label, const ArgumentStructure& d) {
  return checked(Schema::imp_intro, ArgumentStructure::inference(Formula::impl(a, d.conclusion()),
                                                                 {Child{d, {label}}}, "impI"));
}

ArgumentStructure and_elim(int i, const ArgumentStructure& d) {
  if (d.conclusion().kind() != Connective::conj) throw std::invalid_argument("andE needs a conjunction");
  const Formula c = i == 1 ? d.conclusion().left() : d.conclusion().right();
  return checked(i == 1 ? Schema::and_elim1 : Schema::and_elim2,
                 ArgumentStructure::step(c, {d}, i == 1 ? "andE1" : "andE2"));
}

ArgumentStructure or_elim(const ArgumentStructure& major, Label left_label, const ArgumentStructure& left,
                          Label right_label, const ArgumentStructure& right) {
  return checked(Schema::or_elim,
                 ArgumentStructure::inference(left.conclusion(),
                                              {Child{major, {}}, Child{left, {left_label}}, Child{right, {right_label}}},
                                              "orE"));
}

ArgumentStructure imp_elim(const ArgumentStructure& major, const ArgumentStructure& minor) {
  if (major.conclusion().kind() != Connective::impl) throw std::invalid_argument("impE needs an implication");
  return checked(Schema::imp_elim, ArgumentStructure::step(major.conclusion().right(), {major, minor}, "impE"));
}

ArgumentStructure weakening(const ArgumentStructure& d, const Formula& extra) {
  if (d.conclusion().kind() != Connective::impl) throw std::invalid_argument("Wk needs an implication");
  const Formula& m = d.conclusion();
  return checked(Schema::weakening,
                 ArgumentStructure::step(Formula::impl(Formula::conj(m.left(), extra), m.right()), {d}, "Wk"));
}

ArgumentStructure or_lambda(const ArgumentStructure& d) {
  if (d.conclusion().kind() != Connective::disj) throw std::invalid_argument("orL needs a disjunction");
  return checked(Schema::or_lambda, ArgumentStructure::step(d.conclusion().left(), {d}, "orL"));
}

// ---------------------------------------------------------------------------

namespace {

struct ToStructure {
  Label next;
  std::vector<std::pair<AtomicRule, Label>> env;

  std::optional<Label> lookup(const AtomicRule& r) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      if (it->first == r) return it->second;
    }
    return std::nullopt;
  }

  ArgumentStructure build(const DerivationNode& n) {
    const Formula concl = atom_formula(n.conclusion);
    if (!n.rule) {
      return ArgumentStructure::step(concl, {build(n.children.at(0))}, "efq");
    }
    const AtomicRule& r = *n.rule;
    const std::optional<Label> own = lookup(r);
    if (r.is_axiom()) return ArgumentStructure::axiom(concl, own);
    std::vector<Child> children;
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const auto& p = r.premises().at(i);
      std::vector<Label> labels;
      for (const auto& c : p.discharged) {
        labels.push_back(next);
        env.emplace_back(c, next++);
      }
      ArgumentStructure sub = build(n.children[i]);
      env.erase(env.end() - static_cast<std::ptrdiff_t>(labels.size()), env.end());
      const std::set<Label> used = sub.free_labels();
      std::vector<Label> binds;
      for (Label l : labels) {
        if (used.count(l)) binds.push_back(l);
      }
      children.push_back({std::move(sub), std::move(binds)});
    }
    return ArgumentStructure::inference(concl, std::move(children), "rule", own, r);
  }
};

struct FromStructure {
  const Base& base;
  bool explosion;

  using Env = std::map<Label, AtomicRule>;

  std::optional<DerivationNode> node(const ArgumentStructure& d, const Env& env) {
    if (!d.conclusion().is_atomic()) return std::nullopt;
    const std::string name = d.conclusion().name();
    if (d.is_top()) {
      if (!d.axiomatic()) return std::nullopt;
      const AtomicRule ax(name);
      if (d.label()) {
        auto it = env.find(*d.label());
        if (it == env.end() || it->second != ax) return std::nullopt;
      } else if (!base.contains(ax)) {
        return std::nullopt;
      }
      return DerivationNode{name, ax, {}};
    }
    if (explosion && !d.label() && d.children().size() == 1 && d.child(0).conclusion().is_bottom() &&
        uses_of(d.child(0), d.binds(0)).empty()) {
      if (auto c = node(d.child(0), env)) return DerivationNode{name, std::nullopt, {std::move(*c)}};
    }
    std::vector<AtomicRule> candidates;
    if (d.label()) {
      auto it = env.find(*d.label());
      if (it == env.end()) return std::nullopt;
      candidates.push_back(it->second);
    } else {
      if (d.atomic_rule() && base.contains(*d.atomic_rule())) candidates.push_back(*d.atomic_rule());
      for (const auto& r : base.rules()) {
        if (!r.is_axiom() && r.conclusion() == name && r.premises().size() == d.children().size() &&
            !(d.atomic_rule() && r == *d.atomic_rule())) {
          candidates.push_back(r);
        }
      }
    }
    for (const auto& r : candidates) {
      if (r.is_axiom() || r.conclusion() != name || r.premises().size() != d.children().size()) continue;
      if (auto out = apply(d, r, env)) return out;
    }
    return std::nullopt;
  }

  std::optional<DerivationNode> apply(const ArgumentStructure& d, const AtomicRule& r, const Env& env) {
    const std::size_t n = d.children().size();
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    do {
      // child i is used for premise perm[i]
      std::vector<std::optional<DerivationNode>> out(n);
      bool ok = true;
      for (std::size_t i = 0; i < n && ok; ++i) {
        const auto& p = r.premises()[perm[i]];
        if (d.child(i).conclusion().name() != p.conclusion || !d.child(i).conclusion().is_atomic()) {
          ok = false;
          break;
        }
        std::vector<Label> used;
        for (Label l : d.binds(i)) {
          if (!uses_of(d.child(i), {l}).empty()) used.push_back(l);
        }
        out[perm[i]] = assign(d.child(i), used, 0, p.discharged, env);
        ok = out[perm[i]].has_value();
      }
      if (ok) {
        DerivationNode node{d.conclusion().name(), r, {}};
        for (auto& c : out) node.children.push_back(std::move(*c));
        return node;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
  }

  std::optional<DerivationNode> assign(const ArgumentStructure& sub, const std::vector<Label>& labels, std::size_t k,
                                       const std::vector<AtomicRule>& discharged, const Env& env) {
    if (k == labels.size()) return node(sub, env);
    for (const auto& c : discharged) {
      Env more = env;
      more.insert_or_assign(labels[k], c);
      if (auto out = assign(sub, labels, k + 1, discharged, more)) return out;
    }
    return std::nullopt;
  }
};

}  // namespace

ArgumentStructure derivation_to_structure(const DerivationNode& tree, Label first_label) {
  ToStructure t{first_label, {}};
  return t.build(tree);
}

std::optional<DerivationNode> structure_to_derivation(const ArgumentStructure& d, const Base& base, bool explosion) {
  FromStructure f{base, explosion};
  auto out = f.node(d, {});
  if (!out) return std::nullopt;
  if (replay_derivation(base, {}, *out, explosion)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class ArgumentParser {
 public:
  explicit ArgumentParser(std::string_view text) : text_(text) {}

  ArgumentStructure parse_all() {
    ArgumentStructure d = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return d;
  }

 private:
  ArgumentStructure parse_node() {
    skip_space();
    if (accept("[")) {
      const std::size_t start = pos_;
      const auto end = text_.find(']', pos_);
      if (end == std::string_view::npos) fail("expected ']'");
      Formula f = formula(text_.substr(start, end - start), start);
      pos_ = end + 1;
      return ArgumentStructure::assumption(f, parse_label());
    }
    if (accept("<")) {
      const std::size_t start = pos_;
      std::size_t end = pos_;
      while (end < text_.size() && !(text_[end] == '>' && (end == 0 || text_[end - 1] != '-'))) ++end;
      if (end == text_.size()) fail("expected '>'");
      Formula f = formula(text_.substr(start, end - start), start);
      pos_ = end + 1;
      return ArgumentStructure::axiom(f, parse_label());
    }
    const std::size_t name_start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(name_start, pos_ - name_start));
    if (name.empty()) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'" : "unexpected end of input");
    }
    std::optional<AtomicRule> hint;
    if (pos_ < text_.size() && text_[pos_] == '"') {
      const auto end = text_.find('"', pos_ + 1);
      if (end == std::string_view::npos) fail("unterminated rule hint");
      try {
        hint = parse_rule(text_.substr(pos_ + 1, end - pos_ - 1));
      } catch (const ParseError& e) {
        throw ParseError("bad rule hint", pos_ + 1 + e.position());
      }
      pos_ = end + 1;
    }
    if (!accept("(")) fail("expected '('");
    std::vector<Child> children;
    skip_space();
    if (!accept(")")) {
      do {
        children.push_back(parse_child());
      } while (accept(","));
      if (!accept(")")) fail("expected ')'");
    }
    std::optional<Label> label = parse_label();
    std::optional<Formula> concl;
    skip_space();
    if (accept(":")) {
      skip_space();
      const std::size_t start = pos_;
      int depth = 0;
      while (pos_ < text_.size()) {
        const char c = text_[pos_];
        if (c == '(') ++depth;
        if (c == ')') {
          if (depth == 0) break;
          --depth;
        }
        if (c == ',' && depth == 0) break;
        ++pos_;
      }
      concl = formula(text_.substr(start, pos_ - start), start);
    } else {
      concl = infer(name, children);
    }
    return ArgumentStructure::inference(*concl, std::move(children), name, label, hint);
  }

  Child parse_child() {
    skip_space();
    std::vector<Label> binds;
    if (accept("{")) {
      skip_space();
      if (!accept("}")) {
        do {
          binds.push_back(parse_int());
        } while (accept(","));
        if (!accept("}")) fail("expected '}'");
      }
    }
    return Child{parse_node(), std::move(binds)};
  }

  std::optional<Formula> infer(const std::string& name, const std::vector<Child>& ch) {
    auto c = [&](std::size_t i) { return ch.at(i).sub.conclusion(); };
    if (name == "andI" && ch.size() == 2) return Formula::conj(c(0), c(1));
    if (name == "andE1" && ch.size() == 1 && c(0).kind() == Connective::conj) return c(0).left();
    if (name == "andE2" && ch.size() == 1 && c(0).kind() == Connective::conj) return c(0).right();
    if (name == "orE" && ch.size() == 3) return c(1);
    if (name == "impE" && ch.size() == 2 && c(0).kind() == Connective::impl) return c(0).right();
    if (name == "orL" && ch.size() == 1 && c(0).kind() == Connective::disj) return c(0).left();
    fail("conclusion annotation ': A' required after " + name);
  }

  std::optional<Label> parse_label() {
    if (pos_ < text_.size() && text_[pos_] == '_') {
      ++pos_;
      return parse_int();
    }
    return std::nullopt;
  }

  Label parse_int() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a label number");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  Formula formula(std::string_view piece, std::size_t offset) {
    try {
      return parse_formula(piece);
    } catch (const ParseError& e) {
      const std::string what = e.what();
      throw ParseError(what.substr(0, what.rfind(" at position")), offset + e.position());
    }
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

void text_rec(const ArgumentStructure& d, std::string& out) {
  auto label = [&] {
    if (d.label()) out += "_" + std::to_string(*d.label());
  };
  if (d.is_top()) {
    out += (d.axiomatic() ? "<" : "[") + d.conclusion().text() + (d.axiomatic() ? ">" : "]");
    label();
    return;
  }
  out += d.rule();
  if (d.atomic_rule()) out += "\"" + d.atomic_rule()->text() + "\"";
  out += "(";
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    if (i) out += ", ";
    const auto& c = d.children()[i];
    if (!c.binds.empty()) {
      out += "{";
      for (std::size_t k = 0; k < c.binds.size(); ++k) out += (k ? "," : "") + std::to_string(c.binds[k]);
      out += "} ";
    }
    text_rec(c.sub, out);
  }
  out += ")";
  label();
  out += " : " + d.conclusion().text();
}

}  // namespace

ArgumentStructure parse_argument(std::string_view text) { return ArgumentParser(text).parse_all(); }

std::string to_text(const ArgumentStructure& d) {
  std::string out;
  text_rec(d, out);
  return out;
}

ArgumentStructure load_argument_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open argument file '" + path + "'");
  std::stringstream buf;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line = line.substr(0, hash);
    buf << line << '\n';
  }
  return parse_argument(buf.str());
}

nlohmann::json to_json(const ArgumentStructure& d) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : d.children()) children.push_back({{"binds", c.binds}, {"node", to_json(c.sub)}});
  nlohmann::json out = {{"formula", d.conclusion().text()},
                        {"axiomatic", d.axiomatic()},
                        {"label", d.label() ? nlohmann::json(*d.label()) : nlohmann::json(nullptr)},
                        {"top", d.is_top()},
                        {"children", children}};
  if (!d.is_top()) out["rule"] = d.rule();
  if (d.atomic_rule()) out["atomic_rule"] = d.atomic_rule()->text();
  return out;
}

ArgumentStructure argument_from_json(const nlohmann::json& j) {
  const Formula f = formula_from_json(j.at("formula"));
  std::optional<Label> label;
  if (j.contains("label") && !j.at("label").is_null()) label = j.at("label").get<Label>();
  if (j.value("top", false)) {
    return j.value("axiomatic", false) ? ArgumentStructure::axiom(f, label) : ArgumentStructure::assumption(f, label);
  }
  std::vector<Child> children;
  for (const auto& cj : j.at("children")) {
    children.push_back({argument_from_json(cj.at("node")), cj.value("binds", std::vector<Label>{})});
  }
  std::optional<AtomicRule> hint;
  if (j.contains("atomic_rule")) hint = parse_rule(j.at("atomic_rule").get<std::string>());
  return ArgumentStructure::inference(f, std::move(children), j.value("rule", std::string()), label, hint);
}

// ---------------------------------------------------------------------------

namespace {

struct Block {
  std::vector<std::string> lines;  // top to bottom, all of equal width
  std::size_t width = 0;
};

Block pad(Block b, std::size_t width) {
  const std::size_t left = (width - b.width) / 2;
  for (auto& l : b.lines) l = std::string(left, ' ') + l + std::string(width - b.width - left, ' ');
  b.width = width;
  return b;
}

Block render(const ArgumentStructure& d) {
  std::string label = d.label() ? "^" + std::to_string(*d.label()) : "";
  if (d.is_top()) {
    const std::string text = (d.axiomatic() ? "" : "[") + d.conclusion().text() + (d.axiomatic() ? "" : "]") + label;
    return Block{{text}, text.size()};
  }
  // Premises side by side, bottom-aligned.
  std::vector<Block> parts;
  std::size_t rows = 0;
  for (const auto& c : d.children()) {
    parts.push_back(render(c.sub));
    rows = std::max(rows, parts.back().lines.size());
  }
  Block top;
  for (std::size_t r = 0; r < rows; ++r) top.lines.emplace_back();
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& p = parts[i];
    const std::size_t offset = rows - p.lines.size();
    for (std::size_t r = 0; r < rows; ++r) {
      if (i) top.lines[r] += "   ";
      top.lines[r] += r < offset ? std::string(p.width, ' ') : p.lines[r - offset];
    }
    top.width += p.width + (i ? 3 : 0);
  }
  std::string name = d.rule();
  std::vector<Label> bound;
  for (const auto& c : d.children()) bound.insert(bound.end(), c.binds.begin(), c.binds.end());
  for (std::size_t k = 0; k < bound.size(); ++k) name += (k ? "," : " ") + std::to_string(bound[k]);
  name += label;
  const std::string concl = d.conclusion().text();
  const std::size_t bar = std::max(top.width, concl.size());
  Block body = pad(top, bar);
  body.lines.push_back(std::string(bar, '-'));
  Block c{{concl}, concl.size()};
  body.lines.push_back(pad(c, bar).lines[0]);
  // Rule name to the right of the bar.
  const std::size_t extra = name.size() + 1;
  for (std::size_t r = 0; r < body.lines.size(); ++r) {
    body.lines[r] += r + 2 == body.lines.size() ? " " + name : std::string(extra, ' ');
  }
  body.width = bar + extra;
  return body;
}

}  // namespace

std::string pretty_print(const ArgumentStructure& d) {
  Block b = render(d);
  std::string out;
  for (auto& l : b.lines) {
    while (!l.empty() && l.back() == ' ') l.pop_back();
    out += l + "\n";
  }
  return out;
}

}  // namespace pts
