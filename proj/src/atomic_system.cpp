#include "pts/atomic_system.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

namespace pts {

struct AtomicRule::Data {
  std::vector<Premise> premises;
  std::string conclusion;
  int level = 0;
  std::string text;
  std::size_t hash = 0;
};

namespace {

void check_atom_name(const std::string& name) {
  if (name != kBottomName && !is_identifier(name)) {
    throw std::invalid_argument("invalid atom name '" + name + "'");
  }
}

std::string premise_text(const AtomicRule::Premise& p) {
  if (p.discharged.empty()) return p.conclusion;
  std::string out = "[";
  for (std::size_t i = 0; i < p.discharged.size(); ++i) {
    if (i) out += ", ";
    out += p.discharged[i].text();
  }
  return out + " => " + p.conclusion + "]";
}

}  // namespace

AtomicRule::AtomicRule(std::string axiom) {
  check_atom_name(axiom);
  auto d = std::make_shared<Data>();
  d->conclusion = axiom;
  d->text = std::move(axiom);
  d->hash = std::hash<std::string>{}(d->text);
  data_ = std::move(d);
}

AtomicRule::AtomicRule(std::vector<Premise> premises, std::string conclusion) {
  check_atom_name(conclusion);
  auto d = std::make_shared<Data>();
  for (auto& p : premises) {
    check_atom_name(p.conclusion);
    std::sort(p.discharged.begin(), p.discharged.end());
    p.discharged.erase(std::unique(p.discharged.begin(), p.discharged.end()), p.discharged.end());
  }
  std::vector<std::pair<std::string, Premise>> keyed;
  for (auto& p : premises) keyed.emplace_back(premise_text(p), std::move(p));
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  keyed.erase(std::unique(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              keyed.end());

  d->conclusion = std::move(conclusion);
  if (keyed.empty()) {
    d->text = d->conclusion;
  } else {
    d->text = "(";
    int level = 0;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      if (i) d->text += ", ";
      d->text += keyed[i].first;
      int here = 0;
      for (const auto& c : keyed[i].second.discharged) here = std::max(here, 1 + c.level());
      level = std::max(level, here);
      d->premises.push_back(std::move(keyed[i].second));
    }
    d->level = 1 + level;
    d->text += " => " + d->conclusion + ")";
  }
  d->hash = std::hash<std::string>{}(d->text);
  data_ = std::move(d);
}

bool AtomicRule::is_axiom() const { return data_->premises.empty(); }
const std::string& AtomicRule::conclusion() const { return data_->conclusion; }
const std::vector<AtomicRule::Premise>& AtomicRule::premises() const { return data_->premises; }
int AtomicRule::level() const { return data_->level; }
const std::string& AtomicRule::text() const { return data_->text; }
std::size_t AtomicRule::hash() const { return data_->hash; }

bool operator==(const AtomicRule& a, const AtomicRule& b) {
  return a.data_ == b.data_ || (a.data_->hash == b.data_->hash && a.data_->text == b.data_->text);
}

std::strong_ordering operator<=>(const AtomicRule& a, const AtomicRule& b) {
  if (a.data_ == b.data_) return std::strong_ordering::equal;
  const int c = a.data_->text.compare(b.data_->text);
  if (c < 0) return std::strong_ordering::less;
  if (c > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------

Base::Base(std::vector<AtomicRule> rules, std::string name)
    : rules_(std::move(rules)), name_(std::move(name)) {
  std::sort(rules_.begin(), rules_.end());
  rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
}

bool Base::contains(const AtomicRule& r) const {
  return std::binary_search(rules_.begin(), rules_.end(), r);
}

int Base::level() const {
  int out = 0;
  for (const auto& r : rules_) out = std::max(out, r.level());
  return out;
}

namespace {

void collect_rule_atoms(const AtomicRule& r, AtomSet& out) {
  if (r.conclusion() != kBottomName) out.insert(r.conclusion());
  for (const auto& p : r.premises()) {
    if (p.conclusion != kBottomName) out.insert(p.conclusion);
    for (const auto& c : p.discharged) collect_rule_atoms(c, out);
  }
}

}  // namespace

AtomSet Base::atoms() const {
  AtomSet out;
  for (const auto& r : rules_) collect_rule_atoms(r, out);
  return out;
}

Base Base::extended(const std::vector<AtomicRule>& more) const {
  std::vector<AtomicRule> all = rules_;
  all.insert(all.end(), more.begin(), more.end());
  return Base(std::move(all), name_);
}

std::string Base::text() const {
  std::string out = "{";
  for (std::size_t i = 0; i < rules_.size(); ++i) {
    if (i) out += ", ";
    out += rules_[i].text();
  }
  return out + "}";
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::yes:
      return "yes";
    case Decision::no:
      return "no";
    case Decision::resource_limit:
      return "resource_limit";
  }
  return "?";
}

std::size_t DerivationNode::height() const {
  std::size_t h = 0;
  for (const auto& c : children) h = std::max(h, c.height());
  return 1 + h;
}

// ---------------------------------------------------------------------------

struct Deriver::Impl {
  static constexpr int kNone = -1;
  static constexpr int kExplode = -2;

  struct PremiseInfo {
    std::vector<int> discharged;  // sorted rule ids
    int atom;
  };
  struct RuleInfo {
    int conclusion;
    std::vector<PremiseInfo> premises;
  };
  struct Closure {
    std::vector<int> just;  // per atom: rule id, kNone or kExplode
  };

  DeriveOptions options;
  std::vector<AtomicRule> rule_objects;
  std::vector<RuleInfo> rules;
  std::map<std::string, int> rule_ids;
  std::map<std::string, int> atom_ids;
  std::vector<std::string> atom_names;
  std::vector<int> root;
  std::map<std::vector<int>, Closure> memo;
  std::size_t states = 0;

  int intern_atom(const std::string& name) {
    auto [it, fresh] = atom_ids.emplace(name, static_cast<int>(atom_names.size()));
    if (fresh) atom_names.push_back(name);
    return it->second;
  }

  int intern_rule(const AtomicRule& r) {
    if (auto it = rule_ids.find(r.text()); it != rule_ids.end()) return it->second;
    RuleInfo info;
    info.conclusion = intern_atom(r.conclusion());
    for (const auto& p : r.premises()) {
      PremiseInfo pi;
      pi.atom = intern_atom(p.conclusion);
      for (const auto& c : p.discharged) pi.discharged.push_back(intern_rule(c));
      std::sort(pi.discharged.begin(), pi.discharged.end());
      info.premises.push_back(std::move(pi));
    }
    const int id = static_cast<int>(rules.size());
    rules.push_back(std::move(info));
    rule_objects.push_back(r);
    rule_ids.emplace(r.text(), id);
    return id;
  }

  static std::vector<int> merge(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
  }

  bool premise_holds(const std::vector<int>& s, const Closure& here, const PremiseInfo& p) {
    if (std::includes(s.begin(), s.end(), p.discharged.begin(), p.discharged.end())) {
      return here.just[p.atom] != kNone;
    }
    return closure(merge(s, p.discharged)).just[p.atom] != kNone;
  }

  const Closure& closure(const std::vector<int>& s) {
    if (auto it = memo.find(s); it != memo.end()) return it->second;
    if (++states > options.max_states) {
      throw ResourceLimitExceeded("derivability search exceeded " +
                                  std::to_string(options.max_states) + " rule sets");
    }
    Closure c;
    c.just.assign(atom_names.size(), kNone);
    const int bot = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int r : s) {
        const RuleInfo& info = rules[r];
        if (c.just[info.conclusion] != kNone) continue;
        bool ok = true;
        for (const auto& p : info.premises) {
          if (!premise_holds(s, c, p)) {
            ok = false;
            break;
          }
        }
        if (ok) {
          c.just[info.conclusion] = r;
          changed = true;
        }
      }
      if (options.explosion && c.just[bot] != kNone) {
        for (auto& j : c.just) {
          if (j == kNone) j = kExplode;
        }
        break;
      }
    }
    return memo.emplace(s, std::move(c)).first->second;
  }

  DerivationNode build(const std::vector<int>& s, int atom) {
    const Closure& c = closure(s);
    const int j = c.just[atom];
    DerivationNode node;
    node.conclusion = atom_names[atom];
    if (j == kExplode) {
      node.children.push_back(build(s, 0));
      return node;
    }
    node.rule = rule_objects[j];
    const RuleInfo& info = rules[j];
    for (const auto& p : info.premises) {
      if (std::includes(s.begin(), s.end(), p.discharged.begin(), p.discharged.end())) {
        node.children.push_back(build(s, p.atom));
      } else {
        node.children.push_back(build(merge(s, p.discharged), p.atom));
      }
    }
    return node;
  }
};

Deriver::Deriver(const Base& base, std::vector<AtomicRule> assumed, DeriveOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->options = options;
  impl_->intern_atom(std::string(kBottomName));
  for (const auto& r : base.rules()) impl_->root.push_back(impl_->intern_rule(r));
  for (const auto& r : assumed) impl_->root.push_back(impl_->intern_rule(r));
  std::sort(impl_->root.begin(), impl_->root.end());
  impl_->root.erase(std::unique(impl_->root.begin(), impl_->root.end()), impl_->root.end());
}

Deriver::~Deriver() = default;

bool Deriver::derivable(const std::string& goal) {
  const auto& c = impl_->closure(impl_->root);
  auto it = impl_->atom_ids.find(goal);
  if (it == impl_->atom_ids.end()) return impl_->options.explosion && c.just[0] != Impl::kNone;
  return c.just[it->second] != Impl::kNone;
}

DeriveResult Deriver::derive(const std::string& goal) {
  check_atom_name(goal);
  DeriveResult out;
  try {
    if (!derivable(goal)) {
      out.decision = Decision::no;
      return out;
    }
    out.decision = Decision::yes;
    auto it = impl_->atom_ids.find(goal);
    if (it == impl_->atom_ids.end()) {
      DerivationNode node;
      node.conclusion = goal;
      node.children.push_back(impl_->build(impl_->root, 0));
      out.derivation = std::move(node);
    } else {
      out.derivation = impl_->build(impl_->root, it->second);
    }
  } catch (const ResourceLimitExceeded&) {
    out.decision = Decision::resource_limit;
    out.derivation.reset();
  }
  return out;
}

AtomSet Deriver::derivable_atoms() {
  const auto& c = impl_->closure(impl_->root);
  AtomSet out;
  for (std::size_t i = 0; i < c.just.size(); ++i) {
    if (c.just[i] != Impl::kNone) out.insert(impl_->atom_names[i]);
  }
  return out;
}

std::size_t Deriver::states_explored() const { return impl_->states; }

DeriveResult derive(const Base& base, const std::vector<AtomicRule>& assumed,
                    const std::string& goal, DeriveOptions options) {
  Deriver d(base, assumed, options);
  return d.derive(goal);
}

Decision check_consistency(const Base& base, DeriveOptions options) {
  Deriver d(base, {}, options);
  try {
    return d.derivable(std::string(kBottomName)) ? Decision::no : Decision::yes;
  } catch (const ResourceLimitExceeded&) {
    return Decision::resource_limit;
  }
}

namespace {

std::optional<std::string> replay_rec(const DerivationNode& node, const std::set<AtomicRule>& avail,
                                      bool explosion, const std::string& path) {
  if (!node.rule) {
    if (!explosion) return "node " + path + ": explosion step without the explosion option";
    if (node.children.size() != 1 || node.children[0].conclusion != kBottomName) {
      return "node " + path + ": explosion step must have one child concluding bot";
    }
    return replay_rec(node.children[0], avail, explosion, path + ".0");
  }
  const AtomicRule& r = *node.rule;
  if (!avail.count(r)) return "node " + path + ": rule " + r.text() + " is not available";
  if (r.conclusion() != node.conclusion) {
    return "node " + path + ": rule concludes " + r.conclusion() + ", node is " + node.conclusion;
  }
  if (node.children.size() != r.premises().size()) {
    return "node " + path + ": rule " + r.text() + " needs " + std::to_string(r.premises().size()) +
           " premises";
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const auto& p = r.premises()[i];
    const std::string child_path = path + "." + std::to_string(i);
    if (node.children[i].conclusion != p.conclusion) {
      return "node " + child_path + ": expected " + p.conclusion;
    }
    std::optional<std::string> err;
    if (p.discharged.empty()) {
      err = replay_rec(node.children[i], avail, explosion, child_path);
    } else {
      std::set<AtomicRule> more = avail;
      more.insert(p.discharged.begin(), p.discharged.end());
      err = replay_rec(node.children[i], more, explosion, child_path);
    }
    if (err) return err;
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> replay_derivation(const Base& base,
                                             const std::vector<AtomicRule>& assumed,
                                             const DerivationNode& tree, bool explosion) {
  std::set<AtomicRule> avail(base.rules().begin(), base.rules().end());
  avail.insert(assumed.begin(), assumed.end());
  return replay_rec(tree, avail, explosion, "0");
}

// ---------------------------------------------------------------------------

Formula atom_formula(const std::string& name) {
  return name == kBottomName ? Formula::bottom() : Formula::atom(name);
}

namespace {

Formula conjunction(const std::vector<Formula>& parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::conj(out, parts[i]);
  return out;
}

}  // namespace

Formula star_translate(const AtomicRule& rule) {
  if (rule.is_axiom()) return atom_formula(rule.conclusion());
  std::vector<Formula> parts;
  for (const auto& p : rule.premises()) {
    if (p.discharged.empty()) {
      parts.push_back(atom_formula(p.conclusion));
    } else {
      std::vector<Formula> hyp;
      for (const auto& c : p.discharged) hyp.push_back(star_translate(c));
      parts.push_back(Formula::impl(conjunction(hyp), atom_formula(p.conclusion)));
    }
  }
  return Formula::impl(conjunction(parts), atom_formula(rule.conclusion()));
}

std::vector<Formula> star_translate_base(const Base& base) {
  std::vector<Formula> out;
  for (const auto& r : base.rules()) out.push_back(star_translate(r));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------

namespace {

class RuleParser {
 public:
  explicit RuleParser(std::string_view text) : text_(text) {}

  AtomicRule parse_all() {
    AtomicRule r = parse_rule();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return r;
  }

 private:
  AtomicRule parse_rule() {
    skip_space();
    if (!accept("(")) return AtomicRule(parse_atom());
    std::vector<AtomicRule::Premise> premises;
    do {
      premises.push_back(parse_premise());
    } while (accept(","));
    expect("=>");
    std::string c = parse_atom();
    expect(")");
    return AtomicRule(std::move(premises), std::move(c));
  }

  AtomicRule::Premise parse_premise() {
    skip_space();
    AtomicRule::Premise p;
    if (!accept("[")) {
      p.conclusion = parse_atom();
      return p;
    }
    do {
      p.discharged.push_back(parse_rule());
    } while (accept(","));
    expect("=>");
    p.conclusion = parse_atom();
    expect("]");
    return p;
  }

  std::string parse_atom() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' ||
            (pos_ > start && text_[pos_] == '\''))) {
      ++pos_;
    }
    std::string word(text_.substr(start, pos_ - start));
    if (word.empty()) {
      fail(pos_ < text_.size() ? "unexpected '" + std::string(1, text_[pos_]) + "'"
                               : "unexpected end of input");
    }
    if (word != kBottomName && !is_identifier(word)) {
      pos_ = start;
      fail("invalid atom '" + word + "'");
    }
    return word;
  }

  bool accept(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(std::string_view token) {
    if (!accept(token)) fail("expected '" + std::string(token) + "'");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

AtomicRule parse_rule(std::string_view text) { return RuleParser(text).parse_all(); }

Base parse_base(std::string_view text, std::string name) {
  std::vector<AtomicRule> rules;
  std::size_t line_start = 0;
  int line_no = 0;
  while (line_start <= text.size()) {
    ++line_no;
    std::size_t end = text.find('\n', line_start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(line_start, end - line_start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) {
      line.remove_suffix(1);
    }
    if (!line.empty() && line.back() == '.') line.remove_suffix(1);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      try {
        rules.push_back(parse_rule(line));
      } catch (const ParseError& e) {
        const std::string what = e.what();
        throw ParseError("line " + std::to_string(line_no) + ": " +
                             what.substr(0, what.rfind(" at position")),
                         line_start + e.position());
      }
    }
    if (end == text.size()) break;
    line_start = end + 1;
  }
  return Base(std::move(rules), std::move(name));
}

Base load_base_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open base file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string name = path;
  if (auto slash = name.find_last_of('/'); slash != std::string::npos) name = name.substr(slash + 1);
  if (auto dot = name.rfind('.'); dot != std::string::npos && dot > 0) name = name.substr(0, dot);
  return parse_base(buf.str(), name);
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const AtomicRule& rule) {
  nlohmann::json premises = nlohmann::json::array();
  for (const auto& p : rule.premises()) {
    nlohmann::json discharged = nlohmann::json::array();
    for (const auto& c : p.discharged) discharged.push_back(to_json(c));
    premises.push_back({{"discharge", discharged}, {"conclusion", p.conclusion}});
  }
  return {{"conclusion", rule.conclusion()}, {"premises", premises}, {"level", rule.level()}};
}

AtomicRule rule_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_rule(j.get<std::string>());
  std::vector<AtomicRule::Premise> premises;
  if (j.contains("premises")) {
    for (const auto& pj : j.at("premises")) {
      AtomicRule::Premise p;
      p.conclusion = pj.at("conclusion").get<std::string>();
      if (pj.contains("discharge")) {
        for (const auto& cj : pj.at("discharge")) p.discharged.push_back(rule_from_json(cj));
      }
      premises.push_back(std::move(p));
    }
  }
  std::string c = j.at("conclusion").get<std::string>();
  if (premises.empty()) return AtomicRule(std::move(c));
  return AtomicRule(std::move(premises), std::move(c));
}

nlohmann::json to_json(const Base& base) {
  nlohmann::json rules = nlohmann::json::array();
  for (const auto& r : base.rules()) rules.push_back(to_json(r));
  nlohmann::json out = {{"rules", rules}, {"text", base.text()}};
  if (!base.name().empty()) out["name"] = base.name();
  return out;
}

Base base_from_json(const nlohmann::json& j) {
  std::vector<AtomicRule> rules;
  for (const auto& rj : j.at("rules")) rules.push_back(rule_from_json(rj));
  return Base(std::move(rules), j.value("name", std::string()));
}

nlohmann::json to_json(const DerivationNode& node) {
  nlohmann::json children = nlohmann::json::array();
  for (const auto& c : node.children) children.push_back(to_json(c));
  return {{"conclusion", node.conclusion},
          {"rule", node.rule ? nlohmann::json(node.rule->text()) : nlohmann::json("explosion")},
          {"children", children}};
}

// ---------------------------------------------------------------------------

std::vector<AtomicRule> enumerate_rules(const std::vector<std::string>& atoms, int max_level) {
  std::vector<std::string> targets = atoms;
  targets.emplace_back(kBottomName);
  auto simple = [](const std::string& a) {
    AtomicRule::Premise p;
    p.conclusion = a;
    return p;
  };
  std::vector<AtomicRule> out;
  for (const auto& a : atoms) out.emplace_back(a);
  if (max_level >= 1) {
    for (const auto& a : atoms) {
      for (const auto& c : targets) {
        if (c != a) out.emplace_back(std::vector<AtomicRule::Premise>{simple(a)}, c);
      }
    }
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      for (std::size_t k = i + 1; k < atoms.size(); ++k) {
        for (const auto& c : targets) {
          if (c == atoms[i] || c == atoms[k]) continue;
          out.emplace_back(std::vector<AtomicRule::Premise>{simple(atoms[i]), simple(atoms[k])}, c);
        }
      }
    }
  }
  if (max_level >= 2) {
    for (const auto& a : atoms) {
      for (const auto& b : atoms) {
        if (a == b) continue;
        for (const auto& c : targets) {
          AtomicRule::Premise p{{AtomicRule(a)}, b};
          out.emplace_back(std::vector<AtomicRule::Premise>{p}, c);
        }
      }
    }
  }
  if (max_level >= 3) {
    for (const auto& a : atoms) {
      for (const auto& b : atoms) {
        if (a == b) continue;
        const AtomicRule inner(std::vector<AtomicRule::Premise>{simple(a)}, b);
        for (const auto& c : atoms) {
          for (const auto& d : targets) {
            AtomicRule::Premise p{{inner}, c};
            out.emplace_back(std::vector<AtomicRule::Premise>{p}, d);
          }
        }
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const AtomicRule& x, const AtomicRule& y) {
    if (x.level() != y.level()) return x.level() < y.level();
    return x < y;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace pts
