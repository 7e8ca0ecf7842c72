#include "pts/reductions.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

namespace pts {

nlohmann::json Reduction::to_json() const {
  return {{"name", name()}, {"schematic", schematic()}};
}

namespace {

class SchemaReduction : public Reduction {
 public:
  using Fn = std::function<std::optional<ArgumentStructure>(const ArgumentStructure&)>;
  SchemaReduction(std::string name, Fn fn) : name_(std::move(name)), fn_(std::move(fn)) {}
  const std::string& name() const override { return name_; }
  std::optional<ArgumentStructure> apply(const ArgumentStructure& d) const override { return fn_(d); }
  bool schematic() const override { return true; }

 private:
  std::string name_;
  Fn fn_;
};

ArgumentStructure graft_all(ArgumentStructure body, const std::vector<Label>& labels, const ArgumentStructure& with) {
  for (Label l : labels) body = graft_label(body, l, with);
  return body;
}

std::optional<ArgumentStructure> contract_and(const ArgumentStructure& d) {
  const bool e1 = matches(Schema::and_elim1, d), e2 = matches(Schema::and_elim2, d);
  if (!(e1 || e2) || !matches(Schema::and_intro, d.child(0))) return std::nullopt;
  const std::size_t i = e1 && !(e2 && d.rule() == "andE2") ? 0 : 1;
  return d.child(0).child(i);
}

std::optional<ArgumentStructure> contract_or(const ArgumentStructure& d) {
  if (!matches(Schema::or_elim, d) || !matches(Schema::or_intro, d.child(0))) return std::nullopt;
  const ArgumentStructure& major = d.child(0);
  const ArgumentStructure& inner = major.child(0);
  const Formula& disj = major.conclusion();
  const bool left = inner.conclusion() == disj.left() && !(disj.left() == disj.right() && major.rule() == "orI2");
  const std::size_t minor = left ? 1 : 2;
  return graft_all(d.child(minor), d.binds(minor), inner);
}

std::optional<ArgumentStructure> contract_imp(const ArgumentStructure& d) {
  if (!matches(Schema::imp_elim, d) || !matches(Schema::imp_intro, d.child(0))) return std::nullopt;
  const ArgumentStructure& major = d.child(0);
  return graft_all(major.child(0), major.binds(0), d.child(1));
}

std::optional<ArgumentStructure> contract_wk(const ArgumentStructure& d) {
  if (!matches(Schema::weakening, d) || !matches(Schema::imp_intro, d.child(0))) return std::nullopt;
  const ArgumentStructure& major = d.child(0);
  const Formula& ac = d.conclusion().left();
  const Label m = d.max_label() + 1;
  const ArgumentStructure first = and_elim(1, ArgumentStructure::assumption(ac, m));
  ArgumentStructure body = graft_all(major.child(0), major.binds(0), first);
  return imp_intro(ac, m, body);
}

std::optional<ArgumentStructure> contract_or_lambda(const ArgumentStructure& d) {
  if (!matches(Schema::or_lambda, d) || !matches(Schema::or_intro, d.child(0))) return std::nullopt;
  const ArgumentStructure& inner = d.child(0).child(0);
  if (inner.conclusion() != d.conclusion()) return std::nullopt;
  return inner;
}

class PointerReduction : public Reduction {
 public:
  PointerReduction(const std::vector<ArgumentStructure>& inputs, const ArgumentStructure& target)
      : target_(target), inputs_(inputs.size()) {
    for (const auto& in : inputs) {
      if (!in.closed()) throw std::invalid_argument("pointer input must be closed");
    }
    if (!target.closed()) throw std::invalid_argument("pointer target must be closed");
    const ArgumentStructure domain = ArgumentStructure::step(target.conclusion(), inputs);
    domain_ = domain.fingerprint();
    name_ = "ptr:" + domain.hash_hex() + ">" + target.hash_hex();
  }
  const std::string& name() const override { return name_; }
  std::optional<ArgumentStructure> apply(const ArgumentStructure& d) const override {
    if (d.is_top() || d.fingerprint() != domain_) return std::nullopt;
    return target_;
  }
  bool schematic() const override { return false; }
  const std::string* exact_domain() const override { return &domain_; }
  nlohmann::json to_json() const override {
    return {{"name", name_}, {"schematic", false}, {"kind", "pointer"}, {"premises", inputs_},
            {"target", target_.hash_hex()}, {"conclusion", target_.conclusion().text()}};
  }

 private:
  ArgumentStructure target_;
  std::size_t inputs_;
  std::string domain_;
  std::string name_;
};

class ConstantReduction : public Reduction {
 public:
  ConstantReduction(std::vector<Formula> premises, const ArgumentStructure& target)
      : premises_(std::move(premises)), target_(target) {
    if (!target.closed()) throw std::invalid_argument("constant reduction target must be closed");
    std::string sig;
    for (const auto& p : premises_) sig += p.text() + ";";
    std::ostringstream h;
    h << std::hex << std::hash<std::string>{}(sig + "|" + target.conclusion().text());
    name_ = "const:" + h.str() + ">" + target.hash_hex();
  }
  const std::string& name() const override { return name_; }
  std::optional<ArgumentStructure> apply(const ArgumentStructure& d) const override {
    if (d.is_top() || d.label() || d.conclusion() != target_.conclusion()) return std::nullopt;
    if (d.children().size() != premises_.size()) return std::nullopt;
    for (std::size_t i = 0; i < premises_.size(); ++i) {
      if (d.child(i).conclusion() != premises_[i] || !d.binds(i).empty() || !d.child(i).closed()) {
        return std::nullopt;
      }
    }
    return target_;
  }
  bool schematic() const override { return false; }
  nlohmann::json to_json() const override {
    nlohmann::json ps = nlohmann::json::array();
    for (const auto& p : premises_) ps.push_back(p.text());
    return {{"name", name_}, {"schematic", false}, {"kind", "constant"}, {"premises", ps},
            {"target", target_.hash_hex()}, {"conclusion", target_.conclusion().text()}};
  }

 private:
  std::vector<Formula> premises_;
  ArgumentStructure target_;
  std::string name_;
};

}  // namespace

ReductionPtr phi_and() {
  static const ReductionPtr r = std::make_shared<SchemaReduction>("phi_and", contract_and);
  return r;
}
ReductionPtr phi_or() {
  static const ReductionPtr r = std::make_shared<SchemaReduction>("phi_or", contract_or);
  return r;
}
ReductionPtr phi_imp() {
  static const ReductionPtr r = std::make_shared<SchemaReduction>("phi_imp", contract_imp);
  return r;
}
ReductionPtr phi_wk() {
  static const ReductionPtr r = std::make_shared<SchemaReduction>("phi_wk", contract_wk);
  return r;
}
ReductionPtr phi_or_lambda() {
  static const ReductionPtr r = std::make_shared<SchemaReduction>("phi_or_lambda", contract_or_lambda);
  return r;
}

std::shared_ptr<const Reduction> pointer_reduction(const std::vector<ArgumentStructure>& inputs,
                                                   const ArgumentStructure& target) {
  return std::make_shared<PointerReduction>(inputs, target);
}

std::shared_ptr<const Reduction> constant_reduction(const std::vector<Formula>& premises,
                                                    const ArgumentStructure& target) {
  return std::make_shared<ConstantReduction>(premises, target);
}

// ---------------------------------------------------------------------------

ReductionSet::ReductionSet(const std::vector<ReductionPtr>& rs) {
  for (const auto& r : rs) insert(r);
}

void ReductionSet::insert(const ReductionPtr& r) {
  if (!by_name_.emplace(r->name(), r).second) return;
  if (const std::string* dom = r->exact_domain()) {
    indexed_[*dom].push_back(r);
  } else {
    general_.push_back(r);
    std::sort(general_.begin(), general_.end(),
              [](const ReductionPtr& a, const ReductionPtr& b) { return a->name() < b->name(); });
    if (!r->schematic()) has_unindexed_pointers_ = true;
  }
  rekey();
}

void ReductionSet::insert_all(const ReductionSet& other) {
  for (const auto& [n, r] : other.by_name_) {
    if (!by_name_.count(n)) insert(r);
  }
}

ReductionSet ReductionSet::united(const ReductionSet& other) const {
  ReductionSet out = *this;
  out.insert_all(other);
  return out;
}

bool ReductionSet::includes(const ReductionSet& other) const {
  for (const auto& [n, r] : other.by_name_) {
    if (!by_name_.count(n)) return false;
  }
  return true;
}

std::vector<std::string> ReductionSet::names() const {
  std::vector<std::string> out;
  for (const auto& [n, r] : by_name_) out.push_back(n);
  return out;
}

std::vector<ReductionPtr> ReductionSet::members() const {
  std::vector<ReductionPtr> out;
  for (const auto& [n, r] : by_name_) out.push_back(r);
  return out;
}

void ReductionSet::rekey() {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [n, r] : by_name_) {
    for (unsigned char c : n) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  }
  key_ = h;
}

std::vector<std::pair<ReductionPtr, ArgumentStructure>> ReductionSet::apply_all(const ArgumentStructure& d) const {
  std::vector<std::pair<ReductionPtr, ArgumentStructure>> out;
  if (d.is_top()) return out;
  for (const auto& r : general_) {
    if (auto res = r->apply(d)) out.emplace_back(r, std::move(*res));
  }
  if (!indexed_.empty()) {
    if (auto it = indexed_.find(d.fingerprint()); it != indexed_.end()) {
      for (const auto& r : it->second) {
        if (auto res = r->apply(d)) out.emplace_back(r, std::move(*res));
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first->name() < b.first->name(); });
  return out;
}

nlohmann::json ReductionSet::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [n, r] : by_name_) out.push_back(r->to_json());
  return out;
}

ReductionSet standard_reductions() {
  return ReductionSet({phi_and(), phi_or(), phi_imp(), phi_wk(), phi_or_lambda()});
}

ReductionSet reductions_by_names(const std::string& names) {
  if (names == "std") return standard_reductions();
  ReductionSet out;
  if (names == "none" || names.empty()) return out;
  std::stringstream in(names);
  std::string name;
  while (std::getline(in, name, ',')) {
    name.erase(0, name.find_first_not_of(" \t"));
    name.erase(name.find_last_not_of(" \t") + 1);
    ReductionPtr r;
    for (const auto& c : {phi_and(), phi_or(), phi_imp(), phi_wk(), phi_or_lambda()}) {
      if (c->name() == name) r = c;
    }
    if (!r) throw std::invalid_argument("unknown reduction '" + name + "'");
    out.insert(r);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Reduct> reduce_step(const ArgumentStructure& d, const ReductionSet& j) {
  std::vector<Reduct> out;
  std::unordered_set<std::string> seen;
  for (const auto& p : positions(d)) {
    const ArgumentStructure& sub = subtree(d, p);
    for (auto& [r, res] : j.apply_all(sub)) {
      try {
        ArgumentStructure whole = replace(d, p, res);
        if (seen.insert(whole.fingerprint()).second) out.push_back({p, r->name(), std::move(whole)});
      } catch (const std::invalid_argument&) {
        // A reduct that cannot be put back in place is not a reduct of d.
      }
    }
  }
  return out;
}

nlohmann::json to_json(const TraceStep& s) {
  return {{"position", s.position}, {"reduction", s.reduction}, {"before", s.before}, {"after", s.after}};
}

nlohmann::json to_json(const std::vector<TraceStep>& path) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& s : path) out.push_back(to_json(s));
  return out;
}

ReduceOutcome search_reducts(const ArgumentStructure& d, const ReductionSet& j, std::size_t budget,
                             const std::function<Decision(const ArgumentStructure&)>& accept) {
  struct Visited {
    ArgumentStructure structure;
    int parent;
    TraceStep step;
  };
  ReduceOutcome out;
  std::vector<Visited> nodes{{d, -1, {}}};
  std::unordered_set<std::string> seen{d.fingerprint()};
  std::deque<int> queue{0};
  bool inconclusive = false;
  bool exhausted_budget = false;

  auto path_to = [&](int i) {
    std::vector<TraceStep> path;
    for (; nodes[i].parent >= 0; i = nodes[i].parent) path.push_back(nodes[i].step);
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!queue.empty()) {
    const int i = queue.front();
    queue.pop_front();
    const ArgumentStructure current = nodes[i].structure;
    const Decision verdict = accept(current);
    if (verdict == Decision::yes) {
      out.decision = Decision::yes;
      out.found = current;
      out.path = path_to(i);
      return out;
    }
    if (verdict == Decision::resource_limit) inconclusive = true;
    if (exhausted_budget) continue;
    for (auto& r : reduce_step(current, j)) {
      if (out.steps >= budget) {
        exhausted_budget = true;
        break;
      }
      ++out.steps;
      if (!seen.insert(r.result.fingerprint()).second) continue;
      TraceStep step{path_text(r.position), r.reduction, current.hash_hex(), r.result.hash_hex()};
      nodes.push_back({std::move(r.result), i, std::move(step)});
      queue.push_back(static_cast<int>(nodes.size()) - 1);
    }
  }
  out.decision = (inconclusive || exhausted_budget) ? Decision::resource_limit : Decision::no;
  return out;
}

ReduceOutcome reduces_to(const ArgumentStructure& d, const ArgumentStructure& target, const ReductionSet& j,
                         std::size_t budget) {
  return search_reducts(d, j, budget, [&](const ArgumentStructure& s) {
    return s == target ? Decision::yes : Decision::no;
  });
}

}  // namespace pts
