// Copyright 2026 The ptsem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ptsem/atomic_system.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ptsem {

static void require_atom_token(const std::string& s, const char* where) {
  if (s != kBottomName && !is_valid_atom_name(s)) {
    throw ValidationError(std::string(where) + ": bad atom token '" + s + "'");
  }
}

AtomicRule::AtomicRule(std::vector<Slot> slots, std::string conclusion)
    : slots_(std::move(slots)), conclusion_(std::move(conclusion)) {
  require_atom_token(conclusion_, "rule conclusion");
  for (auto& slot : slots_) {
    require_atom_token(slot.premise, "rule premise");
    std::sort(slot.discharges.begin(), slot.discharges.end());
    slot.discharges.erase(
        std::unique(slot.discharges.begin(), slot.discharges.end()),
        slot.discharges.end());
  }
}

AtomicRule AtomicRule::axiom(const std::string& conclusion) {
  return AtomicRule({}, conclusion);
}

AtomicRule AtomicRule::simple(const std::vector<std::string>& premises,
                              const std::string& conclusion) {
  std::vector<Slot> slots;
  slots.reserve(premises.size());
  for (const auto& p : premises) slots.push_back(Slot{{}, p});
  return AtomicRule(std::move(slots), conclusion);
}

int AtomicRule::level() const {
  if (slots_.empty()) return 0;
  int max_discharged = -1;
  for (const auto& slot : slots_) {
    for (const auto& r : slot.discharges) {
      max_discharged = std::max(max_discharged, r.level());
    }
  }
  return max_discharged < 0 ? 1 : max_discharged + 2;
}

int AtomicRule::compare(const AtomicRule& o) const {
  if (int c = conclusion_.compare(o.conclusion_)) return c;
  if (slots_.size() != o.slots_.size()) {
    return slots_.size() < o.slots_.size() ? -1 : 1;
  }
  for (std::size_t i = 0; i < slots_.size(); ++i) {
    if (int c = slots_[i].premise.compare(o.slots_[i].premise)) return c;
    const auto& da = slots_[i].discharges;
    const auto& db = o.slots_[i].discharges;
    if (da.size() != db.size()) return da.size() < db.size() ? -1 : 1;
    for (std::size_t j = 0; j < da.size(); ++j) {
      if (int c = da[j].compare(db[j])) return c;
    }
  }
  return 0;
}

std::string print_rule(const AtomicRule& r) {
  std::string out = "(rule";
  for (const auto& slot : r.slots()) {
    out += " (";
    if (!slot.discharges.empty()) {
      out += '(';
      for (std::size_t i = 0; i < slot.discharges.size(); ++i) {
        if (i) out += ' ';
        out += print_rule(slot.discharges[i]);
      }
      out += ") ";
    }
    out += slot.premise;
    out += ')';
  }
  out += " => ";
  out += r.conclusion();
  out += ')';
  return out;
}

AtomicRule ae_rule(const std::string& conclusion) {
  return AtomicRule::simple({kBottomName}, conclusion);
}

bool is_ae_rule(const AtomicRule& r) {
  return r.slots().size() == 1 && r.slots()[0].premise == kBottomName &&
         r.slots()[0].discharges.empty();
}

Base::Base(std::vector<AtomicRule> rules) : rules_(std::move(rules)) {
  std::sort(rules_.begin(), rules_.end());
  rules_.erase(std::unique(rules_.begin(), rules_.end()), rules_.end());
}

bool Base::contains(const AtomicRule& r) const {
  return std::binary_search(rules_.begin(), rules_.end(), r);
}

int Base::level() const {
  int lvl = 0;
  for (const auto& r : rules_) lvl = std::max(lvl, r.level());
  return lvl;
}

Base Base::union_with(const Base& other) const {
  std::vector<AtomicRule> all = rules_;
  all.insert(all.end(), other.rules_.begin(), other.rules_.end());
  return Base(std::move(all));
}

Base Base::with(const AtomicRule& extra) const {
  std::vector<AtomicRule> all = rules_;
  all.push_back(extra);
  return Base(std::move(all));
}

std::string Base::fingerprint() const {
  std::string fp;
  for (const auto& r : rules_) {
    fp += print_rule(r);
    fp += ';';
  }
  return fp;
}

bool extends(const Base& c, const Base& b) {
  return std::includes(c.rules().begin(), c.rules().end(), b.rules().begin(),
                       b.rules().end());
}

AtomicDerivation::AtomicDerivation(AtomicRule rule,
                                   std::vector<AtomicDerivation> children)
    : rule_(std::move(rule)), children_(std::move(children)) {
  if (children_.size() != rule_.slots().size()) {
    throw ValidationError("derivation node arity does not match its rule");
  }
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (children_[i].conclusion() != rule_.slots()[i].premise) {
      throw ValidationError("child derives '" + children_[i].conclusion() +
                            "' where rule expects '" +
                            rule_.slots()[i].premise + "'");
    }
  }
}

std::size_t AtomicDerivation::node_count() const {
  std::size_t n = 1;
  for (const auto& c : children_) n += c.node_count();
  return n;
}

bool AtomicDerivation::operator==(const AtomicDerivation& o) const {
  return rule_ == o.rule_ && children_ == o.children_;
}

namespace {

// The rules available at a point of a derivation: the permanent stock
// (assumed + base) plus discharge activations from enclosing slots.
struct RuleContext {
  std::vector<AtomicRule> rules;  // sorted, unique

  static RuleContext make(const std::vector<AtomicRule>& assumed,
                          const Base& b) {
    RuleContext ctx;
    ctx.rules = b.rules();
    ctx.rules.insert(ctx.rules.end(), assumed.begin(), assumed.end());
    std::sort(ctx.rules.begin(), ctx.rules.end());
    ctx.rules.erase(std::unique(ctx.rules.begin(), ctx.rules.end()),
                    ctx.rules.end());
    return ctx;
  }

  RuleContext extended(const std::vector<AtomicRule>& extra) const {
    if (extra.empty()) return *this;
    RuleContext out = *this;
    out.rules.insert(out.rules.end(), extra.begin(), extra.end());
    std::sort(out.rules.begin(), out.rules.end());
    out.rules.erase(std::unique(out.rules.begin(), out.rules.end()),
                    out.rules.end());
    return out;
  }

  bool contains(const AtomicRule& r) const {
    return std::binary_search(rules.begin(), rules.end(), r);
  }

  std::string fingerprint() const {
    std::string fp;
    for (const auto& r : rules) {
      fp += print_rule(r);
      fp += ';';
    }
    return fp;
  }
};

bool check_node(const AtomicDerivation& d, const RuleContext& ctx,
                std::string& reason) {
  const AtomicRule& r = d.rule();
  if (!ctx.contains(r) && !is_ae_rule(r)) {
    reason = "rule " + print_rule(r) + " concluding '" + d.conclusion() +
             "' is neither available nor discharged";
    return false;
  }
  for (std::size_t i = 0; i < d.children().size(); ++i) {
    RuleContext inner = ctx.extended(r.slots()[i].discharges);
    if (!check_node(d.children()[i], inner, reason)) return false;
  }
  return true;
}

}  // namespace

CheckResult check_derivation(const AtomicDerivation& d,
                             const std::vector<AtomicRule>& assumed,
                             const Base& b) {
  RuleContext ctx = RuleContext::make(assumed, b);
  CheckResult res;
  res.ok = check_node(d, ctx, res.reason);
  return res;
}

namespace {

// Complete depth-first search with tabling.  Successes are always cached;
// failures are cached only when they did not depend on a goal that was still
// on the call path (a provisional failure may be revised once the ancestor
// resolves, so caching it would be unsound).
class DeriveSearch {
 public:
  explicit DeriveSearch(std::size_t cap) : cap_(cap) {}

  struct Outcome {
    DeriveStatus status;
    std::optional<AtomicDerivation> tree;
    bool touched_in_progress = false;
  };

  Outcome run(const std::string& goal, const RuleContext& ctx) {
    std::string key = goal + '|' + ctx.fingerprint();
    if (auto it = found_.find(key); it != found_.end()) {
      return {DeriveStatus::Derived, it->second, false};
    }
    if (failed_.count(key)) {
      return {DeriveStatus::NotDerivable, std::nullopt, false};
    }
    if (in_progress_.count(key)) {
      return {DeriveStatus::NotDerivable, std::nullopt, true};
    }
    if (expansions_ >= cap_) {
      return {DeriveStatus::CapExhausted, std::nullopt, false};
    }
    ++expansions_;
    in_progress_.insert(key);
    Outcome out = expand(goal, ctx);
    in_progress_.erase(key);
    if (out.status == DeriveStatus::Derived) {
      found_.emplace(key, *out.tree);
      out.touched_in_progress = false;
    } else if (out.status == DeriveStatus::NotDerivable &&
               !out.touched_in_progress) {
      failed_.insert(key);
    }
    return out;
  }

  std::size_t expansions() const { return expansions_; }

 private:
  Outcome expand(const std::string& goal, const RuleContext& ctx) {
    bool touched = false;
    bool capped = false;
    // Candidate applications in canonical order; absurdity last.
    std::vector<AtomicRule> candidates;
    for (const auto& r : ctx.rules) {
      if (r.conclusion() == goal) candidates.push_back(r);
    }
    AtomicRule ae = ae_rule(goal);
    if (!ctx.contains(ae)) candidates.push_back(ae);
    for (const auto& r : candidates) {
      std::vector<AtomicDerivation> children;
      bool ok = true;
      for (const auto& slot : r.slots()) {
        Outcome sub = run(slot.premise, ctx.extended(slot.discharges));
        touched |= sub.touched_in_progress;
        if (sub.status == DeriveStatus::CapExhausted) capped = true;
        if (sub.status != DeriveStatus::Derived) {
          ok = false;
          break;
        }
        children.push_back(std::move(*sub.tree));
      }
      if (ok) {
        return {DeriveStatus::Derived,
                AtomicDerivation(r, std::move(children)), false};
      }
    }
    if (capped) return {DeriveStatus::CapExhausted, std::nullopt, touched};
    return {DeriveStatus::NotDerivable, std::nullopt, touched};
  }

  std::size_t cap_;
  std::size_t expansions_ = 0;
  std::map<std::string, AtomicDerivation> found_;
  std::set<std::string> failed_;
  std::set<std::string> in_progress_;
};

}  // namespace

DeriveResult derive(const std::string& goal,
                    const std::vector<AtomicRule>& assumed, const Base& b,
                    std::size_t expansion_cap) {
  require_atom_token(goal, "derive goal");
  DeriveSearch search(expansion_cap);
  auto out = search.run(goal, RuleContext::make(assumed, b));
  DeriveResult res;
  res.status = out.status;
  res.derivation = std::move(out.tree);
  res.expansions = search.expansions();
  return res;
}

}  // namespace ptsem
