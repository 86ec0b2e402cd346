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

#include "ptsem/validity.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ptsem/errors.hpp"

namespace ptsem {

namespace {

FormulaPtr atomic_label(const std::string& s) {
  return s == print_formula(Formula::bottom()) ? Formula::bottom()
                                               : Formula::atom(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// reconstruct_derivation

namespace {

Reconstruction reconstruct_fail(std::string reason) {
  Reconstruction r;
  r.reason = std::move(reason);
  return r;
}

}  // namespace

Reconstruction reconstruct_derivation(const ArgStructure& d, const Base& b) {
  if (!is_atomic_derivation_shape(d)) {
    return reconstruct_fail(
        "not a derivation shape: every label must be atomic and every leaf "
        "an axiom-leaf");
  }

  // The rule a binding makes the bound node assume: an axiom for a leaf, a
  // discharge-free rule over the child labels for an inner node.
  auto assumed_rule_of = [&](NodeId item) {
    const auto& node = d.node(item);
    std::string concl = print_formula(node.label);
    if (node.children.empty()) return AtomicRule::axiom(concl);
    std::vector<std::string> prem;
    prem.reserve(node.children.size());
    for (NodeId c : node.children) prem.push_back(print_formula(d.node(c).label));
    return AtomicRule::simple(prem, concl);
  };

  std::map<NodeId, std::vector<std::pair<NodeId, AtomicRule>>> bound_to;
  for (const auto& [item, binder] : d.h()) {
    bound_to[binder].emplace_back(item, assumed_rule_of(item));
  }
  for (const auto& [item, binder] : d.g()) {
    bound_to[binder].emplace_back(item, assumed_rule_of(item));
  }

  // Which child branch of `binder` contains `item`.
  auto branch_of = [&](NodeId binder, NodeId item) -> std::size_t {
    NodeId prev = item;
    NodeId cur = item;
    while (cur != binder) {
      prev = cur;
      cur = d.parent(cur);
    }
    const auto& kids = d.node(binder).children;
    for (std::size_t i = 0; i < kids.size(); ++i) {
      if (kids[i] == prev) return i;
    }
    return 0;  // unreachable: a binder is a strict ancestor of its items
  };

  const std::size_t n = d.size();
  std::vector<std::optional<AtomicRule>> chosen(n);
  for (NodeId id = 0; id < static_cast<NodeId>(n); ++id) {
    const auto& node = d.node(id);

    // What each premiss slot of this node's rule would have to discharge.
    std::vector<std::vector<AtomicRule>> required(node.children.size());
    auto bound_it = bound_to.find(id);
    if (bound_it != bound_to.end()) {
      for (const auto& [item, rule] : bound_it->second) {
        required[branch_of(id, item)].push_back(rule);
      }
    }

    const bool is_bound = d.h().count(id) > 0 || d.g().count(id) > 0;
    if (is_bound) {
      // A rule assumed by discharge has discharge-free slots, so nothing
      // may in turn be bound to this node.
      for (const auto& req : required) {
        if (!req.empty()) {
          return reconstruct_fail(
              "node " + std::to_string(id) +
              " applies a rule assumed by discharge, which cannot itself "
              "discharge");
        }
      }
      chosen[id] = assumed_rule_of(id);
      continue;
    }

    const std::string concl = print_formula(node.label);
    if (node.children.empty()) {
      AtomicRule ax = AtomicRule::axiom(concl);
      if (!b.contains(ax)) {
        return reconstruct_fail("axiom-leaf '" + concl +
                                "' has no axiom in the base");
      }
      chosen[id] = std::move(ax);
      continue;
    }

    std::vector<std::string> prem;
    prem.reserve(node.children.size());
    for (NodeId c : node.children) prem.push_back(print_formula(d.node(c).label));

    auto usable = [&](const AtomicRule& r) {
      if (r.conclusion() != concl) return false;
      if (r.slots().size() != prem.size()) return false;
      for (std::size_t i = 0; i < prem.size(); ++i) {
        if (r.slots()[i].premise != prem[i]) return false;
        const auto& ds = r.slots()[i].discharges;
        for (const auto& need : required[i]) {
          if (std::find(ds.begin(), ds.end(), need) == ds.end()) return false;
        }
      }
      return true;
    };

    for (const auto& r : b.rules()) {
      if (usable(r)) {
        chosen[id] = r;
        break;
      }
    }
    if (!chosen[id].has_value() && prem.size() == 1 &&
        prem[0] == print_formula(Formula::bottom())) {
      AtomicRule ab = ae_rule(concl);
      if (usable(ab)) chosen[id] = std::move(ab);
    }
    if (!chosen[id].has_value()) {
      return reconstruct_fail("no available rule concludes '" + concl +
                              "' from its premisses at node " +
                              std::to_string(id));
    }
  }

  std::function<AtomicDerivation(NodeId)> build = [&](NodeId id) {
    std::vector<AtomicDerivation> kids;
    for (NodeId c : d.node(id).children) kids.push_back(build(c));
    return AtomicDerivation(*chosen[id], std::move(kids));
  };
  AtomicDerivation der = build(d.root());

  const CheckResult chk = check_derivation(der, {}, b);
  if (!chk.ok) {
    return reconstruct_fail("reconstructed derivation fails re-checking: " +
                            chk.reason);
  }
  Reconstruction out;
  out.ok = true;
  out.derivation = std::move(der);
  return out;
}

// ---------------------------------------------------------------------------
// derivation_to_structure

ArgStructure derivation_to_structure(const AtomicDerivation& der,
                                     const Base& b) {
  RawArg raw;
  struct Frame {
    NodeId node;
    const AtomicRule* rule;
    std::size_t slot;
  };
  std::vector<Frame> stack;

  std::function<NodeId(const AtomicDerivation&)> emit =
      [&](const AtomicDerivation& n) -> NodeId {
    ArgStructure::Node node;
    node.label = atomic_label(n.conclusion());
    node.leaf = n.children().empty() ? LeafKind::Axiom : LeafKind::None;
    const NodeId id = raw.add(std::move(node));

    const AtomicRule& r = n.rule();
    if (!b.contains(r) && !is_ae_rule(r)) {
      const Frame* binder = nullptr;
      for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
        const auto& ds = it->rule->slots()[it->slot].discharges;
        if (std::find(ds.begin(), ds.end(), r) != ds.end()) {
          binder = &*it;
          break;
        }
      }
      if (binder == nullptr) {
        throw DomainError("rule " + print_rule(r) +
                          " is neither in the base nor discharged by an "
                          "enclosing slot");
      }
      if (r.is_axiom()) {
        raw.h[id] = binder->node;
      } else if (r.level() == 1) {
        raw.g[id] = binder->node;
      } else {
        throw DomainError(
            "discharged rules above level one have no argument-structure "
            "counterpart");
      }
    }

    for (std::size_t i = 0; i < n.children().size(); ++i) {
      stack.push_back({id, &r, i});
      const NodeId cid = emit(n.children()[i]);
      stack.pop_back();
      raw.nodes[id].children.push_back(cid);
    }
    return id;
  };

  emit(der);
  raw.root = 0;
  return std::move(raw).freeze();
}

// ---------------------------------------------------------------------------
// axiomize_assumptions

std::pair<ArgStructure, Base> axiomize_assumptions(const ArgStructure& d,
                                                   const Base& b) {
  RawArg raw = RawArg::from(d);
  Base ext = b;
  for (NodeId leaf : d.open_assumption_leaves()) {
    raw.nodes[leaf].leaf = LeafKind::Axiom;
    ext = ext.with(AtomicRule::axiom(print_formula(d.node(leaf).label)));
  }
  return {std::move(raw).freeze(), std::move(ext)};
}

// ---------------------------------------------------------------------------
// ClosedArgCatalog

void ClosedArgCatalog::add(FormulaPtr formula, ArgStructure structure,
                           Justification justification) {
  if (!is_closed(structure)) {
    throw ValidationError("catalog entries must be closed structures");
  }
  if (!equal(structure.conclusion(), formula)) {
    throw ValidationError("catalog entry must conclude its stated formula");
  }
  entries_.push_back(
      {std::move(formula), std::move(structure), std::move(justification)});
}

std::vector<const ClosedArgCatalog::Entry*> ClosedArgCatalog::entries_for(
    const FormulaPtr& formula) const {
  std::vector<const Entry*> out;
  for (const auto& e : entries_) {
    if (equal(e.formula, formula)) out.push_back(&e);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The validity checker.

namespace {

struct Ctx {
  const ValidityOptions* opts;
  const ClosedArgCatalog* catalog;
  const ExtensionPool* pool;
};

struct SearchOut {
  std::vector<ReductionTrace> hits;  // breadth-first order
  bool truncated = false;
};

// Breadth-first closure of d under the justification's rewrites, collecting
// the members that satisfy pred (d itself first).  Successors are taken in
// canonical order — positions ascending, rewrites by name — so the result
// is deterministic.
template <typename Pred>
SearchOut search_reachable(const ArgStructure& d, const Justification& j,
                           std::size_t step_cap, std::size_t visit_cap,
                           std::size_t max_hits, Pred&& pred) {
  SearchOut out;
  struct Item {
    ArgStructure s;
    std::vector<ReductionStep> steps;
  };
  std::deque<Item> queue;
  std::set<std::string> visited;
  queue.push_back({d, {}});
  visited.insert(d.canonical_string());

  while (!queue.empty()) {
    Item cur = std::move(queue.front());
    queue.pop_front();

    if (pred(cur.s)) {
      out.hits.push_back(ReductionTrace{d, cur.steps});
      if (out.hits.size() >= max_hits) return out;
    }
    if (cur.steps.size() >= step_cap) {
      out.truncated = true;
      continue;
    }
    for (NodeId pos = 0; pos < static_cast<NodeId>(cur.s.size()); ++pos) {
      for (const auto& r : j.reductions()) {
        std::optional<ArgStructure> next;
        try {
          next = apply_at(cur.s, pos, r);
        } catch (const DomainError&) {
          continue;
        }
        if (!visited.insert(next->canonical_string()).second) continue;
        if (visited.size() > visit_cap) {
          out.truncated = true;
          return out;
        }
        auto steps = cur.steps;
        steps.push_back({pos, r.name, *next});
        queue.push_back({std::move(*next), std::move(steps)});
      }
    }
  }
  return out;
}

ValidityVerdict open_impl(const ArgStructure& d, const Justification& j,
                          const Base& b, const Ctx& ctx, std::size_t depth);

ValidityVerdict closed_impl(const ArgStructure& d, const Justification& j,
                            const Base& b, const Ctx& ctx, std::size_t depth) {
  const ValidityOptions& o = *ctx.opts;
  if (depth > o.recursion_limit) {
    return ValidityVerdict::inconclusive("validity recursion limit reached");
  }
  const std::string bounds = "rewrite search bounded by depth " +
                             std::to_string(o.step_cap) + " and " +
                             std::to_string(o.visit_cap) + " states";

  if (d.conclusion()->is_atomic()) {
    // A closed argument for an atom must rewrite to a derivation over b.
    Reconstruction found;
    SearchOut res = search_reachable(
        d, j, o.step_cap, o.visit_cap, 1, [&](const ArgStructure& s) {
          Reconstruction r = reconstruct_derivation(s, b);
          if (!r.ok) return false;
          found = std::move(r);
          return true;
        });
    if (!res.hits.empty()) {
      auto v = ValidityVerdict::valid("rewrites to a derivation the base accepts");
      v.trace = std::move(res.hits.front());
      v.witness = std::move(found.derivation);
      v.bounds = bounds;
      return v;
    }
    if (res.truncated) {
      auto v = ValidityVerdict::inconclusive(
          "rewrite budget exhausted before a derivation over the base was "
          "found");
      v.bounds = bounds;
      return v;
    }
    auto v = ValidityVerdict::invalid(
        "no reachable rewrite is a derivation over the base");
    v.bounds = bounds;
    return v;
  }

  // A closed argument for a compound must rewrite to an introduction whose
  // sub-arguments are valid; open sub-arguments (the discharged-assumption
  // case) go through the bounded open clause.
  SearchOut res = search_reachable(
      d, j, o.step_cap, o.visit_cap, std::numeric_limits<std::size_t>::max(),
      [](const ArgStructure& s) { return is_canonical(s); });

  bool saw_inconclusive = false;
  std::string last_failure;
  for (auto& hit : res.hits) {
    const ArgStructure& cand = hit.last();
    bool all_valid = true;
    for (const ArgStructure& sub : immediate_substructures(cand)) {
      const ValidityVerdict sv = is_closed(sub)
                                     ? closed_impl(sub, j, b, ctx, depth + 1)
                                     : open_impl(sub, j, b, ctx, depth + 1);
      if (sv.is_valid()) continue;
      all_valid = false;
      if (sv.is_inconclusive()) saw_inconclusive = true;
      last_failure = sv.reason;
      break;
    }
    if (all_valid) {
      auto v = ValidityVerdict::valid(
          "rewrites to an introduction whose sub-arguments are valid");
      v.trace = std::move(hit);
      v.bounds = bounds;
      return v;
    }
  }
  if (res.truncated || saw_inconclusive) {
    auto v = ValidityVerdict::inconclusive(
        res.hits.empty()
            ? "rewrite budget exhausted before an introduction form was found"
            : "no introduction form validated conclusively: " + last_failure);
    v.bounds = bounds;
    return v;
  }
  auto v = ValidityVerdict::invalid(
      res.hits.empty()
          ? "no reachable rewrite ends in an introduction"
          : "every reachable introduction has an invalid sub-argument: " +
                last_failure);
  v.bounds = bounds;
  return v;
}

ValidityVerdict open_impl(const ArgStructure& d, const Justification& j,
                          const Base& b, const Ctx& ctx, std::size_t depth) {
  const ValidityOptions& o = *ctx.opts;
  if (depth > o.recursion_limit) {
    return ValidityVerdict::inconclusive("validity recursion limit reached");
  }

  const std::vector<FormulaPtr> gamma = d.open_assumptions();
  std::vector<std::vector<const ClosedArgCatalog::Entry*>> options;
  std::vector<std::string> uncovered;
  for (const auto& a : gamma) {
    auto es = ctx.catalog->entries_for(a);
    if (es.empty()) uncovered.push_back(print_formula(a));
    options.push_back(std::move(es));
  }
  const auto subsets = pool_subsets(*ctx.pool);

  std::size_t checked = 0;
  bool saw_inconclusive = false;
  bool budget_exhausted = false;
  std::string pending_note = "a combination did not resolve";

  if (uncovered.empty()) {
    for (const auto& subset : subsets) {
      const Base c = pool_extension(b, *ctx.pool, subset);
      std::vector<std::size_t> pick(gamma.size(), 0);
      bool more = true;
      while (more) {
        if (checked >= o.max_assignments) {
          budget_exhausted = true;
          break;
        }
        ++checked;

        // Close each assumption with its picked catalog entry; the entry
        // must itself be valid here, relative to j extended with the
        // entry's own justification.
        Justification combined = j;
        SigmaAssignment sigma;
        bool gate_ok = true;
        for (std::size_t i = 0; i < gamma.size() && gate_ok; ++i) {
          const ClosedArgCatalog::Entry* e = options[i][pick[i]];
          Justification je = j;
          for (const auto& r : e->justification.reductions()) je.add(r);
          const ValidityVerdict gv =
              closed_impl(e->structure, je, c, ctx, depth + 1);
          if (gv.is_valid()) {
            for (const auto& r : e->justification.reductions()) combined.add(r);
            sigma.assign(gamma[i], e->structure);
          } else {
            gate_ok = false;
            if (gv.is_inconclusive()) {
              saw_inconclusive = true;
              pending_note = "a premiss closing did not resolve: " + gv.reason;
            }
          }
        }

        if (gate_ok) {
          const ArgStructure instance = sigma_instance(d, sigma);
          const ValidityVerdict iv =
              closed_impl(instance, combined, c, ctx, depth + 1);
          if (iv.is_invalid()) {
            auto v = ValidityVerdict::invalid("counterexample at extension {" +
                                              c.fingerprint() +
                                              "}: " + iv.reason);
            v.bounds = "failed on catalog closing " + std::to_string(checked);
            return v;
          }
          if (iv.is_inconclusive()) {
            saw_inconclusive = true;
            pending_note = "a closed instance did not resolve: " + iv.reason;
          }
        }

        std::size_t i = 0;
        for (; i < pick.size(); ++i) {
          if (++pick[i] < options[i].size()) break;
          pick[i] = 0;
        }
        more = i < pick.size();
      }
      if (budget_exhausted) break;
    }
  }

  std::string bounds =
      "checked " + std::to_string(checked) + " catalog closings across " +
      std::to_string(subsets.size()) +
      " pool extensions; justification extensions searched only as supplied "
      "by catalog entries";
  if (!uncovered.empty()) {
    std::string names;
    for (const auto& u : uncovered) {
      if (!names.empty()) names += ", ";
      names += u;
    }
    bounds += "; no catalog closings conclude: " + names;
  }

  if (budget_exhausted) {
    auto v = ValidityVerdict::inconclusive(
        "assignment budget exhausted after " + std::to_string(checked) +
        " catalog closings");
    v.bounds = std::move(bounds);
    return v;
  }
  if (saw_inconclusive) {
    auto v = ValidityVerdict::inconclusive(pending_note);
    v.bounds = std::move(bounds);
    return v;
  }
  auto v = ValidityVerdict::valid("no counterexample within the searched bounds");
  v.bounds = std::move(bounds);
  return v;
}

}  // namespace

ValidityVerdict valid_closed(const ArgStructure& d, const Justification& j,
                             const Base& b, const ValidityOptions& opts) {
  if (!is_closed(d)) {
    throw DomainError("closed-validity question about an open structure");
  }
  const Ctx ctx{&opts, &opts.catalog, &opts.pool};
  return closed_impl(d, j, b, ctx, 0);
}

ValidityVerdict valid_open_bounded(const ArgStructure& d,
                                   const Justification& j, const Base& b,
                                   const ClosedArgCatalog& catalog,
                                   const ExtensionPool& pool,
                                   const ValidityOptions& opts) {
  if (is_closed(d)) {
    throw DomainError("open-validity question about a closed structure");
  }
  const Ctx ctx{&opts, &catalog, &pool};
  return open_impl(d, j, b, ctx, 0);
}

// ---------------------------------------------------------------------------
// valid_for_every_justification

ValidityVerdict valid_for_every_justification(const ArgStructure& d, const Base& b) {
  for (const auto& n : d.nodes()) {
    if (!n.label->is_atomic()) {
      throw DomainError(
          "the axiomization certificate applies to all-atomic structures "
          "only");
    }
  }
  if (!d.f().empty()) {
    throw DomainError(
        "the axiomization certificate applies to structures without "
        "assumption discharges");
  }
  auto [axiomized, ext] = axiomize_assumptions(d, b);
  Reconstruction rec = reconstruct_derivation(axiomized, ext);
  if (!rec.ok) {
    auto v = ValidityVerdict::invalid(
        "the axiomized structure is not a derivation over the extended "
        "base: " +
        rec.reason);
    v.bounds = "exact check, no search involved";
    return v;
  }
  auto v = ValidityVerdict::valid(
      "axiomizing the open assumptions yields a derivation over the "
      "extended base");
  v.witness = std::move(rec.derivation);
  v.bounds = "exact check; the certificate holds for every justification set";
  return v;
}

// ---------------------------------------------------------------------------
// graft_reduction

Reduction graft_reduction(const ArgStructure& d) {
  const std::vector<FormulaPtr> gamma = d.open_assumptions();
  std::vector<std::string> gamma_prints;
  gamma_prints.reserve(gamma.size());
  for (const auto& a : gamma) gamma_prints.push_back(print_formula(a));
  const FormulaPtr concl = d.conclusion();

  std::function<bool(const ArgStructure&)> in_domain =
      [d, gamma_prints, concl](const ArgStructure& e) {
        if (!equal(e.conclusion(), concl)) return false;
        if (gamma_prints.empty()) {
          return e.size() == 1 && e.node(0).leaf == LeafKind::Axiom;
        }
        const auto& kids = e.node(e.root()).children;
        if (kids.size() != gamma_prints.size()) return false;
        for (const auto& [k, v] : e.f()) {
          if (v == e.root()) return false;
        }
        for (const auto& [k, v] : e.h()) {
          if (v == e.root()) return false;
        }
        for (const auto& [k, v] : e.g()) {
          if (v == e.root()) return false;
        }
        std::set<std::string> seen;
        for (NodeId k : kids) {
          std::string p = print_formula(e.node(k).label);
          if (!seen.insert(p).second) return false;
          if (std::find(gamma_prints.begin(), gamma_prints.end(), p) ==
              gamma_prints.end()) {
            return false;
          }
        }
        return seen.size() == gamma_prints.size();
      };

  auto transform = [d, gamma_prints, in_domain](const ArgStructure& e) {
    if (!in_domain(e)) {
      throw DomainError(
          "structure does not end with the one-step inference this grafting "
          "contracts");
    }
    if (gamma_prints.empty()) return d;
    std::map<std::string, ArgStructure> pieces;
    for (const auto& sub : immediate_substructures(e)) {
      pieces.emplace(print_formula(sub.conclusion()), sub);
    }
    RawArg raw = RawArg::from(d);
    for (NodeId leaf : d.open_assumption_leaves()) {
      const ArgStructure& piece =
          pieces.at(print_formula(d.node(leaf).label));
      const NodeId off = raw.splice_copy(piece);
      if (leaf == raw.root) {
        raw.root = off;
      } else {
        auto& siblings = raw.nodes[d.parent(leaf)].children;
        std::replace(siblings.begin(), siblings.end(), leaf, off);
      }
    }
    return std::move(raw).freeze(RawArg::Unreachable::Drop);
  };

  Reduction r;
  r.name = "graft:" + d.canonical_string();
  r.in_domain = std::move(in_domain);
  r.transform = std::move(transform);
  return r;
}

// ---------------------------------------------------------------------------
// rule_valid_bounded

ValidityVerdict rule_valid_bounded(const std::vector<FormulaPtr>& premises,
                                   const FormulaPtr& conclusion,
                                   const Justification& j, const Base& b,
                                   const ClosedArgCatalog& catalog,
                                   const ExtensionPool& pool,
                                   const ValidityOptions& opts) {
  if (premises.empty()) {
    throw DomainError(
        "a premiss-free rule has no one-step argument structure to check");
  }
  std::vector<ArgStructure> prem;
  prem.reserve(premises.size());
  for (const auto& a : premises) prem.push_back(ArgStructure::assumption(a));
  const ArgStructure d = one_step(std::move(prem), conclusion);
  ValidityVerdict v = valid_open_bounded(d, j, b, catalog, pool, opts);
  v.bounds = "rule validity through its one-step argument structure; " +
             v.bounds;
  return v;
}

// ---------------------------------------------------------------------------
// split_transform

namespace {

// Replays a trace computed on a standalone sub-structure inside `host`,
// where the sub-structure's root sits at node `offset`; appends the shifted
// steps to `log`.
ArgStructure replay_shifted(ArgStructure host, const ReductionTrace& t,
                            NodeId offset, const Justification& rules,
                            std::vector<ReductionStep>* log) {
  for (const auto& step : t.steps) {
    const Reduction* r = rules.find(step.rule);
    if (r == nullptr) {
      throw Error("pipeline justification lost rewrite '" + step.rule + "'");
    }
    host = apply_at(host, step.position + offset, *r);
    if (log != nullptr) {
      log->push_back({step.position + offset, step.rule, host});
    }
  }
  return host;
}

}  // namespace

SplitOutcome split_transform(const ArgStructure& d1, const Justification& j,
                             const Base& c, const ValidityOptions& opts) {
  static const char kShapeMsg[] =
      "the split pipeline needs a conclusion of the form atom -> (atom v "
      "atom)";
  if (!is_closed(d1)) {
    throw DomainError("the split pipeline needs a closed argument");
  }
  const FormulaPtr con = d1.conclusion();
  if (con->kind() != FormulaKind::Imp) throw DomainError(kShapeMsg);
  const FormulaPtr p = con->left();
  const FormulaPtr rhs = con->right();
  if (!p->is_atom() || rhs->kind() != FormulaKind::Or ||
      !rhs->left()->is_atom() || !rhs->right()->is_atom()) {
    throw DomainError(kShapeMsg);
  }

  // Normalise to introduction form through the validity search; this also
  // establishes the precondition that d1 is valid here.
  const ValidityVerdict v1 = valid_closed(d1, j, c, opts);
  if (v1.is_invalid()) {
    throw DomainError(
        "the input argument is not valid over the base within the given "
        "bounds: " +
        v1.reason);
  }
  if (v1.is_inconclusive()) {
    throw Error("validity search budget ran out on the input argument: " +
                v1.reason);
  }
  const ArgStructure& d1c = v1.trace->last();

  const FormulaPtr goal = Formula::disj(Formula::imp(p, rhs->left()),
                                        Formula::imp(p, rhs->right()));
  const ArgStructure d2 = one_step({d1c}, goal);
  ReductionTrace pipeline{d2, {}};

  Justification h = j;
  const Reduction* phi1r = find_standard_reduction("phi1");
  const Reduction* phi2r = find_standard_reduction("phi2");
  h.add(*phi1r);
  h.add(*phi2r);

  // The antecedent is either vacuously discharged (the normal form's body
  // is closed) or genuinely discharged; the latter case trades the
  // discharged assumptions for a designated axiom and works over the
  // scratch base c + {axiom p}.
  bool body_open = false;
  for (const auto& [leaf, binder] : d1c.f()) {
    if (binder == d1c.root()) {
      body_open = true;
      break;
    }
  }

  ArgStructure cur = d2;
  Base work = c;
  if (body_open) {
    cur = apply_at(d2, 0, *phi1r);
    pipeline.steps.push_back({0, phi1r->name, cur});
    work = c.with(AtomicRule::axiom(print_formula(p)));
  }
  // Layout of cur: node 0 = the split step, node 1 = the implication
  // introduction, node 2 = the disjunction body's root.
  constexpr NodeId kBodyPos = 2;
  const ArgStructure body = subtree(cur, kBodyPos);

  const ValidityVerdict vb = valid_closed(body, j, work, opts);
  if (vb.is_inconclusive()) {
    throw Error(
        "search budget ran out while normalising the disjunction body: " +
        vb.reason);
  }
  if (vb.is_invalid()) {
    throw DomainError(
        std::string("the disjunction body failed validation") +
        (body_open ? " over the axiom-extended scratch base" : "") + ": " +
        vb.reason);
  }
  cur = replay_shifted(cur, *vb.trace, kBodyPos, j, &pipeline.steps);

  const ArgStructure disj_form = vb.trace->last();
  const ArgStructure evidence = immediate_substructures(disj_form)[0];
  if (!is_closed(evidence)) {
    throw DomainError(
        "the introduction form's witness discharges assumptions at the "
        "disjunction step");
  }
  const ValidityVerdict ve = valid_closed(evidence, j, work, opts);
  if (ve.is_inconclusive()) {
    throw Error(
        "search budget ran out while reducing the disjunct witness: " +
        ve.reason);
  }
  if (ve.is_invalid()) {
    throw DomainError(
        std::string("the disjunct witness failed validation") +
        (body_open ? " over the axiom-extended scratch base" : "") + ": " +
        ve.reason);
  }
  cur = replay_shifted(cur, *ve.trace, kBodyPos + 1, j, &pipeline.steps);

  ArgStructure out = apply_at(cur, 0, *phi2r);
  pipeline.steps.push_back({0, phi2r->name, out});

  ValidityVerdict verdict = valid_closed(out, h, c, opts);
  return SplitOutcome{std::move(out), std::move(verdict), std::move(pipeline),
                      body_open};
}

}  // namespace ptsem
