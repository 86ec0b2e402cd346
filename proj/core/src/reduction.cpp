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

#include "ptsem/reduction.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <utility>

namespace ptsem {

namespace {

std::vector<NodeId> f_keys_targeting(const ArgStructure& d, NodeId t) {
  std::vector<NodeId> out;
  for (const auto& [k, v] : d.f())
    if (v == t) out.push_back(k);
  return out;
}

bool nothing_targets(const ArgStructure& d, NodeId t) {
  for (const auto& [k, v] : d.f())
    if (v == t) return false;
  for (const auto& [k, v] : d.h())
    if (v == t) return false;
  for (const auto& [k, v] : d.g())
    if (v == t) return false;
  return true;
}

// Replace each listed open assumption-leaf of `base` by a copy of `piece`.
ArgStructure graft_leaves(const ArgStructure& base,
                          const std::vector<NodeId>& leaves,
                          const ArgStructure& piece) {
  if (leaves.empty()) return base;
  RawArg w = RawArg::from(base);
  for (NodeId leaf : leaves) {
    const NodeId off = w.splice_copy(piece);
    if (leaf == base.root()) {
      w.root = off;
    } else {
      const NodeId p = base.parent(leaf);
      for (NodeId& c : w.nodes[p].children)
        if (c == leaf) c = off;
    }
  }
  return std::move(w).freeze(RawArg::Unreachable::Drop);
}

// --- implication-elimination redex ---------------------------------------

struct ImpRedex {
  NodeId major = 0, minor = 0, body = 0;
  FormulaPtr antecedent;
  std::vector<NodeId> bound;  // assumption-leaves bound at the major's →I
};

std::optional<ImpRedex> match_imp_redex(const ArgStructure& d) {
  const auto& root = d.node(d.root());
  if (root.children.size() != 2) return std::nullopt;
  if (!nothing_targets(d, d.root())) return std::nullopt;
  const NodeId major = root.children[0];
  const NodeId minor = root.children[1];
  const auto& mj = d.node(major);
  if (mj.children.size() != 1) return std::nullopt;
  if (mj.label->kind() != FormulaKind::Imp) return std::nullopt;
  const FormulaPtr a = mj.label->left();
  const FormulaPtr b = mj.label->right();
  if (!equal(root.label, b)) return std::nullopt;
  if (!equal(d.node(minor).label, a)) return std::nullopt;
  if (!equal(d.node(mj.children[0]).label, b)) return std::nullopt;
  auto bound = f_keys_targeting(d, major);
  for (NodeId k : bound)
    if (!equal(d.node(k).label, a)) return std::nullopt;
  return ImpRedex{major, minor, mj.children[0], a, std::move(bound)};
}

// --- exchange expansion ---------------------------------------------------

struct IotaShape {
  FormulaPtr a, b, c;
};

std::optional<IotaShape> match_iota(const ArgStructure& d) {
  const auto& root = d.node(d.root());
  if (root.children.size() != 1) return std::nullopt;
  if (!nothing_targets(d, d.root())) return std::nullopt;
  const auto& ch = d.node(root.children[0]);
  if (ch.label->kind() != FormulaKind::Imp) return std::nullopt;
  const FormulaPtr a = ch.label->left();
  if (ch.label->right()->kind() != FormulaKind::Imp) return std::nullopt;
  const FormulaPtr b = ch.label->right()->left();
  const FormulaPtr c = ch.label->right()->right();
  if (!equal(root.label, Formula::imp(b, Formula::imp(a, c))))
    return std::nullopt;
  return IotaShape{a, b, c};
}

// --- the two rewrites of the atomic split step ---------------------------

struct SplitShape {
  FormulaPtr p, l, r;
  NodeId child = 0, body = 0;
};

// One-step inference with empty discharge from Imp(p, Or(l, r)) to
// Or(Imp(p, l), Imp(p, r)), all of p, l, r atoms, whose premise node has a
// single child concluding Or(l, r).
std::optional<SplitShape> match_atomic_split(const ArgStructure& d) {
  const auto& root = d.node(d.root());
  if (root.children.size() != 1) return std::nullopt;
  if (!nothing_targets(d, d.root())) return std::nullopt;
  const NodeId child = root.children[0];
  const auto& ch = d.node(child);
  if (ch.children.size() != 1) return std::nullopt;
  if (ch.label->kind() != FormulaKind::Imp) return std::nullopt;
  const FormulaPtr p = ch.label->left();
  const FormulaPtr qr = ch.label->right();
  if (p->kind() != FormulaKind::Atom || qr->kind() != FormulaKind::Or)
    return std::nullopt;
  const FormulaPtr l = qr->left();
  const FormulaPtr r = qr->right();
  if (l->kind() != FormulaKind::Atom || r->kind() != FormulaKind::Atom)
    return std::nullopt;
  if (!equal(root.label,
             Formula::disj(Formula::imp(p, l), Formula::imp(p, r))))
    return std::nullopt;
  const NodeId body = ch.children[0];
  if (!equal(d.node(body).label, qr)) return std::nullopt;
  return SplitShape{p, l, r, child, body};
}

struct Phi1Match {
  SplitShape shape;
  std::vector<NodeId> bound;  // the p-assumptions bound at the →I step
};

std::optional<Phi1Match> match_phi1(const ArgStructure& d) {
  auto s = match_atomic_split(d);
  if (!s) return std::nullopt;
  if (!is_closed(d)) return std::nullopt;
  auto bound = f_keys_targeting(d, s->child);
  if (bound.empty()) return std::nullopt;  // the body must be open
  for (NodeId k : bound)
    if (!equal(d.node(k).label, s->p)) return std::nullopt;
  return Phi1Match{*s, std::move(bound)};
}

struct Phi2Match {
  SplitShape shape;
  NodeId grand = 0;
  FormulaPtr qi;  // conclusion of the atomic part = the introduced disjunct
};

std::optional<Phi2Match> match_phi2(const ArgStructure& d) {
  auto s = match_atomic_split(d);
  if (!s) return std::nullopt;
  if (!f_keys_targeting(d, s->child).empty()) return std::nullopt;  // vacuous
  const auto& body = d.node(s->body);
  if (body.children.size() != 1) return std::nullopt;
  if (!nothing_targets(d, s->body)) return std::nullopt;
  const NodeId grand = body.children[0];
  const FormulaPtr glab = d.node(grand).label;
  if (!equal(glab, s->l) && !equal(glab, s->r)) return std::nullopt;
  // The part above the ∨-introduction must look like an atomic derivation:
  // atomic labels only and no assumption-leaves (assumed rules, i.e.
  // internal axiom/edge-group discharges, are fine).
  for (NodeId id : d.subtree_ids(grand)) {
    const auto& n = d.node(id);
    if (!n.label->is_atomic()) return std::nullopt;
    if (n.leaf == LeafKind::Assumption) return std::nullopt;
  }
  if (!is_closed(d)) return std::nullopt;
  const FormulaPtr qi = equal(glab, s->l) ? s->l : s->r;
  return Phi2Match{*s, grand, qi};
}

// --- the generalised ∨-elimination figures -------------------------------

struct SplitStarShape {
  FormulaPtr a, b, c;
};

std::optional<SplitStarShape> match_split_star(const ArgStructure& d) {
  const auto& root = d.node(d.root());
  if (root.children.size() != 1) return std::nullopt;
  if (!nothing_targets(d, d.root())) return std::nullopt;
  const auto& ch = d.node(root.children[0]);
  if (ch.label->kind() != FormulaKind::Imp) return std::nullopt;
  const FormulaPtr a = ch.label->left();
  if (ch.label->right()->kind() != FormulaKind::Or) return std::nullopt;
  const FormulaPtr b = ch.label->right()->left();
  const FormulaPtr c = ch.label->right()->right();
  if (!equal(root.label,
             Formula::disj(Formula::imp(a, b), Formula::imp(a, c))))
    return std::nullopt;
  return SplitStarShape{a, b, c};
}

struct SMatch {
  NodeId c0 = 0, c1 = 0, c2 = 0, g0 = 0;
  int side = 0;  // 0: major introduces the left disjunct, 1: the right
  FormulaPtr a, b1, b2, bi;
  std::vector<NodeId> grp_a;    // root-bound antecedent assumptions (major)
  std::vector<NodeId> grp_sel;  // root-bound hypothesis leaves, chosen minor
};

std::optional<SMatch> match_s(const ArgStructure& d) {
  const auto& root = d.node(d.root());
  if (root.children.size() != 3) return std::nullopt;
  const NodeId c0 = root.children[0];
  const NodeId c1 = root.children[1];
  const NodeId c2 = root.children[2];
  const auto& major = d.node(c0);
  if (major.children.size() != 1) return std::nullopt;
  if (major.label->kind() != FormulaKind::Or) return std::nullopt;
  if (!nothing_targets(d, c0)) return std::nullopt;
  const FormulaPtr b1 = major.label->left();
  const FormulaPtr b2 = major.label->right();
  const NodeId g0 = major.children[0];
  int side;
  if (equal(d.node(g0).label, b1)) {
    side = 0;
  } else if (equal(d.node(g0).label, b2)) {
    side = 1;
  } else {
    return std::nullopt;
  }
  if (!equal(d.node(c1).label, root.label)) return std::nullopt;
  if (!equal(d.node(c2).label, root.label)) return std::nullopt;

  // Partition the root-bound assumption-leaves by branch and read off the
  // discharged antecedent A.
  std::vector<NodeId> grp0, grp1, grp2;
  for (NodeId k : f_keys_targeting(d, d.root())) {
    if (k >= c0 && k < c1) {
      grp0.push_back(k);
    } else if (k >= c1 && k < c2) {
      grp1.push_back(k);
    } else {
      grp2.push_back(k);
    }
  }
  FormulaPtr a;
  for (NodeId k : grp0) {
    const FormulaPtr lab = d.node(k).label;
    if (a && !equal(a, lab)) return std::nullopt;
    a = lab;
  }
  auto check_hyp = [&](const std::vector<NodeId>& grp,
                       const FormulaPtr& b) -> bool {
    for (NodeId k : grp) {
      const FormulaPtr lab = d.node(k).label;
      if (lab->kind() != FormulaKind::Imp) return false;
      if (!equal(lab->right(), b)) return false;
      if (a && !equal(a, lab->left())) return false;
      a = lab->left();
    }
    return true;
  };
  if (!check_hyp(grp1, b1)) return std::nullopt;
  if (!check_hyp(grp2, b2)) return std::nullopt;
  if (!a) return std::nullopt;  // no group pins down the antecedent

  SMatch m;
  m.c0 = c0;
  m.c1 = c1;
  m.c2 = c2;
  m.g0 = g0;
  m.side = side;
  m.a = a;
  m.b1 = b1;
  m.b2 = b2;
  m.bi = side == 0 ? b1 : b2;
  m.grp_a = std::move(grp0);
  m.grp_sel = side == 0 ? std::move(grp1) : std::move(grp2);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog transforms
// ---------------------------------------------------------------------------

ArgStructure phi_imp(const ArgStructure& d) {
  auto m = match_imp_redex(d);
  if (!m) throw DomainError("not an implication-elimination redex");
  auto body_sub = subtree(d, m->body);
  if (m->bound.empty()) return body_sub;  // vacuous: the minor is discarded
  auto minor_sub = subtree(d, m->minor);
  std::vector<NodeId> translated;
  translated.reserve(m->bound.size());
  for (NodeId k : m->bound) translated.push_back(k - m->body);
  return graft_leaves(body_sub, translated, minor_sub);
}

ArgStructure iota(const ArgStructure& d) {
  auto m = match_iota(d);
  if (!m) throw DomainError("not an exchange-expansion step");
  auto premise = subtree(d, d.node(d.root()).children[0]);
  RawArg w;
  const NodeId major = w.splice_copy(premise);
  const NodeId a_leaf = w.add_assumption(m->a);
  const NodeId bc = w.add_inner(Formula::imp(m->b, m->c), {major, a_leaf});
  const NodeId b_leaf = w.add_assumption(m->b);
  const NodeId c_node = w.add_inner(m->c, {bc, b_leaf});
  const NodeId ac = w.add_inner(Formula::imp(m->a, m->c), {c_node});
  const NodeId bac = w.add_inner(d.conclusion(), {ac});
  w.f[a_leaf] = ac;
  w.f[b_leaf] = bac;
  w.root = bac;
  return std::move(w).freeze();
}

ArgStructure phi1(const ArgStructure& d) {
  auto m = match_phi1(d);
  if (!m)
    throw DomainError(
        "not a closed atomic-split step with an open premise body");
  RawArg w = RawArg::from(d);
  for (NodeId k : m->bound) {
    w.f.erase(k);
    w.nodes[k].leaf = LeafKind::Axiom;
    w.nodes[k].marked = true;  // designated axiom: later stages look it up
  }
  return std::move(w).freeze();
}

ArgStructure phi2(const ArgStructure& d) {
  auto m = match_phi2(d);
  if (!m)
    throw DomainError(
        "not a closed atomic-split step over a vacuous abstraction of an "
        "introduced disjunct with atomic evidence");
  auto grand_sub = subtree(d, m->grand);
  const FormulaPtr p = m->shape.p;
  RawArg w;
  w.splice_copy(grand_sub);  // lands at offset 0
  const NodeId imp_node =
      w.add_inner(Formula::imp(p, m->qi), {grand_sub.root()});
  const NodeId or_node = w.add_inner(d.conclusion(), {imp_node});
  for (NodeId id = 0; id < grand_sub.size(); ++id) {
    const auto& n = grand_sub.node(id);
    if (n.leaf == LeafKind::Axiom && equal(n.label, p) &&
        grand_sub.h().find(id) == grand_sub.h().end()) {
      w.nodes[id].leaf = LeafKind::Assumption;
      w.nodes[id].marked = false;
      w.f[id] = imp_node;
    }
  }
  w.root = or_node;
  return std::move(w).freeze();
}

ArgStructure split_to_s(const ArgStructure& d) {
  auto m = match_split_star(d);
  if (!m)
    throw DomainError(
        "not a split step over an implication into a disjunction");
  if (!is_harrop(m->a))
    throw DomainError("split antecedent must be a Harrop formula");
  auto premise = subtree(d, d.node(d.root()).children[0]);
  const FormulaPtr goal = d.conclusion();
  RawArg w;
  const NodeId major = w.splice_copy(premise);
  const NodeId a_leaf = w.add_assumption(m->a);
  const NodeId bvc =
      w.add_inner(Formula::disj(m->b, m->c), {major, a_leaf});
  const NodeId hyp_b = w.add_assumption(Formula::imp(m->a, m->b));
  const NodeId left_minor = w.add_inner(goal, {hyp_b});
  const NodeId hyp_c = w.add_assumption(Formula::imp(m->a, m->c));
  const NodeId right_minor = w.add_inner(goal, {hyp_c});
  const NodeId s_node = w.add_inner(goal, {bvc, left_minor, right_minor});
  w.f[a_leaf] = s_node;
  w.f[hyp_b] = s_node;
  w.f[hyp_c] = s_node;
  w.root = s_node;
  return std::move(w).freeze();
}

ArgStructure phi_s(const ArgStructure& d) {
  auto m = match_s(d);
  if (!m)
    throw DomainError(
        "not a generalised ∨-elimination whose major branch ends with "
        "∨-introduction");
  auto major_body = subtree(d, m->g0);
  Inference abstraction;
  abstraction.conclusion = Formula::imp(m->a, m->bi);
  for (NodeId k : m->grp_a)
    abstraction.bind_assumptions.push_back(LeafRef{0, k - m->g0});
  abstraction.premises.push_back(std::move(major_body));
  auto abstracted = build_inference(abstraction);

  const NodeId minor_pos = m->side == 0 ? m->c1 : m->c2;
  auto minor_sub = subtree(d, minor_pos);
  if (m->grp_sel.empty()) return minor_sub;
  std::vector<NodeId> translated;
  translated.reserve(m->grp_sel.size());
  for (NodeId k : m->grp_sel) translated.push_back(k - minor_pos);
  return graft_leaves(minor_sub, translated, abstracted);
}

// ---------------------------------------------------------------------------
// Justification
// ---------------------------------------------------------------------------

Justification::Justification(std::vector<Reduction> reductions) {
  for (auto& r : reductions) add(std::move(r));
}

void Justification::add(Reduction r) {
  auto it = std::find_if(reductions_.begin(), reductions_.end(),
                         [&](const Reduction& x) { return x.name == r.name; });
  if (it != reductions_.end()) {
    *it = std::move(r);
    return;
  }
  auto pos = std::lower_bound(
      reductions_.begin(), reductions_.end(), r,
      [](const Reduction& x, const Reduction& y) { return x.name < y.name; });
  reductions_.insert(pos, std::move(r));
}

bool Justification::contains(const std::string& name) const {
  return find(name) != nullptr;
}

const Reduction* Justification::find(const std::string& name) const {
  for (const auto& r : reductions_)
    if (r.name == name) return &r;
  return nullptr;
}

bool Justification::extends(const Justification& other) const {
  for (const auto& r : other.reductions_)
    if (!contains(r.name)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Positional application and rewrite search
// ---------------------------------------------------------------------------

ArgStructure apply_at(const ArgStructure& d, NodeId pos,
                      const Reduction& phi) {
  if (pos >= d.size()) throw DomainError("position out of range");
  const auto ids = d.subtree_ids(pos);
  const NodeId end = pos + static_cast<NodeId>(ids.size());
  auto inside = [&](NodeId x) { return x >= pos && x < end; };

  for (const auto& [k, v] : d.h())
    if (inside(k) && !inside(v))
      throw DomainError("rule discharge crosses the rewrite boundary");
  for (const auto& [k, v] : d.g())
    if (inside(k) && !inside(v))
      throw DomainError("rule discharge crosses the rewrite boundary");

  // Assumption bindings into the region: remember formula -> outer binder so
  // the contractum's corresponding leaves can be re-threaded.
  std::map<std::string, NodeId> crossing;
  for (const auto& [k, v] : d.f()) {
    if (!inside(k) || inside(v)) continue;
    auto key = print_formula(d.node(k).label);
    auto [it, fresh] = crossing.emplace(key, v);
    if (!fresh && it->second != v)
      throw DomainError("ambiguous crossing discharge at the rewrite position");
  }
  for (NodeId x = pos; x < end; ++x) {
    const auto& n = d.node(x);
    if (n.leaf == LeafKind::Assumption && d.f().find(x) == d.f().end() &&
        crossing.count(print_formula(n.label)))
      throw DomainError(
          "crossing discharge shadows an open assumption at the rewrite "
          "position");
  }

  auto sub = subtree(d, pos);
  if (!phi.in_domain(sub))
    throw DomainError("sub-structure is not in the domain of " + phi.name);
  auto out = phi.transform(sub);
  if (!equal(out.conclusion(), sub.conclusion()))
    throw Error("reduction changed the conclusion: " + phi.name);
  if (pos == d.root()) return out;

  RawArg w = RawArg::from(d);
  const NodeId off = w.splice_copy(out);
  const NodeId parent = d.parent(pos);
  for (NodeId& c : w.nodes[parent].children)
    if (c == pos) c = off;
  for (NodeId leaf : out.open_assumption_leaves()) {
    auto it = crossing.find(print_formula(out.node(leaf).label));
    if (it != crossing.end()) w.f[leaf + off] = it->second;
  }
  return std::move(w).freeze(RawArg::Unreachable::Drop);
}

ReduceResult reduces_to(const ArgStructure& d, const ArgStructure& target,
                        const Justification& j, std::size_t step_cap) {
  if (d == target)
    return ReduceResult{ReduceStatus::Found, ReductionTrace{d, {}}};

  struct Item {
    ArgStructure s;
    std::vector<ReductionStep> steps;
  };
  std::set<std::string> visited{d.canonical_string()};
  std::deque<Item> queue;
  queue.push_back(Item{d, {}});
  bool truncated = false;

  while (!queue.empty()) {
    Item cur = std::move(queue.front());
    queue.pop_front();
    if (cur.steps.size() >= step_cap) {
      truncated = true;
      continue;
    }
    for (NodeId pos = 0; pos < cur.s.size(); ++pos) {
      for (const Reduction& phi : j.reductions()) {
        std::optional<ArgStructure> next;
        try {
          next = apply_at(cur.s, pos, phi);
        } catch (const DomainError&) {
          continue;
        }
        if (!visited.insert(next->canonical_string()).second) continue;
        auto steps = cur.steps;
        steps.push_back(ReductionStep{pos, phi.name, *next});
        if (*next == target)
          return ReduceResult{ReduceStatus::Found,
                              ReductionTrace{d, std::move(steps)}};
        queue.push_back(Item{std::move(*next), std::move(steps)});
      }
    }
  }
  return ReduceResult{
      truncated ? ReduceStatus::CapExhausted : ReduceStatus::NotReachable,
      std::nullopt};
}

bool verify_trace(const ReductionTrace& t, const Justification& j) {
  const ArgStructure* cur = &t.start;
  for (const auto& step : t.steps) {
    const Reduction* phi = j.find(step.rule);
    if (phi == nullptr) return false;
    try {
      if (apply_at(*cur, step.position, *phi) != step.result) return false;
    } catch (const Error&) {
      return false;
    }
    cur = &step.result;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Law checking
// ---------------------------------------------------------------------------

namespace {

SigmaAssignment random_sigma(const ArgStructure& d, std::mt19937& rng) {
  static const char* kAtoms[] = {"p", "q", "r", "s", "t"};
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> pick(0, 4);
  SigmaAssignment sigma;
  for (const auto& fm : d.open_assumptions()) {
    if (coin(rng) == 0) {
      sigma.assign(fm, ArgStructure::axiom(fm));
    } else {
      sigma.assign(
          fm, one_step({ArgStructure::axiom(Formula::atom(kAtoms[pick(rng)]))},
                       fm));
    }
  }
  return sigma;
}

bool opens_subset(const ArgStructure& out, const ArgStructure& in) {
  std::set<std::string> allowed;
  for (const auto& fm : in.open_assumptions())
    allowed.insert(print_formula(fm));
  for (const auto& fm : out.open_assumptions())
    if (!allowed.count(print_formula(fm))) return false;
  return true;
}

}  // namespace

LawCheckReport check_reduction_laws(const Reduction& phi,
                                    const DomainSampler& gen,
                                    std::size_t sample_count, unsigned seed) {
  std::mt19937 rng(seed);
  LawCheckReport rep;
  std::size_t attempts = 0;
  const std::size_t max_attempts = sample_count * 20 + 100;

  auto fail = [&](int law, std::string detail) {
    rep.passed = false;
    rep.failed_law = law;
    rep.detail = std::move(detail);
    return rep;
  };

  while (rep.samples < sample_count && attempts < max_attempts) {
    ++attempts;
    auto drawn = gen(rng);
    if (!drawn) continue;
    const ArgStructure& d = *drawn;
    if (!phi.in_domain(d))
      return fail(0, "sampler produced a structure outside the domain: " +
                         d.canonical_string());

    std::optional<ArgStructure> out;
    try {
      out = phi.transform(d);
    } catch (const std::exception& e) {
      return fail(1, std::string("transform failed on a domain member: ") +
                         e.what());
    }
    if (!equal(out->conclusion(), d.conclusion()))
      return fail(3, "conclusion changed: " + print_formula(d.conclusion()) +
                         " became " + print_formula(out->conclusion()));
    if (!opens_subset(*out, d))
      return fail(3, "open assumptions grew on " + d.canonical_string());

    auto sigma = random_sigma(d, rng);
    auto d_sigma = sigma_instance(d, sigma);
    if (!phi.in_domain(d_sigma))
      return fail(2, "domain not closed under substitution instances: " +
                         d.canonical_string());
    std::optional<ArgStructure> lhs;
    try {
      lhs = phi.transform(d_sigma);
    } catch (const std::exception& e) {
      return fail(2, std::string("transform failed on an instance: ") +
                         e.what());
    }
    auto rhs = sigma_instance(*out, sigma);
    if (!(*lhs == rhs))
      return fail(4, "substitution does not commute on " +
                         d.canonical_string());
    ++rep.samples;
  }
  if (rep.samples < sample_count)
    return fail(0, "sampler failed to produce enough domain members");
  rep.passed = true;
  rep.failed_law = 0;
  rep.detail = "all laws hold on the sampled inputs";
  return rep;
}

// ---------------------------------------------------------------------------
// Catalog access
// ---------------------------------------------------------------------------

const std::vector<Reduction>& standard_reductions() {
  static const std::vector<Reduction> catalog = [] {
    std::vector<Reduction> v;
    v.push_back({"iota",
                 [](const ArgStructure& d) { return match_iota(d).has_value(); },
                 iota});
    v.push_back(
        {"phi1",
         [](const ArgStructure& d) { return match_phi1(d).has_value(); },
         phi1});
    v.push_back(
        {"phi2",
         [](const ArgStructure& d) { return match_phi2(d).has_value(); },
         phi2});
    v.push_back(
        {"phi_imp",
         [](const ArgStructure& d) { return match_imp_redex(d).has_value(); },
         phi_imp});
    v.push_back(
        {"phi_s",
         [](const ArgStructure& d) { return match_s(d).has_value(); },
         phi_s});
    v.push_back({"split_to_s",
                 [](const ArgStructure& d) {
                   auto m = match_split_star(d);
                   return m.has_value() && is_harrop(m->a);
                 },
                 split_to_s});
    std::sort(v.begin(), v.end(), [](const Reduction& x, const Reduction& y) {
      return x.name < y.name;
    });
    return v;
  }();
  return catalog;
}

const Reduction* find_standard_reduction(const std::string& name) {
  for (const auto& r : standard_reductions())
    if (r.name == name) return &r;
  return nullptr;
}

}  // namespace ptsem
