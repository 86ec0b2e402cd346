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

#include "ptsem/argstruct.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <utility>

namespace ptsem {

ArgStructure::ArgStructure(std::vector<Node> nodes, NodeId root,
                           std::map<NodeId, NodeId> f,
                           std::map<NodeId, NodeId> h,
                           std::map<NodeId, NodeId> g) {
  RawArg w;
  w.nodes = std::move(nodes);
  w.root = root;
  w.f = std::move(f);
  w.h = std::move(h);
  w.g = std::move(g);
  *this = std::move(w).freeze(RawArg::Unreachable::Forbid);
}

ArgStructure ArgStructure::assumption(FormulaPtr label) {
  RawArg w;
  w.root = w.add_assumption(std::move(label));
  return std::move(w).freeze();
}

ArgStructure ArgStructure::axiom(FormulaPtr label, bool marked) {
  RawArg w;
  w.root = w.add_axiom(std::move(label), marked);
  return std::move(w).freeze();
}

const ArgStructure::Node& ArgStructure::node(NodeId id) const {
  if (id >= nodes_.size()) throw DomainError("node id out of range");
  return nodes_[id];
}

NodeId ArgStructure::parent(NodeId id) const {
  if (id >= nodes_.size()) throw DomainError("node id out of range");
  return parents_[id];
}

bool ArgStructure::strictly_below(NodeId below, NodeId id) const {
  if (below >= nodes_.size() || id >= nodes_.size())
    throw DomainError("node id out of range");
  for (NodeId p = parents_[id]; p != kNoNode; p = parents_[p])
    if (p == below) return true;
  return false;
}

std::vector<NodeId> ArgStructure::subtree_ids(NodeId id) const {
  if (id >= nodes_.size()) throw DomainError("node id out of range");
  std::vector<NodeId> out;
  std::vector<NodeId> stack{id};
  while (!stack.empty()) {
    NodeId cur = stack.back();
    stack.pop_back();
    out.push_back(cur);
    const auto& kids = nodes_[cur].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<NodeId> ArgStructure::open_assumption_leaves() const {
  std::vector<NodeId> out;
  for (NodeId id = 0; id < nodes_.size(); ++id)
    if (nodes_[id].leaf == LeafKind::Assumption && f_.find(id) == f_.end())
      out.push_back(id);
  return out;
}

std::vector<FormulaPtr> ArgStructure::open_assumptions() const {
  std::set<FormulaPtr, FormulaLess> seen;
  for (NodeId id : open_assumption_leaves()) seen.insert(nodes_[id].label);
  return std::vector<FormulaPtr>(seen.begin(), seen.end());
}

bool ArgStructure::operator==(const ArgStructure& o) const {
  if (nodes_.size() != o.nodes_.size()) return false;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& a = nodes_[i];
    const Node& b = o.nodes_[i];
    if (a.leaf != b.leaf || a.marked != b.marked || a.children != b.children ||
        !equal(a.label, b.label))
      return false;
  }
  return f_ == o.f_ && h_ == o.h_ && g_ == o.g_;
}

std::string ArgStructure::canonical_string() const {
  std::ostringstream os;
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    const Node& n = nodes_[id];
    if (id) os << ';';
    os << print_formula(n.label);
    if (n.leaf == LeafKind::Assumption) os << '?';
    if (n.leaf == LeafKind::Axiom) os << '!';
    if (n.marked) os << '*';
    os << '(';
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      if (i) os << ',';
      os << n.children[i];
    }
    os << ')';
  }
  auto dump = [&os](char tag, const std::map<NodeId, NodeId>& m) {
    os << '|' << tag << ':';
    bool first = true;
    for (const auto& [k, v] : m) {
      if (!first) os << ',';
      first = false;
      os << k << '>' << v;
    }
  };
  dump('f', f_);
  dump('h', h_);
  dump('g', g_);
  return os.str();
}

void ArgStructure::validate_and_index() {
  const std::size_t n = nodes_.size();
  parents_.assign(n, kNoNode);
  for (NodeId id = 0; id < n; ++id) {
    const Node& nd = nodes_[id];
    if (!nd.label) throw ValidationError("node without a formula label");
    if (nd.children.empty()) {
      if (nd.leaf == LeafKind::None)
        throw ValidationError(
            "childless node must be an assumption- or axiom-leaf");
    } else if (nd.leaf != LeafKind::None) {
      throw ValidationError("inner node cannot be a leaf");
    }
    if (nd.marked &&
        (nd.leaf != LeafKind::Axiom || !nd.label->is_atomic()))
      throw ValidationError("only atom-labelled axiom-leaves may be marked");
    for (NodeId c : nd.children) parents_[c] = id;
  }

  std::set<NodeId> ftargets;
  for (const auto& [k, v] : f_) ftargets.insert(v);

  auto check_rule_site = [&](NodeId t, const char* role) {
    const Node& tn = nodes_[t];
    if (tn.children.empty())
      throw ValidationError(std::string(role) + " must be an inner node");
    if (tn.label->kind() != FormulaKind::Atom)
      throw ValidationError(std::string(role) + " must be atom-labelled");
    for (NodeId c : tn.children)
      if (nodes_[c].label->kind() != FormulaKind::Atom)
        throw ValidationError(std::string(role) +
                              " must have atom-labelled premises");
    if (ftargets.count(t))
      throw ValidationError(
          "assumption discharge and rule discharge share a node");
  };

  for (const auto& [k, v] : f_) {
    if (nodes_[k].leaf != LeafKind::Assumption)
      throw ValidationError(
          "assumption discharge keyed at a non-assumption node");
    if (!strictly_below(v, k))
      throw ValidationError(
          "discharge must occur strictly below the discharged node");
  }
  for (const auto& [k, v] : h_) {
    if (nodes_[k].leaf != LeafKind::Axiom)
      throw ValidationError("axiom discharge keyed at a non-axiom node");
    if (nodes_[k].label->kind() != FormulaKind::Atom)
      throw ValidationError("discharged axiom-leaf must be atom-labelled");
    if (!strictly_below(v, k))
      throw ValidationError(
          "discharge must occur strictly below the discharged node");
    check_rule_site(v, "axiom-discharge site");
  }
  for (const auto& [k, v] : g_) {
    const Node& kn = nodes_[k];
    if (kn.children.empty())
      throw ValidationError("edge-group discharge keyed at a leaf");
    if (kn.label->kind() != FormulaKind::Atom)
      throw ValidationError("edge-group head must be atom-labelled");
    for (NodeId c : kn.children)
      if (nodes_[c].label->kind() != FormulaKind::Atom)
        throw ValidationError("edge-group premises must be atom-labelled");
    if (ftargets.count(k))
      throw ValidationError(
          "assumption discharge and rule discharge share a node");
    if (!strictly_below(v, k))
      throw ValidationError(
          "discharge must occur strictly below the discharged node");
    check_rule_site(v, "edge-group-discharge site");
  }
}

bool is_closed(const ArgStructure& d) {
  return d.open_assumption_leaves().empty();
}

bool is_atomic_derivation_shape(const ArgStructure& d) {
  for (const auto& n : d.nodes()) {
    if (!n.label->is_atomic()) return false;
    if (n.leaf == LeafKind::Assumption) return false;
  }
  return true;
}

ArgStructure subtree(const ArgStructure& d, NodeId pos) {
  const auto ids = d.subtree_ids(pos);
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (ids[i] != pos + i) throw Error("internal: preorder not contiguous");
  const NodeId end = pos + static_cast<NodeId>(ids.size());
  auto inside = [&](NodeId id) { return id >= pos && id < end; };

  RawArg w;
  for (NodeId id = pos; id < end; ++id) {
    ArgStructure::Node n = d.node(id);
    for (NodeId& c : n.children) c -= pos;
    w.add(std::move(n));
  }
  w.root = 0;
  for (const auto& [k, v] : d.f())
    if (inside(k) && inside(v)) w.f[k - pos] = v - pos;
  for (const auto& [k, v] : d.h()) {
    if (!inside(k)) continue;
    if (!inside(v))
      throw ValidationError(
          "axiom discharge crosses the extraction boundary");
    w.h[k - pos] = v - pos;
  }
  for (const auto& [k, v] : d.g()) {
    if (!inside(k)) continue;
    if (!inside(v))
      throw ValidationError(
          "edge-group discharge crosses the extraction boundary");
    w.g[k - pos] = v - pos;
  }
  return std::move(w).freeze();
}

std::vector<ArgStructure> immediate_substructures(const ArgStructure& d) {
  std::vector<ArgStructure> out;
  for (NodeId c : d.node(d.root()).children) out.push_back(subtree(d, c));
  return out;
}

ArgStructure substitute(const ArgStructure& d, NodeId target,
                        const ArgStructure& replacement) {
  if (!equal(d.node(target).label, replacement.conclusion()))
    throw ValidationError(
        "replacement conclusion differs from the replaced node's label");
  RawArg w = RawArg::from(d);
  const NodeId off = w.splice_copy(replacement);
  if (target == d.root()) {
    w.root = off;
  } else {
    const NodeId p = d.parent(target);
    for (NodeId& c : w.nodes[p].children)
      if (c == target) c = off;
  }
  return std::move(w).freeze(RawArg::Unreachable::Drop);
}

void SigmaAssignment::assign(const FormulaPtr& formula, ArgStructure image) {
  if (!formula) throw ValidationError("null formula in assignment");
  if (!equal(image.conclusion(), formula))
    throw ValidationError(
        "assigned structure must conclude the formula it is assigned to");
  if (!is_closed(image))
    throw ValidationError("assigned structure must be closed");
  images_.insert_or_assign(print_formula(formula), std::move(image));
}

const ArgStructure* SigmaAssignment::find(const FormulaPtr& formula) const {
  auto it = images_.find(print_formula(formula));
  return it == images_.end() ? nullptr : &it->second;
}

ArgStructure sigma_instance(const ArgStructure& d, const SigmaAssignment& s) {
  const auto open = d.open_assumption_leaves();
  if (open.empty()) return d;
  RawArg w = RawArg::from(d);
  for (NodeId leaf : open) {
    const FormulaPtr& label = d.node(leaf).label;
    const ArgStructure* img = s.find(label);
    if (img == nullptr)
      throw ValidationError("assignment missing a structure for open assumption " +
                            print_formula(label));
    const NodeId off = w.splice_copy(*img);
    if (leaf == d.root()) {
      w.root = off;
    } else {
      const NodeId p = d.parent(leaf);
      for (NodeId& c : w.nodes[p].children)
        if (c == leaf) c = off;
    }
  }
  return std::move(w).freeze(RawArg::Unreachable::Drop);
}

ArgStructure build_inference(const Inference& inf) {
  if (!inf.conclusion) throw ValidationError("inference without a conclusion");
  RawArg w;
  std::vector<NodeId> offsets;
  std::vector<NodeId> kids;
  offsets.reserve(inf.premises.size());
  for (const ArgStructure& p : inf.premises) {
    const NodeId off = w.splice_copy(p);
    offsets.push_back(off);
    kids.push_back(off);  // each premise's root lands at its offset
  }
  const NodeId rid = w.add_inner(inf.conclusion, std::move(kids));
  w.root = rid;
  auto translate = [&](const LeafRef& r) {
    if (r.premise >= inf.premises.size())
      throw DomainError("discharge reference to a nonexistent premise");
    if (r.node >= inf.premises[r.premise].size())
      throw DomainError("discharge reference to a nonexistent node");
    return static_cast<NodeId>(offsets[r.premise] + r.node);
  };
  auto insert_unique = [](std::map<NodeId, NodeId>& m, NodeId k, NodeId v) {
    if (!m.emplace(k, v).second)
      throw ValidationError("node discharged twice in one inference");
  };
  for (const LeafRef& r : inf.bind_assumptions)
    insert_unique(w.f, translate(r), rid);
  for (const LeafRef& r : inf.bind_rule_axioms)
    insert_unique(w.h, translate(r), rid);
  for (const LeafRef& r : inf.bind_rule_groups)
    insert_unique(w.g, translate(r), rid);
  return std::move(w).freeze();
}

ArgStructure one_step(std::vector<ArgStructure> premises,
                      FormulaPtr conclusion) {
  Inference inf;
  inf.premises = std::move(premises);
  inf.conclusion = std::move(conclusion);
  return build_inference(inf);
}

ArgStructure conj_intro(const ArgStructure& l, const ArgStructure& r) {
  FormulaPtr c = Formula::conj(l.conclusion(), r.conclusion());
  return one_step({l, r}, std::move(c));
}

ArgStructure disj_intro(const ArgStructure& d, FormulaPtr disjunction) {
  if (!disjunction || disjunction->kind() != FormulaKind::Or)
    throw ValidationError("disjunction introduction needs a disjunction");
  if (!equal(d.conclusion(), disjunction->left()) &&
      !equal(d.conclusion(), disjunction->right()))
    throw ValidationError(
        "premise concludes neither disjunct of the disjunction");
  return one_step({d}, std::move(disjunction));
}

ArgStructure imp_intro(const ArgStructure& body, FormulaPtr antecedent) {
  if (!antecedent) throw ValidationError("null antecedent");
  Inference inf;
  inf.conclusion = Formula::imp(antecedent, body.conclusion());
  for (NodeId leaf : body.open_assumption_leaves())
    if (equal(body.node(leaf).label, antecedent))
      inf.bind_assumptions.push_back(LeafRef{0, leaf});
  inf.premises.push_back(body);
  return build_inference(inf);
}

ArgStructure imp_intro_vacuous(const ArgStructure& body,
                               FormulaPtr antecedent) {
  if (!antecedent) throw ValidationError("null antecedent");
  Inference inf;
  inf.conclusion = Formula::imp(antecedent, body.conclusion());
  inf.premises.push_back(body);
  return build_inference(inf);
}

IntroForm intro_form(const ArgStructure& d) {
  const auto& root = d.node(d.root());
  if (root.children.empty()) return IntroForm::None;
  std::vector<NodeId> root_f;
  for (const auto& [k, v] : d.f())
    if (v == d.root()) root_f.push_back(k);
  for (const auto& [k, v] : d.h())
    if (v == d.root()) return IntroForm::None;
  for (const auto& [k, v] : d.g())
    if (v == d.root()) return IntroForm::None;

  switch (root.label->kind()) {
    case FormulaKind::And:
      if (root.children.size() == 2 && root_f.empty() &&
          equal(d.node(root.children[0]).label, root.label->left()) &&
          equal(d.node(root.children[1]).label, root.label->right()))
        return IntroForm::ConjI;
      return IntroForm::None;
    case FormulaKind::Or:
      if (root.children.size() == 1 && root_f.empty()) {
        if (equal(d.node(root.children[0]).label, root.label->left()))
          return IntroForm::DisjIL;
        if (equal(d.node(root.children[0]).label, root.label->right()))
          return IntroForm::DisjIR;
      }
      return IntroForm::None;
    case FormulaKind::Imp: {
      if (root.children.size() != 1 ||
          !equal(d.node(root.children[0]).label, root.label->right()))
        return IntroForm::None;
      for (NodeId k : root_f)
        if (!equal(d.node(k).label, root.label->left()))
          return IntroForm::None;
      return IntroForm::ImpI;
    }
    default:
      return IntroForm::None;
  }
}

bool is_canonical(const ArgStructure& d) {
  return intro_form(d) != IntroForm::None;
}

RawArg RawArg::from(const ArgStructure& d) {
  RawArg w;
  w.nodes = d.nodes();
  w.root = d.root();
  w.f = d.f();
  w.h = d.h();
  w.g = d.g();
  return w;
}

NodeId RawArg::add(ArgStructure::Node n) {
  nodes.push_back(std::move(n));
  return static_cast<NodeId>(nodes.size() - 1);
}

NodeId RawArg::add_assumption(FormulaPtr label) {
  return add({std::move(label), LeafKind::Assumption, false, {}});
}

NodeId RawArg::add_axiom(FormulaPtr label, bool marked) {
  return add({std::move(label), LeafKind::Axiom, marked, {}});
}

NodeId RawArg::add_inner(FormulaPtr label, std::vector<NodeId> children) {
  return add({std::move(label), LeafKind::None, false, std::move(children)});
}

NodeId RawArg::splice_copy(const ArgStructure& src) {
  const NodeId off = static_cast<NodeId>(nodes.size());
  for (const auto& n : src.nodes()) {
    ArgStructure::Node copy = n;
    for (NodeId& c : copy.children) c += off;
    nodes.push_back(std::move(copy));
  }
  for (const auto& [k, v] : src.f()) f[k + off] = v + off;
  for (const auto& [k, v] : src.h()) h[k + off] = v + off;
  for (const auto& [k, v] : src.g()) g[k + off] = v + off;
  return off;
}

ArgStructure RawArg::freeze(Unreachable policy) && {
  if (nodes.empty()) throw ValidationError("empty structure");
  if (root >= nodes.size()) throw ValidationError("root id out of range");

  std::vector<NodeId> order;
  order.reserve(nodes.size());
  std::vector<NodeId> old2new(nodes.size(), kNoNode);
  std::vector<char> seen(nodes.size(), 0);
  std::vector<NodeId> stack{root};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    if (id >= nodes.size())
      throw ValidationError("child id out of range");
    if (seen[id])
      throw ValidationError("node reachable by two paths (not a tree)");
    seen[id] = 1;
    old2new[id] = static_cast<NodeId>(order.size());
    order.push_back(id);
    const auto& kids = nodes[id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      if (*it >= nodes.size())
        throw ValidationError("child id out of range");
      stack.push_back(*it);
    }
  }
  if (policy == Unreachable::Forbid && order.size() != nodes.size())
    throw ValidationError("unreachable nodes in structure");

  ArgStructure out;
  out.nodes_.reserve(order.size());
  for (NodeId old : order) {
    ArgStructure::Node n = std::move(nodes[old]);
    for (NodeId& c : n.children) c = old2new[c];
    out.nodes_.push_back(std::move(n));
  }
  auto remap = [&](const std::map<NodeId, NodeId>& m) {
    std::map<NodeId, NodeId> res;
    for (const auto& [k, v] : m) {
      if (k >= old2new.size() || v >= old2new.size())
        throw ValidationError("discharge map references an unknown node");
      if (old2new[k] == kNoNode) continue;  // bound node was removed
      if (old2new[v] == kNoNode)
        throw ValidationError(
            "dangling discharge binding: bound node survives but its binder "
            "is gone");
      res[old2new[k]] = old2new[v];
    }
    return res;
  };
  out.f_ = remap(f);
  out.h_ = remap(h);
  out.g_ = remap(g);
  out.validate_and_index();
  return out;
}

}  // namespace ptsem
