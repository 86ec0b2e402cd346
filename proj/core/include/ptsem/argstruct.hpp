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

#ifndef PTSEM_ARGSTRUCT_HPP_
#define PTSEM_ARGSTRUCT_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ptsem/errors.hpp"
#include "ptsem/formula.hpp"

namespace ptsem {

// Argument structures: finite rooted formula-labelled trees whose leaves are
// either assumption-leaves or axiom-leaves, together with three discharge
// maps.  In the tree a node's children are its premises; "below" means
// towards the root (the conclusion).
//
//   f : assumption-leaf -> strictly-below node   (assumption discharge)
//   h : atom-labelled axiom-leaf -> strictly-below node
//       (discharge of an assumed axiom-shaped rule)
//   g : atom-labelled inner node (standing for the edge group linking it to
//       its children) -> strictly-below node
//       (discharge of an assumed proper rule applied at that node)
//
// h- and g-targets must be atom-labelled inner nodes with atom-labelled
// children, and no assumption-leaf may be f-discharged at such a target.
//
// Values are immutable and always stored in canonical preorder (root = 0,
// then each child subtree left to right), so structural equality is
// field-wise and node ids double as stable position handles.
class ArgStructure;

using NodeId = std::uint32_t;
inline constexpr NodeId kNoNode = static_cast<NodeId>(-1);

enum class LeafKind : std::uint8_t { None, Assumption, Axiom };

class ArgStructure {
 public:
  struct Node {
    FormulaPtr label;
    LeafKind leaf = LeafKind::None;
    // Distinguished-instance marker; only axiom-leaves may carry it.  Used
    // to track a designated axiom through grafting.
    bool marked = false;
    std::vector<NodeId> children;
  };

  // Validating constructor from raw parts; renumbers into canonical
  // preorder.  Node ids in the maps refer to indices of `nodes`.
  ArgStructure(std::vector<Node> nodes, NodeId root,
               std::map<NodeId, NodeId> f, std::map<NodeId, NodeId> h,
               std::map<NodeId, NodeId> g);

  static ArgStructure assumption(FormulaPtr label);
  static ArgStructure axiom(FormulaPtr label, bool marked = false);

  const std::vector<Node>& nodes() const { return nodes_; }
  const Node& node(NodeId id) const;
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  FormulaPtr conclusion() const { return nodes_[0].label; }

  const std::map<NodeId, NodeId>& f() const { return f_; }
  const std::map<NodeId, NodeId>& h() const { return h_; }
  const std::map<NodeId, NodeId>& g() const { return g_; }

  bool is_leaf(NodeId id) const { return node(id).children.empty(); }
  // Parent id, or kNoNode for the root.
  NodeId parent(NodeId id) const;
  // True iff `below` lies on the path from `id` towards the root, strictly.
  bool strictly_below(NodeId below, NodeId id) const;
  // All ids in the subtree rooted at `id` (the nodes at or above it).
  std::vector<NodeId> subtree_ids(NodeId id) const;

  // f-unmapped assumption-leaves, in preorder.
  std::vector<NodeId> open_assumption_leaves() const;
  // Their labels, deduplicated, canonically ordered.
  std::vector<FormulaPtr> open_assumptions() const;

  bool operator==(const ArgStructure& o) const;
  bool operator!=(const ArgStructure& o) const { return !(*this == o); }

  // Canonical serialisation; equal structures agree on it.
  std::string canonical_string() const;

 private:
  ArgStructure() = default;
  friend struct RawArg;

  // Checks the class invariants above and fills parents_.
  void validate_and_index();

  std::vector<Node> nodes_;
  std::vector<NodeId> parents_;
  std::map<NodeId, NodeId> f_, h_, g_;
};

// Every assumption-leaf is f-mapped.
bool is_closed(const ArgStructure& d);

// All labels atomic and every leaf an axiom-leaf: the shape of a derivation
// in an atomic system, with h/g recording rule discharge.
bool is_atomic_derivation_shape(const ArgStructure& d);

// The standalone structure rooted at `pos`.  Assumption-leaves bound below
// `pos` come out open; axiom-leaf/edge-group bindings crossing the boundary
// are not representable standalone and raise ValidationError.
ArgStructure subtree(const ArgStructure& d, NodeId pos);

// The subtrees of the root's children, left to right.
std::vector<ArgStructure> immediate_substructures(const ArgStructure& d);

// Replace the subtree at `target` by `replacement` (conclusions must match).
// Bindings wholly inside the removed region disappear; bindings whose leaf
// survives keep their binder.  A surviving binding that would point into the
// removed region raises ValidationError (dangling binder).
ArgStructure substitute(const ArgStructure& d, NodeId target,
                        const ArgStructure& replacement);

// Assignment of closed structures to the formulas they conclude.
class SigmaAssignment {
 public:
  // Validates: image closed and concluding `formula`.
  void assign(const FormulaPtr& formula, ArgStructure image);
  const ArgStructure* find(const FormulaPtr& formula) const;
  bool empty() const { return images_.empty(); }
  std::size_t size() const { return images_.size(); }

 private:
  std::map<std::string, ArgStructure> images_;
};

// Replace every open assumption-leaf by its σ-image.  Requires σ to cover
// all open assumption formulas; the result is closed.  Closed d comes back
// unchanged.
ArgStructure sigma_instance(const ArgStructure& d, const SigmaAssignment& s);

// A final inference step: premise structures, a conclusion, and the
// discharges the step performs (all bound at the new root).  Node references
// use each premise's own canonical ids.
struct LeafRef {
  std::size_t premise = 0;
  NodeId node = 0;
};

struct Inference {
  std::vector<ArgStructure> premises;
  FormulaPtr conclusion;
  std::vector<LeafRef> bind_assumptions;  // f-bind these assumption-leaves
  std::vector<LeafRef> bind_rule_axioms;  // h-bind these axiom-leaves
  std::vector<LeafRef> bind_rule_groups;  // g-bind these edge-group heads
};

ArgStructure build_inference(const Inference& inf);

// Convenience builders for the standard final steps.
ArgStructure one_step(std::vector<ArgStructure> premises,
                      FormulaPtr conclusion);
ArgStructure conj_intro(const ArgStructure& l, const ArgStructure& r);
// d must conclude one disjunct of `disjunction` (left preferred on a tie).
ArgStructure disj_intro(const ArgStructure& d, FormulaPtr disjunction);
// Binds every open `antecedent`-leaf of body at the new root.
ArgStructure imp_intro(const ArgStructure& body, FormulaPtr antecedent);
// Binds nothing (vacuous discharge).
ArgStructure imp_intro_vacuous(const ArgStructure& body,
                               FormulaPtr antecedent);

// The form of the final step, when it is an introduction.
enum class IntroForm { None, ConjI, DisjIL, DisjIR, ImpI };
IntroForm intro_form(const ArgStructure& d);
// Last inference is a conjunction/disjunction/implication introduction.
bool is_canonical(const ArgStructure& d);

// Mutable working form used to assemble structures; freeze() validates and
// canonicalises.  Node ids here are indices into `nodes` and stay stable
// while building.
struct RawArg {
  std::vector<ArgStructure::Node> nodes;
  NodeId root = 0;
  std::map<NodeId, NodeId> f, h, g;

  static RawArg from(const ArgStructure& d);

  NodeId add(ArgStructure::Node n);
  NodeId add_assumption(FormulaPtr label);
  NodeId add_axiom(FormulaPtr label, bool marked = false);
  NodeId add_inner(FormulaPtr label, std::vector<NodeId> children);
  // Appends a copy of `src` (all of it); returns the id offset, i.e. src id
  // k becomes offset + k.  Internal bindings are carried over.
  NodeId splice_copy(const ArgStructure& src);

  enum class Unreachable { Forbid, Drop };
  ArgStructure freeze(Unreachable policy = Unreachable::Forbid) &&;
};

}  // namespace ptsem

#endif  // PTSEM_ARGSTRUCT_HPP_
