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

#include "ptsem/constructions.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptsem/errors.hpp"
#include "ptsem/validity.hpp"

namespace ptsem {

namespace {

bool is_atom_token(const std::string& s) {
  return is_valid_atom_name(s) || s == kBottomName;
}

FormulaPtr atom_formula(const std::string& name) {
  return name == kBottomName ? Formula::bottom() : Formula::atom(name);
}

}  // namespace

// ---------------------------------------------------------------------------
// DerivSkeleton

const std::string& DerivSkeleton::conclusion() const {
  return rule ? rule->conclusion() : slot_atom;
}

DerivSkeleton DerivSkeleton::slot(std::string atom) {
  if (!is_atom_token(atom)) {
    throw ValidationError("a derivation slot must name an atom or absurdity");
  }
  DerivSkeleton s;
  s.slot_atom = std::move(atom);
  return s;
}

DerivSkeleton DerivSkeleton::apply(AtomicRule rule,
                                   std::vector<DerivSkeleton> children) {
  if (children.size() != rule.slots().size()) {
    throw ValidationError("rule " + print_rule(rule) + " takes " +
                          std::to_string(rule.slots().size()) +
                          " premisses, got " +
                          std::to_string(children.size()));
  }
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].conclusion() != rule.slots()[i].premise) {
      throw ValidationError("premiss " + std::to_string(i) + " of rule " +
                            print_rule(rule) + " needs '" +
                            rule.slots()[i].premise + "' but the child ends in '" +
                            children[i].conclusion() + "'");
    }
  }
  DerivSkeleton s;
  s.rule = std::move(rule);
  s.children = std::move(children);
  return s;
}

DerivSkeleton DerivSkeleton::from_derivation(const AtomicDerivation& d) {
  std::vector<DerivSkeleton> kids;
  kids.reserve(d.children().size());
  for (const AtomicDerivation& c : d.children()) {
    kids.push_back(from_derivation(c));
  }
  return apply(d.rule(), std::move(kids));
}

namespace {

bool skeleton_closed(const DerivSkeleton& s) {
  if (!s.rule.has_value()) return false;
  for (const DerivSkeleton& c : s.children) {
    if (!skeleton_closed(c)) return false;
  }
  return true;
}

AtomicDerivation skeleton_to_derivation(const DerivSkeleton& s) {
  if (!s.rule.has_value()) {
    throw DomainError("the witness still has an open slot for '" +
                      s.slot_atom + "'");
  }
  std::vector<AtomicDerivation> kids;
  kids.reserve(s.children.size());
  for (const DerivSkeleton& c : s.children) {
    kids.push_back(skeleton_to_derivation(c));
  }
  return AtomicDerivation(*s.rule, std::move(kids));
}

void skeleton_slot_atoms(const DerivSkeleton& s,
                         std::map<std::string, FormulaPtr>& out) {
  if (!s.rule.has_value()) {
    out[s.slot_atom] = atom_formula(s.slot_atom);
    return;
  }
  for (const DerivSkeleton& c : s.children) skeleton_slot_atoms(c, out);
}

void print_skeleton(std::ostringstream& os, const DerivSkeleton& s) {
  if (!s.rule.has_value()) {
    os << "(slot " << s.slot_atom << ")";
    return;
  }
  os << "(apply " << print_rule(*s.rule);
  for (const DerivSkeleton& c : s.children) {
    os << " ";
    print_skeleton(os, c);
  }
  os << ")";
}

// Splice closed atomic-witness plugs into matching slots; other slots stay.
DerivSkeleton fill_skeleton(const DerivSkeleton& s,
                            const std::map<std::string, ConstructionPtr>& plugs) {
  if (!s.rule.has_value()) {
    const auto it = plugs.find(s.slot_atom);
    if (it == plugs.end()) return s;
    const ConstructionPtr& plug = it->second;
    if (!plug || plug->kind() != Construction::Kind::Witness ||
        !skeleton_closed(plug->skeleton())) {
      throw ValidationError(
          "a derivation slot accepts only a closed atomic witness");
    }
    if (plug->skeleton().conclusion() != s.slot_atom) {
      throw ValidationError("the plug ends in '" +
                            plug->skeleton().conclusion() +
                            "' but the slot needs '" + s.slot_atom + "'");
    }
    return plug->skeleton();
  }
  DerivSkeleton out;
  out.rule = s.rule;
  out.children.reserve(s.children.size());
  for (const DerivSkeleton& c : s.children) {
    out.children.push_back(fill_skeleton(c, plugs));
  }
  return out;
}

const char* kind_phrase(Construction::Kind k) {
  switch (k) {
    case Construction::Kind::Witness:
      return "an atomic witness";
    case Construction::Kind::Tagged:
      return "tagged evidence";
    case Construction::Kind::Lambda:
      return "an abstraction";
    case Construction::Kind::Ref:
      return "an open reference";
  }
  return "an unknown term";
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

ConstructionPtr Construction::witness(const AtomicDerivation& d) {
  return witness_skel(DerivSkeleton::from_derivation(d));
}

ConstructionPtr Construction::witness_skel(DerivSkeleton s) {
  if (!s.rule.has_value() && s.slot_atom.empty()) {
    throw ValidationError("an atomic witness needs a skeleton");
  }
  auto k = std::shared_ptr<Construction>(new Construction());
  k->kind_ = Kind::Witness;
  k->skel_ = std::move(s);
  return k;
}

ConstructionPtr Construction::tagged(int index, ConstructionPtr inner) {
  if (index != 1 && index != 2) {
    throw ValidationError("a disjunction tag must be 1 or 2");
  }
  if (!inner) throw ValidationError("tagged evidence needs an inner term");
  auto k = std::shared_ptr<Construction>(new Construction());
  k->kind_ = Kind::Tagged;
  k->index_ = index;
  k->inner_ = std::move(inner);
  return k;
}

ConstructionPtr Construction::lambda(std::string atom, ConstructionPtr body) {
  if (!is_atom_token(atom)) {
    throw ValidationError("an abstraction must bind an atom or absurdity");
  }
  if (!body) throw ValidationError("an abstraction needs a body");
  auto k = std::shared_ptr<Construction>(new Construction());
  k->kind_ = Kind::Lambda;
  k->bound_ = std::move(atom);
  k->inner_ = std::move(body);
  return k;
}

ConstructionPtr Construction::ref(FormulaPtr formula) {
  if (!formula) throw ValidationError("an open reference needs a formula");
  auto k = std::shared_ptr<Construction>(new Construction());
  k->kind_ = Kind::Ref;
  k->ref_ = std::move(formula);
  return k;
}

const DerivSkeleton& Construction::skeleton() const {
  if (kind_ != Kind::Witness) {
    throw DomainError("this term is not an atomic witness");
  }
  return skel_;
}

AtomicDerivation Construction::derivation() const {
  return skeleton_to_derivation(skeleton());
}

int Construction::index() const {
  if (kind_ != Kind::Tagged) throw DomainError("this term is not tagged");
  return index_;
}

const ConstructionPtr& Construction::inner() const {
  if (kind_ != Kind::Tagged) throw DomainError("this term is not tagged");
  return inner_;
}

const std::string& Construction::bound_atom() const {
  if (kind_ != Kind::Lambda) {
    throw DomainError("this term is not an abstraction");
  }
  return bound_;
}

const ConstructionPtr& Construction::body() const {
  if (kind_ != Kind::Lambda) {
    throw DomainError("this term is not an abstraction");
  }
  return inner_;
}

const FormulaPtr& Construction::ref_formula() const {
  if (kind_ != Kind::Ref) {
    throw DomainError("this term is not an open reference");
  }
  return ref_;
}

// ---------------------------------------------------------------------------
// Printing, equality, free slots

namespace {

void print_term(std::ostringstream& os, const ConstructionPtr& k) {
  switch (k->kind()) {
    case Construction::Kind::Witness:
      os << "(wit ";
      print_skeleton(os, k->skeleton());
      os << ")";
      return;
    case Construction::Kind::Tagged:
      os << "(tag " << k->index() << " ";
      print_term(os, k->inner());
      os << ")";
      return;
    case Construction::Kind::Lambda:
      os << "(lam " << k->bound_atom() << " ";
      print_term(os, k->body());
      os << ")";
      return;
    case Construction::Kind::Ref:
      os << "(need " << print_formula(k->ref_formula()) << ")";
      return;
  }
}

void collect_free(const ConstructionPtr& k, std::set<std::string> bound,
                  std::map<std::string, FormulaPtr>& out) {
  switch (k->kind()) {
    case Construction::Kind::Witness: {
      std::map<std::string, FormulaPtr> slots;
      skeleton_slot_atoms(k->skeleton(), slots);
      for (auto& [key, f] : slots) {
        if (bound.count(key) == 0) out[key] = f;
      }
      return;
    }
    case Construction::Kind::Tagged:
      collect_free(k->inner(), std::move(bound), out);
      return;
    case Construction::Kind::Lambda:
      bound.insert(k->bound_atom());
      collect_free(k->body(), std::move(bound), out);
      return;
    case Construction::Kind::Ref: {
      const std::string key = print_formula(k->ref_formula());
      if (bound.count(key) == 0) out[key] = k->ref_formula();
      return;
    }
  }
}

}  // namespace

std::string print_construction(const ConstructionPtr& k) {
  if (!k) throw ValidationError("cannot print a missing term");
  std::ostringstream os;
  print_term(os, k);
  return os.str();
}

bool equal_constructions(const ConstructionPtr& a, const ConstructionPtr& b) {
  return print_construction(a) == print_construction(b);
}

std::map<std::string, FormulaPtr> free_slots(const ConstructionPtr& k) {
  if (!k) throw ValidationError("cannot inspect a missing term");
  std::map<std::string, FormulaPtr> out;
  collect_free(k, {}, out);
  return out;
}

bool is_closed_construction(const ConstructionPtr& k) {
  return free_slots(k).empty();
}

// ---------------------------------------------------------------------------
// fill / apply

ConstructionPtr fill(const ConstructionPtr& k,
                     const std::map<std::string, ConstructionPtr>& plugs) {
  if (!k) throw ValidationError("cannot fill a missing term");
  if (plugs.empty()) return k;
  switch (k->kind()) {
    case Construction::Kind::Witness:
      return Construction::witness_skel(fill_skeleton(k->skeleton(), plugs));
    case Construction::Kind::Tagged:
      return Construction::tagged(k->index(), fill(k->inner(), plugs));
    case Construction::Kind::Lambda: {
      std::map<std::string, ConstructionPtr> shadowed = plugs;
      shadowed.erase(k->bound_atom());
      if (shadowed.empty()) return k;
      return Construction::lambda(k->bound_atom(), fill(k->body(), shadowed));
    }
    case Construction::Kind::Ref: {
      const auto it = plugs.find(print_formula(k->ref_formula()));
      if (it == plugs.end()) return k;
      if (!it->second) throw ValidationError("cannot plug a missing term");
      return it->second;
    }
  }
  throw DomainError("unreachable term kind");
}

ConstructionPtr apply_construction(const ConstructionPtr& k,
                                   const ConstructionPtr& arg) {
  if (!k || k->kind() != Construction::Kind::Lambda) {
    throw DomainError("only an abstraction can be applied");
  }
  if (!arg) throw ValidationError("application needs an argument term");
  return fill(k->body(), {{k->bound_atom(), arg}});
}

// ---------------------------------------------------------------------------
// Verdicts

ConstructionVerdict ConstructionVerdict::make_yes(std::string note) {
  ConstructionVerdict v;
  v.tag = Tag::Yes;
  v.reason = std::move(note);
  return v;
}

ConstructionVerdict ConstructionVerdict::make_no(std::string why) {
  ConstructionVerdict v;
  v.tag = Tag::No;
  v.reason = std::move(why);
  return v;
}

ConstructionVerdict ConstructionVerdict::make_unknown(std::string why) {
  ConstructionVerdict v;
  v.tag = Tag::Unknown;
  v.reason = std::move(why);
  return v;
}

// ---------------------------------------------------------------------------
// is_construction

namespace {

std::string pool_bounds_note(const ExtensionPool& pool,
                             const ConstructionCaps& caps) {
  std::ostringstream os;
  os << "pool of " << pool.size() << " candidate rule"
     << (pool.size() == 1 ? "" : "s")
     << " quantified per abstraction step; derivability search capped at "
     << caps.expansion_cap << " expansions";
  return os.str();
}

// k is known to be closed here; closedness is preserved by the recursion.
ConstructionVerdict check_construction(const ConstructionPtr& k,
                                       const FormulaPtr& a, const Base& b,
                                       const ExtensionPool& pool,
                                       const ConstructionCaps& caps,
                                       std::size_t depth) {
  if (depth > caps.recursion_limit) {
    return ConstructionVerdict::make_unknown(
        "the construction check hit its recursion limit");
  }
  switch (a->kind()) {
    case FormulaKind::And:
      throw DomainError("conjunction is outside the construction fragment");
    case FormulaKind::Atom:
    case FormulaKind::Bottom: {
      const std::string goal = print_formula(a);
      if (k->kind() != Construction::Kind::Witness) {
        return ConstructionVerdict::make_no("the atom '" + goal + "' needs " +
                                            std::string(kind_phrase(
                                                Construction::Kind::Witness)) +
                                            ", got " + kind_phrase(k->kind()));
      }
      if (!skeleton_closed(k->skeleton())) {
        return ConstructionVerdict::make_no(
            "the witness still has open slots");
      }
      if (k->skeleton().conclusion() != goal) {
        return ConstructionVerdict::make_no("the witness ends in '" +
                                            k->skeleton().conclusion() +
                                            "', not '" + goal + "'");
      }
      const AtomicDerivation d = k->derivation();
      const CheckResult chk = check_derivation(d, {}, b);
      if (!chk.ok) {
        return ConstructionVerdict::make_no(
            "the witness does not check over the base: " + chk.reason);
      }
      return ConstructionVerdict::make_yes("witness checks over the base");
    }
    case FormulaKind::Or: {
      if (k->kind() != Construction::Kind::Tagged) {
        return ConstructionVerdict::make_no(
            "a disjunction needs tagged evidence, got " +
            std::string(kind_phrase(k->kind())));
      }
      const FormulaPtr& side = k->index() == 1 ? a->left() : a->right();
      ConstructionVerdict v =
          check_construction(k->inner(), side, b, pool, caps, depth + 1);
      if (v.no()) {
        return ConstructionVerdict::make_no(
            "the tagged term is no construction of disjunct " +
            std::to_string(k->index()) + ": " + v.reason);
      }
      return v;
    }
    case FormulaKind::Imp: {
      const FormulaPtr& ante = a->left();
      if (!ante->is_atomic()) {
        throw DomainError(
            "abstractions bind atoms, so implication antecedents must be "
            "atomic here");
      }
      const std::string key = print_formula(ante);
      if (k->kind() != Construction::Kind::Lambda) {
        return ConstructionVerdict::make_no(
            "an implication needs an abstraction, got " +
            std::string(kind_phrase(k->kind())));
      }
      if (k->bound_atom() != key) {
        return ConstructionVerdict::make_no("the abstraction binds '" +
                                            k->bound_atom() +
                                            "' but the antecedent is '" + key +
                                            "'");
      }
      bool saw_unknown = false;
      std::string unknown_why;
      for (const auto& subset : pool_subsets(pool)) {
        const Base c = pool_extension(b, pool, subset);
        const DeriveResult dr = derive(key, {}, c, caps.expansion_cap);
        if (dr.status == DeriveStatus::NotDerivable) continue;
        if (dr.status == DeriveStatus::CapExhausted) {
          saw_unknown = true;
          unknown_why = "the derivability search for '" + key +
                        "' ran out of budget at extension " + c.fingerprint();
          continue;
        }
        const ConstructionPtr filled =
            apply_construction(k, Construction::witness(*dr.derivation));
        const ConstructionVerdict v =
            check_construction(filled, a->right(), c, pool, caps, depth + 1);
        if (v.no()) {
          return ConstructionVerdict::make_no(
              "counterexample at extension " + c.fingerprint() +
              ": applied to a '" + key + "' witness, " + v.reason);
        }
        if (v.unknown()) {
          saw_unknown = true;
          unknown_why = v.reason;
        }
      }
      if (saw_unknown) return ConstructionVerdict::make_unknown(unknown_why);
      return ConstructionVerdict::make_yes(
          "abstraction checked at every pool extension");
    }
  }
  throw DomainError("unreachable formula kind");
}

}  // namespace

ConstructionVerdict is_construction(const ConstructionPtr& k,
                                    const FormulaPtr& a, const Base& b,
                                    const ExtensionPool& pool,
                                    const ConstructionCaps& caps) {
  if (!k) throw ValidationError("the construction check needs a term");
  if (!a) throw ValidationError("the construction check needs a formula");
  const auto fs = free_slots(k);
  if (!fs.empty()) {
    return ConstructionVerdict::make_no("the term has a free slot for '" +
                                        fs.begin()->first + "'");
  }
  ConstructionVerdict v = check_construction(k, a, b, pool, caps, 0);
  v.bounds = pool_bounds_note(pool, caps);
  return v;
}

// ---------------------------------------------------------------------------
// is_construction_from

namespace {

struct Generated {
  enum class Status { Exists, None, Unknown };
  Status status = Status::Unknown;
  ConstructionPtr term;
  std::string why;
};

// One canonical construction of g over c, when the search can find or refute
// one.  `None` is reported only when exhaustive search rules every candidate
// out (atoms, and disjunctions whose sides are settled); implications are
// generated as constant abstractions and never reported `None`, since a
// vacuous abstraction may exist even when no consequent construction does.
Generated gen_construction(const FormulaPtr& g, const Base& c,
                           const ConstructionCaps& caps, std::size_t depth) {
  Generated out;
  if (depth > caps.recursion_limit) {
    out.why = "premise generation hit its recursion limit";
    return out;
  }
  switch (g->kind()) {
    case FormulaKind::And:
      throw DomainError("conjunction is outside the construction fragment");
    case FormulaKind::Atom:
    case FormulaKind::Bottom: {
      const DeriveResult dr = derive(print_formula(g), {}, c,
                                     caps.expansion_cap);
      if (dr.status == DeriveStatus::Derived) {
        out.status = Generated::Status::Exists;
        out.term = Construction::witness(*dr.derivation);
      } else if (dr.status == DeriveStatus::NotDerivable) {
        out.status = Generated::Status::None;
        out.why = "'" + print_formula(g) + "' has no derivation here";
      } else {
        out.why = "the derivability search for '" + print_formula(g) +
                  "' ran out of budget";
      }
      return out;
    }
    case FormulaKind::Or: {
      const Generated l = gen_construction(g->left(), c, caps, depth + 1);
      if (l.status == Generated::Status::Exists) {
        out.status = Generated::Status::Exists;
        out.term = Construction::tagged(1, l.term);
        return out;
      }
      const Generated r = gen_construction(g->right(), c, caps, depth + 1);
      if (r.status == Generated::Status::Exists) {
        out.status = Generated::Status::Exists;
        out.term = Construction::tagged(2, r.term);
        return out;
      }
      if (l.status == Generated::Status::None &&
          r.status == Generated::Status::None) {
        out.status = Generated::Status::None;
        out.why = "neither disjunct of '" + print_formula(g) +
                  "' has a construction here";
        return out;
      }
      out.why = l.status == Generated::Status::Unknown ? l.why : r.why;
      return out;
    }
    case FormulaKind::Imp: {
      if (!g->left()->is_atomic()) {
        out.why = "premise generation cannot abstract over the compound "
                  "antecedent of '" +
                  print_formula(g) + "'";
        return out;
      }
      const Generated body = gen_construction(g->right(), c, caps, depth + 1);
      if (body.status == Generated::Status::Exists) {
        out.status = Generated::Status::Exists;
        out.term =
            Construction::lambda(print_formula(g->left()), body.term);
        return out;
      }
      out.why = body.status == Generated::Status::None
                    ? "no consequent construction found to build an "
                      "abstraction for '" +
                          print_formula(g) + "'"
                    : body.why;
      return out;
    }
  }
  throw DomainError("unreachable formula kind");
}

}  // namespace

ConstructionVerdict is_construction_from(const ConstructionPtr& k,
                                         const std::vector<FormulaPtr>& gamma,
                                         const FormulaPtr& a, const Base& b,
                                         const ExtensionPool& pool,
                                         const ConstructionCaps& caps) {
  if (!k) throw ValidationError("the construction check needs a term");
  if (!a) throw ValidationError("the construction check needs a formula");
  std::set<std::string> allowed;
  for (const FormulaPtr& g : gamma) {
    if (!g) throw ValidationError("premise formulas must be present");
    allowed.insert(print_formula(g));
  }
  for (const auto& [key, f] : free_slots(k)) {
    (void)f;
    if (allowed.count(key) == 0) {
      return ConstructionVerdict::make_no(
          "the term has a free slot for '" + key +
          "', which is not among the premises");
    }
  }

  bool saw_unknown = false;
  std::string unknown_why;
  for (const auto& subset : pool_subsets(pool)) {
    const Base c = pool_extension(b, pool, subset);
    std::map<std::string, ConstructionPtr> plugs;
    bool vacuous = false;
    bool stuck = false;
    for (const FormulaPtr& g : gamma) {
      const Generated gen = gen_construction(g, c, caps, 0);
      if (gen.status == Generated::Status::None) {
        vacuous = true;
        break;
      }
      if (gen.status == Generated::Status::Unknown) {
        stuck = true;
        saw_unknown = true;
        unknown_why = gen.why;
        break;
      }
      plugs[print_formula(g)] = gen.term;
    }
    if (vacuous || stuck) continue;

    const ConstructionPtr filled = fill(k, plugs);
    const ConstructionVerdict v =
        check_construction(filled, a, c, pool, caps, 0);
    if (v.no()) {
      std::ostringstream os;
      os << "counterexample at extension " << c.fingerprint()
         << " with premise constructions";
      for (const auto& [key, term] : plugs) {
        os << " [" << key << " := " << print_construction(term) << "]";
      }
      os << ": " << v.reason;
      return ConstructionVerdict::make_no(os.str());
    }
    if (v.unknown()) {
      saw_unknown = true;
      unknown_why = v.reason;
    }
  }

  ConstructionVerdict v =
      saw_unknown
          ? ConstructionVerdict::make_unknown(unknown_why)
          : ConstructionVerdict::make_yes(
                "premise-filled term checked at every pool extension");
  v.bounds = pool_bounds_note(pool, caps) +
             "; one generated construction per premise per extension";
  return v;
}

// ---------------------------------------------------------------------------
// replace_axiom

ArgStructure replace_axiom(const AtomicDerivation& d, const std::string& atom) {
  if (!is_atom_token(atom)) {
    throw ValidationError("the replaced axiom must name an atom or absurdity");
  }
  const AtomicRule target = AtomicRule::axiom(atom);

  RawArg raw;
  struct Frame {
    NodeId node;
    const AtomicRule* rule;
    std::size_t slot;
  };
  std::vector<Frame> stack;

  std::function<NodeId(const AtomicDerivation&)> emit =
      [&](const AtomicDerivation& n) -> NodeId {
    const AtomicRule& r = n.rule();
    const Frame* binder = nullptr;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      const auto& ds = it->rule->slots()[it->slot].discharges;
      if (std::find(ds.begin(), ds.end(), r) != ds.end()) {
        binder = &*it;
        break;
      }
    }
    if (binder != nullptr && !r.is_axiom() && r.level() != 1) {
      throw DomainError(
          "discharged rules above level one have no argument-structure "
          "counterpart");
    }
    const bool open_instance = binder == nullptr && r == target;

    ArgStructure::Node node;
    node.label = atom_formula(n.conclusion());
    node.leaf = open_instance ? LeafKind::Assumption
                              : (n.children().empty() ? LeafKind::Axiom
                                                      : LeafKind::None);
    const NodeId id = raw.add(std::move(node));
    if (binder != nullptr) {
      if (r.is_axiom()) {
        raw.h[id] = binder->node;
      } else {
        raw.g[id] = binder->node;
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

  emit(d);
  raw.root = 0;
  return std::move(raw).freeze();
}

// ---------------------------------------------------------------------------
// witness_from_structure

ConstructionPtr witness_from_structure(const ArgStructure& d, const Base& b) {
  for (const ArgStructure::Node& n : d.nodes()) {
    if (!n.label->is_atomic()) {
      throw DomainError(
          "only all-atomic structures render as atomic witnesses");
    }
  }
  const auto [axd, ext] = axiomize_assumptions(d, b);
  const Reconstruction rec = reconstruct_derivation(axd, ext);
  if (!rec.ok) {
    throw DomainError("the structure does not read back as a derivation: " +
                      rec.reason);
  }

  // Axiomizing flips leaf kinds in place, so node ids line up between d,
  // axd, and the reconstructed derivation; the original assumption-leaves
  // become the slots.
  std::function<DerivSkeleton(NodeId, const AtomicDerivation&)> walk =
      [&](NodeId id, const AtomicDerivation& n) -> DerivSkeleton {
    const ArgStructure::Node& node = d.node(id);
    if (node.leaf == LeafKind::Assumption) {
      return DerivSkeleton::slot(print_formula(node.label));
    }
    std::vector<DerivSkeleton> kids;
    kids.reserve(node.children.size());
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      kids.push_back(walk(node.children[i], n.children()[i]));
    }
    return DerivSkeleton::apply(n.rule(), std::move(kids));
  };
  return Construction::witness_skel(walk(d.root(), *rec.derivation));
}

// ---------------------------------------------------------------------------
// split_construction

SplitConstruction split_construction(const ConstructionPtr& k1,
                                     const Base& c) {
  if (!k1 || k1->kind() != Construction::Kind::Lambda) {
    throw DomainError("the split construction needs an abstraction");
  }
  if (!is_closed_construction(k1)) {
    throw DomainError("the split construction needs a closed abstraction");
  }
  const std::string p = k1->bound_atom();
  if (!is_valid_atom_name(p)) {
    throw DomainError(
        "the split construction abstracts over a proper atom, not absurdity");
  }
  const AtomicRule p_axiom = AtomicRule::axiom(p);
  const Base scratch = c.with(p_axiom);

  const ConstructionPtr k2 =
      Construction::witness(AtomicDerivation(p_axiom, {}));
  const ConstructionPtr v = apply_construction(k1, k2);
  if (v->kind() != Construction::Kind::Tagged) {
    throw DomainError(
        "applying the abstraction to the bare antecedent witness must yield "
        "tagged evidence, got " +
        std::string(kind_phrase(v->kind())));
  }
  const ConstructionPtr& inner = v->inner();
  if (inner->kind() != Construction::Kind::Witness ||
      !skeleton_closed(inner->skeleton())) {
    throw DomainError(
        "the tagged evidence must be a closed atomic witness, got " +
        std::string(kind_phrase(inner->kind())));
  }
  const AtomicDerivation k3 = inner->derivation();
  const CheckResult over_scratch = check_derivation(k3, {}, scratch);
  if (!over_scratch.ok) {
    throw DomainError(
        "the evaluated witness does not check over the base extended with "
        "the antecedent axiom: " +
        over_scratch.reason);
  }

  SplitConstruction out;
  out.index = v->index();

  if (check_derivation(k3, {}, c).ok) {
    // The witness never really uses the antecedent axiom: the abstraction
    // can ignore its argument.
    out.axiom_used = false;
    out.result =
        Construction::tagged(out.index, Construction::lambda(p, inner));
    return out;
  }

  // Trade every undischarged application of the antecedent axiom back for a
  // slot, and abstract over it.
  out.axiom_used = true;
  struct Frame {
    const AtomicRule* rule;
    std::size_t slot;
  };
  std::vector<Frame> stack;
  std::function<DerivSkeleton(const AtomicDerivation&)> strip =
      [&](const AtomicDerivation& n) -> DerivSkeleton {
    const AtomicRule& r = n.rule();
    bool discharged = false;
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      const auto& ds = it->rule->slots()[it->slot].discharges;
      if (std::find(ds.begin(), ds.end(), r) != ds.end()) {
        discharged = true;
        break;
      }
    }
    if (!discharged && r == p_axiom) return DerivSkeleton::slot(p);
    std::vector<DerivSkeleton> kids;
    kids.reserve(n.children().size());
    for (std::size_t i = 0; i < n.children().size(); ++i) {
      stack.push_back({&r, i});
      kids.push_back(strip(n.children()[i]));
      stack.pop_back();
    }
    return DerivSkeleton::apply(r, std::move(kids));
  };
  out.result = Construction::tagged(
      out.index,
      Construction::lambda(p, Construction::witness_skel(strip(k3))));
  return out;
}

}  // namespace ptsem
