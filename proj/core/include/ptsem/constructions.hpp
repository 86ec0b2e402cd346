// Copyright 2026 The ptsem Authors
// SPDX-License-Identifier: Apache-2.0
//
// BHK-style construction terms for the conjunction-free fragment: atomic
// derivation witnesses, tagged disjunction evidence, and lambda abstractions
// over atoms.  Terms are first-order trees with explicit slots instead of
// host-level closures, so they stay comparable, serializable, and
// replayable.  On top of the term language sit bounded construction checks
// relative to an extension pool, the derived construction that splits an
// implication-into-disjunction witness, and the rendering of a derivation's
// distinguished-axiom applications into open assumptions.

#ifndef PTSEM_CONSTRUCTIONS_HPP_
#define PTSEM_CONSTRUCTIONS_HPP_

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ptsem/argstruct.hpp"
#include "ptsem/atomic_system.hpp"
#include "ptsem/bes.hpp"
#include "ptsem/formula.hpp"

namespace ptsem {

class Construction;
using ConstructionPtr = std::shared_ptr<const Construction>;

// An atomic-derivation skeleton: a rule applied to child skeletons, or a
// slot awaiting a closed derivation of a named atom.  Slot-free skeletons
// are exactly atomic derivations.  Arity and premise agreement are
// validated on construction, so filling every slot with a derivation of its
// atom always yields a well-shaped derivation.
struct DerivSkeleton {
  std::optional<AtomicRule> rule;       // empty: this node is a slot
  std::string slot_atom;                // set when rule is empty
  std::vector<DerivSkeleton> children;  // empty for slots

  // The atom this node concludes (the rule's conclusion, or the slot atom).
  const std::string& conclusion() const;

  static DerivSkeleton slot(std::string atom);
  static DerivSkeleton apply(AtomicRule rule,
                             std::vector<DerivSkeleton> children);
  static DerivSkeleton from_derivation(const AtomicDerivation& d);
};

// Immutable construction term.
//
//   Witness — an atomic-derivation skeleton (possibly with open slots);
//   Tagged  — disjunction evidence: an index (1 or 2) plus an inner term;
//   Lambda  — abstraction over an atom; applying it fills every slot of the
//             body named by that atom with the argument;
//   Ref     — a term-level slot awaiting a construction of a formula.
//
// A term is closed when it has no free slots; lambda binders shield the
// slots of their bound atom inside their body.
class Construction {
 public:
  enum class Kind { Witness, Tagged, Lambda, Ref };

  static ConstructionPtr witness(const AtomicDerivation& d);
  static ConstructionPtr witness_skel(DerivSkeleton s);
  static ConstructionPtr tagged(int index, ConstructionPtr inner);
  static ConstructionPtr lambda(std::string atom, ConstructionPtr body);
  static ConstructionPtr ref(FormulaPtr formula);

  Kind kind() const { return kind_; }

  // Witness only.
  const DerivSkeleton& skeleton() const;
  // Witness only; requires a slot-free skeleton.
  AtomicDerivation derivation() const;

  // Tagged only.
  int index() const;
  const ConstructionPtr& inner() const;

  // Lambda only.
  const std::string& bound_atom() const;
  const ConstructionPtr& body() const;

  // Ref only.
  const FormulaPtr& ref_formula() const;

 private:
  Construction() = default;

  Kind kind_ = Kind::Ref;
  DerivSkeleton skel_;
  int index_ = 0;
  ConstructionPtr inner_;
  std::string bound_;
  FormulaPtr ref_;
};

// S-expression rendering; structural identity coincides with print
// equality.
std::string print_construction(const ConstructionPtr& k);
bool equal_constructions(const ConstructionPtr& a, const ConstructionPtr& b);

// The free slots of a term: formula-print keyed.  Skeleton slots contribute
// their atom, Refs their formula; a lambda removes its bound atom from its
// body's contribution.
std::map<std::string, FormulaPtr> free_slots(const ConstructionPtr& k);
bool is_closed_construction(const ConstructionPtr& k);

// Replace free slots by the given terms, keyed by formula print.  Skeleton
// slots accept only closed Witness plugs (their derivations are spliced
// in); Refs accept any term.  Slots without a plug stay open; lambda
// binders shield their atom.  Throws ValidationError when a skeleton slot's
// plug is not a closed atomic witness.
ConstructionPtr fill(const ConstructionPtr& k,
                     const std::map<std::string, ConstructionPtr>& plugs);

// Apply a Lambda to an argument: fill the body's slots named by the bound
// atom.  Throws DomainError when k is not a Lambda.
ConstructionPtr apply_construction(const ConstructionPtr& k,
                                   const ConstructionPtr& arg);

// Bounds for the construction checks.
struct ConstructionCaps {
  std::size_t recursion_limit = 32;
  std::size_t expansion_cap = 100000;  // derivability-search budget
};

struct ConstructionVerdict {
  enum class Tag { Yes, No, Unknown };
  Tag tag = Tag::Unknown;
  std::string reason;
  std::string bounds;

  bool yes() const { return tag == Tag::Yes; }
  bool no() const { return tag == Tag::No; }
  bool unknown() const { return tag == Tag::Unknown; }

  static ConstructionVerdict make_yes(std::string note);
  static ConstructionVerdict make_no(std::string why);
  static ConstructionVerdict make_unknown(std::string why);
};

// Is k a construction of a on b?  Atoms ask for a witness derivation the
// base accepts; disjunctions recurse through the tag; implications bind an
// atom and are checked at every pool extension of b against an antecedent
// witness found by exact derivability search (extensions with no witness
// hold vacuously).  Conjunction anywhere is a domain error; so is a
// compound implication antecedent, since lambda binders range over atoms.
ConstructionVerdict is_construction(const ConstructionPtr& k,
                                    const FormulaPtr& a, const Base& b,
                                    const ExtensionPool& pool,
                                    const ConstructionCaps& caps = {});

// Is k, with free slots drawn from gamma, a construction of a from gamma on
// b?  For every pool extension of b, one construction per premise formula
// is generated (exact witness search for atoms; tag/abstraction assembly
// for compounds), the slots are filled, and the result is checked as a
// construction of a there.  Extensions where some atomic premise has
// definitively no construction hold vacuously; when a compound premise
// cannot be generated the verdict degrades to Unknown rather than claiming
// vacuity.
ConstructionVerdict is_construction_from(const ConstructionPtr& k,
                                         const std::vector<FormulaPtr>& gamma,
                                         const FormulaPtr& a, const Base& b,
                                         const ExtensionPool& pool,
                                         const ConstructionCaps& caps = {});

// Render a derivation as an argument structure in which every undischarged
// application of the named axiom becomes an open assumption leaf.  Rule
// applications matched by an enclosing discharge slot are kept bound
// (axiom-leaf or inner-node bindings); all other applications become plain
// nodes.  Throws DomainError when a discharged rule above level one has no
// structure counterpart.
ArgStructure replace_axiom(const AtomicDerivation& d, const std::string& atom);

// Render an all-atomic argument structure as an open atomic witness: the
// structure's open assumptions are axiomized, the result is read back as a
// derivation over the extended base, and the leaves that were assumptions
// become slots named by their atoms.  Throws DomainError when the structure
// has non-atomic labels or does not read back as a derivation.
ConstructionPtr witness_from_structure(const ArgStructure& d, const Base& b);

// The derived construction splitting an implication-into-disjunction
// witness.  Input: a Lambda abstraction k1 over atom p whose body, applied
// to the bare p-axiom witness, evaluates to a tagged atomic witness; the
// evaluation is performed over the scratch extension c + axiom p.  Output:
// Tagged(i, Lambda(p, w)) where w is the evaluated witness itself when the
// base c already accepts it, and otherwise the witness with its undischarged
// p-axiom applications turned back into slots for p.
struct SplitConstruction {
  ConstructionPtr result;
  int index = 0;           // which disjunct the evaluation landed in
  bool axiom_used = false; // whether the scratch axiom had to be abstracted
};

SplitConstruction split_construction(const ConstructionPtr& k1, const Base& c);

}  // namespace ptsem

#endif  // PTSEM_CONSTRUCTIONS_HPP_
