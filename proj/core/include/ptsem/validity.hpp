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

#ifndef PTSEM_VALIDITY_HPP_
#define PTSEM_VALIDITY_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptsem/argstruct.hpp"
#include "ptsem/atomic_system.hpp"
#include "ptsem/bes.hpp"
#include "ptsem/formula.hpp"
#include "ptsem/reduction.hpp"

namespace ptsem {

// Validity of an argument structure is judged against a justification set
// and a base: a closed argument for an atom must rewrite to an atomic
// derivation the base accepts, a closed argument for a compound must rewrite
// to an introduction whose sub-arguments are valid in turn, and an open
// argument must stay valid under every way of closing its assumptions with
// valid arguments over every base extension.  The last two quantifiers are
// not effectively enumerable, so the checker bounds them by an explicit
// catalog of closing arguments and a finite pool of extension rules, and
// every affirmative verdict is labelled with the bounds actually searched.

// ---------------------------------------------------------------------------
// Bridging argument structures and rule-application trees.

struct Reconstruction {
  bool ok = false;
  std::optional<AtomicDerivation> derivation;  // set iff ok
  std::string reason;                          // set iff !ok
};

// Reads an all-atomic, axiom-leaf-only structure back as a tree of rule
// applications over b.  An unbound axiom-leaf must be an axiom of b; an
// unbound inner node applies the first rule of b (or the absurdity rule,
// for a single premiss of the absurdity atom) whose conclusion and ordered
// premisses match and whose slots discharge everything bound to the node; a
// bound leaf or inner node applies an assumed rule that the binder's slot
// for its branch must discharge.  The result always re-checks against b.
Reconstruction reconstruct_derivation(const ArgStructure& d, const Base& b);

// Renders a rule-application tree as an argument structure.  Rules outside b
// (and not absurdity rules) are bound to the innermost enclosing slot that
// discharges them: axioms as bound axiom-leaves, one-premiss-level rules as
// bound inner nodes.  Rules of higher level among the discharged ones have
// no structure counterpart and raise DomainError, as does a rule neither in
// b nor discharged by any enclosing slot.
ArgStructure derivation_to_structure(const AtomicDerivation& der,
                                     const Base& b);

// Every open assumption-leaf turned into an axiom-leaf, paired with b
// extended by the axioms this introduces.
std::pair<ArgStructure, Base> axiomize_assumptions(const ArgStructure& d,
                                                   const Base& b);

// ---------------------------------------------------------------------------
// Verdicts.

enum class ValidityTag { Valid, Invalid, Inconclusive };

struct ValidityVerdict {
  ValidityTag tag = ValidityTag::Inconclusive;
  std::string reason;  // why invalid / what budget ran out / validity note
  // Evidence, when the question called for it: a rewrite trace to the
  // required form, and the reconstructed derivation for atomic conclusions.
  std::optional<ReductionTrace> trace;
  std::optional<AtomicDerivation> witness;
  std::string bounds;  // what was actually searched

  bool is_valid() const { return tag == ValidityTag::Valid; }
  bool is_invalid() const { return tag == ValidityTag::Invalid; }
  bool is_inconclusive() const { return tag == ValidityTag::Inconclusive; }

  static ValidityVerdict valid(std::string note) {
    ValidityVerdict v;
    v.tag = ValidityTag::Valid;
    v.reason = std::move(note);
    return v;
  }
  static ValidityVerdict invalid(std::string reason) {
    ValidityVerdict v;
    v.tag = ValidityTag::Invalid;
    v.reason = std::move(reason);
    return v;
  }
  static ValidityVerdict inconclusive(std::string reason) {
    ValidityVerdict v;
    v.tag = ValidityTag::Inconclusive;
    v.reason = std::move(reason);
    return v;
  }
};

// ---------------------------------------------------------------------------
// Bounding the open-argument quantifiers.

// Candidate closed arguments used to close open assumptions, each with the
// justification set its own validity may rely on.
class ClosedArgCatalog {
 public:
  struct Entry {
    FormulaPtr formula;
    ArgStructure structure;
    Justification justification;
  };

  // Validates that the structure is closed and concludes the formula.
  void add(FormulaPtr formula, ArgStructure structure,
           Justification justification);

  const std::vector<Entry>& entries() const { return entries_; }
  // Entries concluding the formula, in insertion order.
  std::vector<const Entry*> entries_for(const FormulaPtr& formula) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<Entry> entries_;
};

struct ValidityOptions {
  std::size_t step_cap = 6;           // rewrite-search depth per question
  std::size_t visit_cap = 50000;      // rewrite-search states per question
  std::size_t recursion_limit = 32;   // nesting of the validity recursion
  std::size_t max_assignments = 512;  // catalog combinations per open check
  // Ambient bounds used whenever the recursion passes through the open
  // clause; the explicit-argument entry points override them.
  ClosedArgCatalog catalog;
  ExtensionPool pool;
};

// ---------------------------------------------------------------------------
// The validity checker.

// Validity of a closed structure relative to j over b.  For an atomic
// conclusion, searches the rewrites reachable under j for a structure that
// reconstructs as a derivation over b; for a compound conclusion, searches
// for an introduction form and recurses on its sub-structures, open ones
// going through valid_open_bounded with the ambient catalog and pool.
// Throws DomainError when d is open.
ValidityVerdict valid_closed(const ArgStructure& d, const Justification& j,
                             const Base& b,
                             const ValidityOptions& opts = {});

// Bounded validity of an open structure relative to j over b: for every
// pool extension of b and every way of closing the open assumptions with
// catalog entries that are themselves valid there (relative to j extended
// by the entries' own justifications), the closed instance must be valid.
// Invalid reports the first counterexample combination; otherwise the
// verdict is valid within the stated bounds.  Throws DomainError when d is
// closed.
ValidityVerdict valid_open_bounded(const ArgStructure& d,
                                   const Justification& j, const Base& b,
                                   const ClosedArgCatalog& catalog,
                                   const ExtensionPool& pool,
                                   const ValidityOptions& opts = {});

// Justification-independent validity certificate for an all-atomic
// structure: turning every open assumption-leaf into an axiom-leaf must
// yield a derivation over b extended with those axioms.  Such a certificate
// holds for every justification set.  Throws DomainError when d has a
// non-atomic label or discharges assumptions.
ValidityVerdict valid_for_every_justification(const ArgStructure& d, const Base& b);

// The grafting rewrite determined by d (from assumptions gamma to A): it is
// defined on every structure ending with the one-step inference gamma |- A
// — with gamma empty, on the bare axiom-leaf for A — and replaces that final
// inference by grafting the premiss sub-structures onto d's open
// assumption-leaves.  The result satisfies the reduction laws.
Reduction graft_reduction(const ArgStructure& d);

// Bounded validity of the rule A1, ..., An / A (schematic premisses, no
// dischargement): closes the rule's one-step argument structure with
// catalog-assembled premiss tuples over pool extensions and checks the
// resulting instances, exactly as valid_open_bounded does.  Throws
// DomainError when the premiss list is empty.
ValidityVerdict rule_valid_bounded(const std::vector<FormulaPtr>& premises,
                                   const FormulaPtr& conclusion,
                                   const Justification& j, const Base& b,
                                   const ClosedArgCatalog& catalog,
                                   const ExtensionPool& pool,
                                   const ValidityOptions& opts = {});

// ---------------------------------------------------------------------------
// The split pipeline.

struct SplitOutcome {
  // Closed structure concluding (p -> q1) v (p -> q2).
  ArgStructure structure;
  // valid_closed of that structure relative to j extended with the two
  // split rewrites, over c.
  ValidityVerdict verdict;
  // The rewrite chain actually taken from the split-extended input to the
  // output; it replays under j extended with the two split rewrites.
  ReductionTrace pipeline;
  // Whether the scratch base c + {axiom p} was needed (open-body case).
  // That base is working state only; the verdict is relative to c itself.
  bool used_detour = false;
};

// Applies the split inference p -> (q1 v q2) |- (p -> q1) v (p -> q2) to a
// valid closed argument d1 and eliminates it again: d1 is first normalised
// to introduction form through its validity search, then the split step is
// contracted — directly when the antecedent is vacuously discharged, and
// otherwise by trading the discharged assumptions for a designated axiom,
// normalising over the scratch base c + {axiom p}, and trading the axiom
// back for a discharged assumption.  Throws DomainError when d1 is open,
// concludes anything but an atom-to-disjunction-of-atoms implication, or is
// not valid over c within the given bounds; throws Error when a search
// budget runs out mid-pipeline.
SplitOutcome split_transform(const ArgStructure& d1, const Justification& j,
                             const Base& c, const ValidityOptions& opts = {});

}  // namespace ptsem

#endif  // PTSEM_VALIDITY_HPP_
