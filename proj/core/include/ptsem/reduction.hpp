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

#ifndef PTSEM_REDUCTION_HPP_
#define PTSEM_REDUCTION_HPP_

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ptsem/argstruct.hpp"
#include "ptsem/errors.hpp"

namespace ptsem {

// A rewrite on argument structures: a partial function given as an explicit
// domain predicate plus a transform total on that domain.  Transforms take
// nothing but the structure — no rule base, no justification — so every
// Reduction here is schematic across bases by construction.
//
// The four laws every reduction must satisfy:
//   1. it maps argument structures to argument structures;
//   2. its domain is closed under substitution instances;
//   3. it preserves the conclusion and never adds open assumptions;
//   4. it commutes with substitution instances.
// check_reduction_laws property-checks these on sampled inputs.
struct Reduction {
  std::string name;
  std::function<bool(const ArgStructure&)> in_domain;
  // Throws DomainError outside the domain.
  std::function<ArgStructure(const ArgStructure&)> transform;
};

// A finite set of reductions, keyed by name.  One justification extends
// another when it contains every reduction of the other (by name).
class Justification {
 public:
  Justification() = default;
  explicit Justification(std::vector<Reduction> reductions);

  void add(Reduction r);  // replaces any reduction with the same name
  const std::vector<Reduction>& reductions() const { return reductions_; }
  bool contains(const std::string& name) const;
  const Reduction* find(const std::string& name) const;
  bool extends(const Justification& other) const;
  std::size_t size() const { return reductions_.size(); }

 private:
  std::vector<Reduction> reductions_;  // kept sorted by name
};

// One immediate rewrite: apply phi to the sub-structure at `pos` and graft
// the contractum back in place.  Assumption bindings that cross the
// extraction boundary are re-threaded onto the contractum's corresponding
// open leaves; the position is rejected (DomainError) when re-threading
// would be ambiguous — two crossing bindings of one formula with different
// binders, or a crossing formula that also occurs genuinely open in the
// sub-structure — or when a rule discharge crosses the boundary.
ArgStructure apply_at(const ArgStructure& d, NodeId pos,
                      const Reduction& phi);

struct ReductionStep {
  NodeId position;
  std::string rule;
  ArgStructure result;
};

struct ReductionTrace {
  ArgStructure start;
  std::vector<ReductionStep> steps;
  const ArgStructure& last() const {
    return steps.empty() ? start : steps.back().result;
  }
};

enum class ReduceStatus {
  Found,         // target reached; trace holds the witness
  NotReachable,  // search space exhausted below the cap: definitively no
  CapExhausted   // frontier still live at the cap: inconclusive
};

struct ReduceResult {
  ReduceStatus status = ReduceStatus::NotReachable;
  std::optional<ReductionTrace> trace;
};

// Does d rewrite to target in at most step_cap immediate steps using the
// justification's reductions?  Breadth-first over positions in canonical
// order, so traces are deterministic; the reflexive case is step 0.
ReduceResult reduces_to(const ArgStructure& d, const ArgStructure& target,
                        const Justification& j, std::size_t step_cap);

// Re-checks a trace step by step.
bool verify_trace(const ReductionTrace& t, const Justification& j);

// Law checking over sampled domain members.  The sampler may decline a draw
// (nullopt); sigma assignments are generated internally over the sample's
// open assumptions.
using DomainSampler =
    std::function<std::optional<ArgStructure>(std::mt19937&)>;

struct LawCheckReport {
  bool passed = false;
  int failed_law = 0;  // 1..4, or 0 when the sampler left the domain
  std::string detail;
  std::size_t samples = 0;
};

LawCheckReport check_reduction_laws(const Reduction& phi,
                                    const DomainSampler& gen,
                                    std::size_t sample_count, unsigned seed);

// ---------------------------------------------------------------------------
// The concrete catalog.
// ---------------------------------------------------------------------------

// Implication-elimination redex: →E whose major premise ends with →I and
// whose final step discharges nothing.  Contracts by grafting the minor
// derivation onto the assumption occurrences the →I step bound.
ArgStructure phi_imp(const ArgStructure& d);

// Expansion step on a one-step inference from A→(B→C) to B→(A→C): unfolds
// it into the explicit two-elimination, two-introduction derivation.
ArgStructure iota(const ArgStructure& d);

// First rewrite for the atomic split step, i.e. the one-step inference from
// p→(q∨r) to (p→q)∨(p→r) over atoms.  Domain: the premise derivation is a
// closed →I structure whose body is open (its assumptions are exactly the
// p-occurrences bound by that →I).  The bound p-assumptions become
// designated (marked) axiom-leaves and the →I step turns vacuous.
ArgStructure phi1(const ArgStructure& d);

// Second rewrite for the atomic split step.  Domain: the premise derivation
// is a vacuous →I over a one-premise ∨-introduction whose body is an atomic
// derivation (possibly using the atom p as an axiom).  Undischarged p-axioms
// become assumptions, and the ∨-introduction and →I steps are swapped, the
// →I now binding those assumptions.
ArgStructure phi2(const ArgStructure& d);

// Unfolds a split step with Harrop antecedent into the generalised
// ∨-elimination figure: the major premise is eliminated against a discharged
// antecedent assumption, and each disjunct of the conclusion is introduced
// in its own discharged minor branch.
ArgStructure split_to_s(const ArgStructure& d);

// Contracts the generalised ∨-elimination when its major branch ends with
// ∨-introduction: the abstracted major body replaces the discharged
// hypothesis occurrences of the selected minor branch.
ArgStructure phi_s(const ArgStructure& d);

// The six rewrites above as Reductions, sorted by name:
// "iota", "phi1", "phi2", "phi_imp", "phi_s", "split_to_s".
const std::vector<Reduction>& standard_reductions();
const Reduction* find_standard_reduction(const std::string& name);

}  // namespace ptsem

#endif  // PTSEM_REDUCTION_HPP_
