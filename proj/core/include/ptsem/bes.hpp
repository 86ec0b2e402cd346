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

#ifndef PTSEM_BES_HPP_
#define PTSEM_BES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ptsem/atomic_system.hpp"
#include "ptsem/formula.hpp"

namespace ptsem {

// Consequence is defined by quantifying over arbitrary base extensions; the
// workbench bounds that quantifier by a finite, deterministically enumerated
// pool of candidate rules.  Affirmative verdicts are therefore always
// pool-relative; refutations name a concrete extension and replay
// unconditionally.

struct PoolParams {
  std::vector<std::string> atoms;
  int max_level = 1;      // 0, 1 or 2
  int max_premises = 2;   // for level-1 rules: premise sets up to this size
  std::size_t max_size = 12;  // candidate list is truncated to this length
};

class ExtensionPool {
 public:
  ExtensionPool() = default;
  ExtensionPool(std::vector<AtomicRule> rules, PoolParams params)
      : rules_(std::move(rules)), params_(std::move(params)) {}

  const std::vector<AtomicRule>& rules() const { return rules_; }
  const PoolParams& params() const { return params_; }
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<AtomicRule> rules_;
  PoolParams params_;
};

// Deterministic enumeration: all axioms over the atom universe; then all
// one-to-max_premises-premise rules (premise sets in lexicographic order,
// every conclusion); then, when max_level is 2, all single-slot rules
// discharging one axiom.  The list is truncated to max_size in that order.
ExtensionPool make_pool(const PoolParams& params);

// All index subsets of the pool in canonical order: by size, then
// lexicographically.  Throws DomainError for pools too large to enumerate
// exhaustively (more than 16 candidates).
std::vector<std::vector<std::size_t>> pool_subsets(const ExtensionPool& pool);

// b extended with the subset's candidate rules.
Base pool_extension(const Base& b, const ExtensionPool& pool,
                    const std::vector<std::size_t>& subset);

// The decisive judgement of a failed sequent: at `extension`, every formula
// in `antecedents` is supported while `failed` is not.  Replaying means
// re-evaluating exactly that at the named extension.
struct Refutation {
  Base extension;
  std::vector<FormulaPtr> antecedents;
  FormulaPtr failed;
  std::string note;
};

struct SequentVerdict {
  bool holds = false;
  std::optional<Refutation> refutation;

  static SequentVerdict holds_within_pool() { return {true, std::nullopt}; }
  static SequentVerdict refuted_by(Refutation r) {
    return {false, std::move(r)};
  }
};

// Does a follow from gamma over b, with base extensions drawn from the pool?
// Empty gamma asks whether b itself supports a.
SequentVerdict bes_holds(const std::vector<FormulaPtr>& gamma,
                         const FormulaPtr& a, const Base& b,
                         const ExtensionPool& pool);

// Consequence at the empty base: the logical notion.
SequentVerdict bes_logical(const std::vector<FormulaPtr>& gamma,
                           const FormulaPtr& a, const ExtensionPool& pool);

// Re-evaluates the certificate's judgement at its named extension.
bool replay_refutation(const Refutation& cert, const ExtensionPool& pool);

struct SubstitutionRefutation {
  AtomSubstitution substitution;
  Refutation refutation;
};

// Searches the given substitutions, in order, for one whose instance of
// gamma ==> a is refuted as a logical consequence.
std::optional<SubstitutionRefutation> refute_substitution_closure(
    const std::vector<FormulaPtr>& gamma, const FormulaPtr& a,
    const std::vector<AtomSubstitution>& subs, const ExtensionPool& pool);

}  // namespace ptsem

#endif  // PTSEM_BES_HPP_
