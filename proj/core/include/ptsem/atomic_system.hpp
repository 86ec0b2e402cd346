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

#ifndef PTSEM_ATOMIC_SYSTEM_HPP_
#define PTSEM_ATOMIC_SYSTEM_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ptsem/errors.hpp"
#include "ptsem/formula.hpp"

namespace ptsem {

// A production over atoms (atom names or the bottom token).  Each premise
// slot carries the finite set of rules that become assumable while the
// premise is being derived; a slot with an empty set is an ordinary premise.
// Rules with no premises are axioms.
//
// Slot discharge sets are canonicalised (sorted, deduplicated) on
// construction, so structural equality and ordering are well defined.
class AtomicRule {
 public:
  struct Slot {
    std::vector<AtomicRule> discharges;
    std::string premise;
  };

  AtomicRule(std::vector<Slot> slots, std::string conclusion);

  static AtomicRule axiom(const std::string& conclusion);
  // All-empty discharge sets.
  static AtomicRule simple(const std::vector<std::string>& premises,
                           const std::string& conclusion);

  const std::string& conclusion() const { return conclusion_; }
  const std::vector<Slot>& slots() const { return slots_; }
  bool is_axiom() const { return slots_.empty(); }

  // 0 for axioms; 1 when every discharge set is empty; otherwise two more
  // than the highest level among the discharged rules.
  int level() const;

  bool operator==(const AtomicRule& o) const { return compare(o) == 0; }
  bool operator!=(const AtomicRule& o) const { return compare(o) != 0; }
  bool operator<(const AtomicRule& o) const { return compare(o) < 0; }

  int compare(const AtomicRule& o) const;

 private:
  std::vector<Slot> slots_;
  std::string conclusion_;
};

// Canonical text form, e.g. (rule => p), (rule (p) (q) => r),
// (rule (((rule => p)) q) => r).
std::string print_rule(const AtomicRule& r);

// The absurdity rule family: from bottom, any atom.  These rules belong to
// every base implicitly and are never stored.
AtomicRule ae_rule(const std::string& conclusion);
bool is_ae_rule(const AtomicRule& r);

// A finite set of atomic rules.  Stored sorted and deduplicated; two bases
// are equal iff they hold the same rules.
class Base {
 public:
  Base() = default;
  explicit Base(std::vector<AtomicRule> rules);

  const std::vector<AtomicRule>& rules() const { return rules_; }
  bool contains(const AtomicRule& r) const;
  bool empty() const { return rules_.empty(); }
  std::size_t size() const { return rules_.size(); }
  // Highest rule level present; 0 for the empty base.
  int level() const;

  Base union_with(const Base& other) const;
  Base with(const AtomicRule& extra) const;

  bool operator==(const Base& o) const { return rules_ == o.rules_; }
  bool operator!=(const Base& o) const { return !(*this == o); }

  // Canonical serialisation of the rule set; equal bases agree on it.
  std::string fingerprint() const;

 private:
  std::vector<AtomicRule> rules_;
};

// c extends b: every rule of b is in c.
bool extends(const Base& c, const Base& b);

// A tree of rule applications.  Leaves apply axioms; an inner node applies a
// rule whose i-th premise is established by the i-th child.  Construction
// checks local shape (arity and premise/conclusion agreement); whether every
// applied rule is actually available is a separate question answered by
// check_derivation.
class AtomicDerivation {
 public:
  AtomicDerivation(AtomicRule rule, std::vector<AtomicDerivation> children);

  const AtomicRule& rule() const { return rule_; }
  const std::vector<AtomicDerivation>& children() const { return children_; }
  const std::string& conclusion() const { return rule_.conclusion(); }
  std::size_t node_count() const;

  bool operator==(const AtomicDerivation& o) const;

 private:
  AtomicRule rule_;
  std::vector<AtomicDerivation> children_;
};

struct CheckResult {
  bool ok = false;
  // On failure: which rule application was not available, and where.
  std::string reason;
};

// Does d establish its conclusion from `assumed` over b?  Every applied rule
// must be assumed, in b, an absurdity rule, or discharged by an enclosing
// slot.
CheckResult check_derivation(const AtomicDerivation& d,
                             const std::vector<AtomicRule>& assumed,
                             const Base& b);

enum class DeriveStatus { Derived, NotDerivable, CapExhausted };

struct DeriveResult {
  DeriveStatus status = DeriveStatus::NotDerivable;
  std::optional<AtomicDerivation> derivation;  // set iff Derived
  std::size_t expansions = 0;

  bool derived() const { return status == DeriveStatus::Derived; }
};

// Backward-chaining search for a derivation of `goal` from `assumed` over b.
// Memoised on (goal, available-rule-set fingerprint); search is complete, so
// NotDerivable is definitive.  CapExhausted is reported only when the
// expansion budget ran out before the space was exhausted.
DeriveResult derive(const std::string& goal,
                    const std::vector<AtomicRule>& assumed, const Base& b,
                    std::size_t expansion_cap = 100000);

}  // namespace ptsem

#endif  // PTSEM_ATOMIC_SYSTEM_HPP_
