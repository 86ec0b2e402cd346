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

#ifndef PTSEM_SERIALIZE_HPP_
#define PTSEM_SERIALIZE_HPP_

#include <string>
#include <vector>

#include "ptsem/argstruct.hpp"
#include "ptsem/atomic_system.hpp"
#include "ptsem/constructions.hpp"
#include "ptsem/formula.hpp"

namespace ptsem {

// Text formats for every value the workbench reads or writes.  All formats
// are s-expressions over the same tokenizer: parentheses and bare symbols,
// whitespace-insensitive, with `;` starting a comment that runs to the end
// of the line.  Every printer round-trips through its parser, and each
// parse_* function requires exactly one term (trailing garbage is an error).
// Parsers throw ParseError with a byte offset; structurally bad values
// surface as ValidationError from the constructed types.
//
//   formula      p | bot | (and A B) | (or A B) | (imp A B)
//   rule         (rule => p) | (rule (p) (q) => r)
//                | (rule (((rule => p)) q) => r)     ; discharging slot
//   base file    (base <rule>*)
//   structure    (node FORMULA (<node>*) <marker>*)  ; see below
//   term         (wit <skel>) | (tag 1|2 <term>) | (lam ATOM <term>)
//                | (need FORMULA)
//   skeleton     (slot ATOM) | (apply <rule> <skel>*)
//   sequent      "A1 , A2 ==> B"                     ; not an s-expression
//
// Structure markers sit on the node they classify and point at binders by
// canonical preorder index (the root is 0):
//   :assume          open assumption-leaf
//   :assume N        assumption-leaf discharged at node N
//   :axiom           axiom-leaf
//   :axiom N         axiom-leaf whose assumed rule is discharged at node N
//   :marked          designated-instance flag, only after :axiom forms
//   :bind-rule N     inner node whose rule application is discharged at N
// Every leaf carries exactly one of the :assume/:axiom forms; inner nodes
// carry at most one :bind-rule.

std::string print_base(const Base& b);
AtomicRule parse_rule(const std::string& text);
Base parse_base(const std::string& text);

std::string print_argstruct(const ArgStructure& d);
ArgStructure parse_argstruct(const std::string& text);

// The printer for construction terms lives with the term type
// (print_construction); this is its inverse.
ConstructionPtr parse_construction(const std::string& text);

struct Sequent {
  std::vector<FormulaPtr> antecedents;
  FormulaPtr succedent;
};

// "A1 , A2 ==> B"; the antecedent list may be empty ("==> B").
Sequent parse_sequent(const std::string& text);
std::string print_sequent(const Sequent& s);

}  // namespace ptsem

#endif  // PTSEM_SERIALIZE_HPP_
