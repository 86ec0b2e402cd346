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

#ifndef PTSEM_FORMULA_HPP_
#define PTSEM_FORMULA_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "ptsem/errors.hpp"

namespace ptsem {

// Propositional formulas over named atoms, absurdity, conjunction,
// disjunction and implication.  Negation is not primitive: not-A is
// Imp(A, bottom).  Values are immutable trees shared by pointer; use the
// factory functions below, which validate atom names.
class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class FormulaKind { Atom, Bottom, And, Or, Imp };

// Reserved spelling of absurdity in every text format.  It is also used as
// the "atom" slot of absurdity inside the atomic-rule layer, where bottom is
// a first-class rule conclusion/premise.
inline const std::string kBottomName = "bot";

// True iff `name` matches [a-z][a-zA-Z0-9_]* and is not the reserved bottom
// token.
bool is_valid_atom_name(const std::string& name);

class Formula {
 public:
  static FormulaPtr atom(const std::string& name);
  static FormulaPtr bottom();
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr imp(FormulaPtr a, FormulaPtr b);
  // Convenience: not-A, i.e. imp(a, bottom()).
  static FormulaPtr neg(FormulaPtr a);

  FormulaKind kind() const { return kind_; }
  // Atom only.
  const std::string& atom_name() const;
  // Binary connectives only.
  const FormulaPtr& left() const;
  const FormulaPtr& right() const;

  bool is_atom() const { return kind_ == FormulaKind::Atom; }
  bool is_bottom() const { return kind_ == FormulaKind::Bottom; }
  // Atom or bottom: the formulas admissible as atomic-rule material.
  bool is_atomic() const { return is_atom() || is_bottom(); }

 private:
  Formula(FormulaKind k, std::string name, FormulaPtr l, FormulaPtr r)
      : kind_(k), atom_(std::move(name)), left_(std::move(l)),
        right_(std::move(r)) {}

  FormulaKind kind_;
  std::string atom_;
  FormulaPtr left_, right_;
};

bool equal(const Formula& a, const Formula& b);
bool equal(const FormulaPtr& a, const FormulaPtr& b);
// Total order on formulas (used for canonical sorting of formula sets).
bool formula_less(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const {
    return formula_less(a, b);
  }
};

// Canonical fully parenthesised prefix form:
//   p | bot | (and A B) | (or A B) | (imp A B)
// parse_formula(print_formula(f)) reproduces f for every formula.
std::string print_formula(const Formula& f);
std::string print_formula(const FormulaPtr& f);
FormulaPtr parse_formula(const std::string& text);  // throws ParseError

// Atom-to-formula substitution maps.  Application is simultaneous (images
// are never re-substituted) and leaves bottom untouched.
using AtomSubstitution = std::map<std::string, FormulaPtr>;
FormulaPtr apply_substitution(const FormulaPtr& f, const AtomSubstitution& s);

// Harrop formulas: atoms and bottom are Harrop; (and A B) iff both are;
// (imp A B) iff B is; (or A B) never.
bool is_harrop(const FormulaPtr& f);

}  // namespace ptsem

#endif  // PTSEM_FORMULA_HPP_
