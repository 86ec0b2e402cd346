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

#include "ptsem/formula.hpp"

#include <cctype>

namespace ptsem {

bool is_valid_atom_name(const std::string& name) {
  if (name.empty() || name == kBottomName) return false;
  if (!std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

FormulaPtr Formula::atom(const std::string& name) {
  if (!is_valid_atom_name(name)) {
    throw ValidationError("invalid atom name: '" + name + "'");
  }
  return FormulaPtr(new Formula(FormulaKind::Atom, name, nullptr, nullptr));
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr b(
      new Formula(FormulaKind::Bottom, "", nullptr, nullptr));
  return b;
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw ValidationError("null operand in conj");
  return FormulaPtr(
      new Formula(FormulaKind::And, "", std::move(a), std::move(b)));
}

FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw ValidationError("null operand in disj");
  return FormulaPtr(
      new Formula(FormulaKind::Or, "", std::move(a), std::move(b)));
}

FormulaPtr Formula::imp(FormulaPtr a, FormulaPtr b) {
  if (!a || !b) throw ValidationError("null operand in imp");
  return FormulaPtr(
      new Formula(FormulaKind::Imp, "", std::move(a), std::move(b)));
}

FormulaPtr Formula::neg(FormulaPtr a) { return imp(std::move(a), bottom()); }

const std::string& Formula::atom_name() const {
  if (kind_ != FormulaKind::Atom) {
    throw ValidationError("atom_name() on non-atom formula");
  }
  return atom_;
}

const FormulaPtr& Formula::left() const {
  if (!left_) throw ValidationError("left() on nullary formula");
  return left_;
}

const FormulaPtr& Formula::right() const {
  if (!right_) throw ValidationError("right() on nullary formula");
  return right_;
}

bool equal(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FormulaKind::Atom:
      return a.atom_name() == b.atom_name();
    case FormulaKind::Bottom:
      return true;
    default:
      return equal(*a.left(), *b.left()) && equal(*a.right(), *b.right());
  }
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return equal(*a, *b);
}

// Kind rank, then name, then children, lexicographically.
static int compare(const Formula& a, const Formula& b) {
  if (a.kind() != b.kind()) {
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  }
  switch (a.kind()) {
    case FormulaKind::Atom:
      return a.atom_name().compare(b.atom_name());
    case FormulaKind::Bottom:
      return 0;
    default: {
      int c = compare(*a.left(), *b.left());
      if (c != 0) return c;
      return compare(*a.right(), *b.right());
    }
  }
}

bool formula_less(const FormulaPtr& a, const FormulaPtr& b) {
  return compare(*a, *b) < 0;
}

static void print_to(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::Atom:
      out += f.atom_name();
      return;
    case FormulaKind::Bottom:
      out += kBottomName;
      return;
    case FormulaKind::And:
      out += "(and ";
      break;
    case FormulaKind::Or:
      out += "(or ";
      break;
    case FormulaKind::Imp:
      out += "(imp ";
      break;
  }
  print_to(*f.left(), out);
  out += ' ';
  print_to(*f.right(), out);
  out += ')';
}

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(f, out);
  return out;
}

std::string print_formula(const FormulaPtr& f) {
  if (!f) throw ValidationError("print_formula(null)");
  return print_formula(*f);
}

namespace {

// Minimal recursive-descent reader for the prefix grammar.
class FormulaReader {
 public:
  explicit FormulaReader(const std::string& text) : text_(text) {}

  FormulaPtr read_all() {
    FormulaPtr f = read();
    skip_ws();
    if (pos_ != text_.size()) {
      throw ParseError("trailing input after formula", pos_);
    }
    return f;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  std::string read_symbol() {
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')') {
        break;
      }
      ++pos_;
    }
    if (pos_ == start) throw ParseError("expected a symbol", pos_);
    return text_.substr(start, pos_ - start);
  }

  FormulaPtr read() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    if (text_[pos_] == ')') throw ParseError("unexpected ')'", pos_);
    if (text_[pos_] != '(') {
      std::size_t at = pos_;
      std::string sym = read_symbol();
      if (sym == kBottomName) return Formula::bottom();
      if (!is_valid_atom_name(sym)) {
        throw ParseError("invalid atom name '" + sym + "'", at);
      }
      return Formula::atom(sym);
    }
    ++pos_;  // '('
    skip_ws();
    std::size_t at = pos_;
    std::string head = read_symbol();
    FormulaKind k;
    if (head == "and") {
      k = FormulaKind::And;
    } else if (head == "or") {
      k = FormulaKind::Or;
    } else if (head == "imp") {
      k = FormulaKind::Imp;
    } else {
      throw ParseError("expected 'and', 'or' or 'imp', got '" + head + "'", at);
    }
    FormulaPtr l = read();
    FormulaPtr r = read();
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ')') {
      throw ParseError("expected ')'", pos_);
    }
    ++pos_;
    switch (k) {
      case FormulaKind::And:
        return Formula::conj(l, r);
      case FormulaKind::Or:
        return Formula::disj(l, r);
      default:
        return Formula::imp(l, r);
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  return FormulaReader(text).read_all();
}

FormulaPtr apply_substitution(const FormulaPtr& f, const AtomSubstitution& s) {
  if (!f) throw ValidationError("apply_substitution(null)");
  switch (f->kind()) {
    case FormulaKind::Atom: {
      auto it = s.find(f->atom_name());
      return it == s.end() ? f : it->second;
    }
    case FormulaKind::Bottom:
      return f;
    case FormulaKind::And:
      return Formula::conj(apply_substitution(f->left(), s),
                           apply_substitution(f->right(), s));
    case FormulaKind::Or:
      return Formula::disj(apply_substitution(f->left(), s),
                           apply_substitution(f->right(), s));
    default:
      return Formula::imp(apply_substitution(f->left(), s),
                          apply_substitution(f->right(), s));
  }
}

bool is_harrop(const FormulaPtr& f) {
  if (!f) throw ValidationError("is_harrop(null)");
  switch (f->kind()) {
    case FormulaKind::Atom:
    case FormulaKind::Bottom:
      return true;
    case FormulaKind::And:
      return is_harrop(f->left()) && is_harrop(f->right());
    case FormulaKind::Or:
      return false;
    default:  // Imp: only the consequent matters.
      return is_harrop(f->right());
  }
}

}  // namespace ptsem
