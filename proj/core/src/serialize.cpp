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

#include "ptsem/serialize.hpp"

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ptsem/errors.hpp"

namespace ptsem {

namespace {

// ---------------------------------------------------------------------------
// Generic s-expression reader shared by every format.

struct SExpr {
  bool is_list = false;
  std::string symbol;       // set when !is_list
  std::vector<SExpr> items; // set when is_list
  std::size_t pos = 0;      // byte offset of the first character
};

struct Tokenizer {
  const std::string& text;
  std::size_t at = 0;

  void skip_blank() {
    while (at < text.size()) {
      const char c = text[at];
      if (c == ';') {
        while (at < text.size() && text[at] != '\n') ++at;
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        ++at;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip_blank();
    return at >= text.size();
  }

  SExpr read() {
    skip_blank();
    if (at >= text.size()) throw ParseError("unexpected end of input", at);
    const std::size_t start = at;
    const char c = text[at];
    if (c == ')') throw ParseError("unmatched ')'", at);
    if (c == '(') {
      ++at;
      SExpr s;
      s.is_list = true;
      s.pos = start;
      for (;;) {
        skip_blank();
        if (at >= text.size()) throw ParseError("unclosed '('", start);
        if (text[at] == ')') {
          ++at;
          return s;
        }
        s.items.push_back(read());
      }
    }
    SExpr s;
    s.pos = start;
    while (at < text.size()) {
      const char k = text[at];
      if (k == '(' || k == ')' || k == ';' || k == ' ' || k == '\t' ||
          k == '\r' || k == '\n') {
        break;
      }
      ++at;
    }
    s.symbol = text.substr(start, at - start);
    return s;
  }
};

// Parses the whole text as exactly one term.
SExpr read_single(const std::string& text) {
  Tokenizer tz{text};
  SExpr s = tz.read();
  if (!tz.done()) throw ParseError("trailing input after the term", tz.at);
  return s;
}

const std::string& want_symbol(const SExpr& s, const char* what) {
  if (s.is_list) {
    throw ParseError(std::string("expected ") + what + ", found a list",
                     s.pos);
  }
  return s.symbol;
}

void want_head(const SExpr& s, const char* head) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list ||
      s.items[0].symbol != head) {
    throw ParseError(std::string("expected a (") + head + " ...) term",
                     s.pos);
  }
}

std::size_t want_index(const SExpr& s) {
  const std::string& sym = want_symbol(s, "a node index");
  if (sym.empty() ||
      sym.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a node index, found '" + sym + "'", s.pos);
  }
  return static_cast<std::size_t>(std::stoul(sym));
}

// ---------------------------------------------------------------------------
// Formulas.

FormulaPtr formula_from(const SExpr& s) {
  if (!s.is_list) {
    if (s.symbol == kBottomName) return Formula::bottom();
    if (is_valid_atom_name(s.symbol)) return Formula::atom(s.symbol);
    throw ParseError("not an atom: '" + s.symbol + "'", s.pos);
  }
  if (s.items.size() != 3 || s.items[0].is_list) {
    throw ParseError("a compound formula is (and|or|imp A B)", s.pos);
  }
  const std::string& head = s.items[0].symbol;
  FormulaPtr l = formula_from(s.items[1]);
  FormulaPtr r = formula_from(s.items[2]);
  if (head == "and") return Formula::conj(std::move(l), std::move(r));
  if (head == "or") return Formula::disj(std::move(l), std::move(r));
  if (head == "imp") return Formula::imp(std::move(l), std::move(r));
  throw ParseError("unknown connective '" + head + "'", s.items[0].pos);
}

// ---------------------------------------------------------------------------
// Rules and bases.

AtomicRule rule_from(const SExpr& s) {
  want_head(s, "rule");
  std::vector<AtomicRule::Slot> slots;
  std::size_t i = 1;
  for (; i < s.items.size(); ++i) {
    const SExpr& item = s.items[i];
    if (!item.is_list) break;  // the "=>" separator ends the slot list
    AtomicRule::Slot slot;
    if (item.items.size() == 1) {
      slot.premise = want_symbol(item.items[0], "a premise atom");
    } else if (item.items.size() == 2 && item.items[0].is_list) {
      for (const SExpr& d : item.items[0].items) {
        slot.discharges.push_back(rule_from(d));
      }
      slot.premise = want_symbol(item.items[1], "a premise atom");
    } else {
      throw ParseError("a premise slot is (p) or ((rule...) p)", item.pos);
    }
    slots.push_back(std::move(slot));
  }
  if (i + 2 != s.items.size() || s.items[i].is_list ||
      s.items[i].symbol != "=>") {
    throw ParseError("a rule ends with => and one conclusion atom", s.pos);
  }
  return AtomicRule(std::move(slots),
                    want_symbol(s.items[i + 1], "a conclusion atom"));
}

}  // namespace

AtomicRule parse_rule(const std::string& text) {
  return rule_from(read_single(text));
}

Base parse_base(const std::string& text) {
  const SExpr s = read_single(text);
  want_head(s, "base");
  std::vector<AtomicRule> rules;
  for (std::size_t i = 1; i < s.items.size(); ++i) {
    rules.push_back(rule_from(s.items[i]));
  }
  return Base(std::move(rules));
}

std::string print_base(const Base& b) {
  std::string out = "(base";
  for (const AtomicRule& r : b.rules()) {
    out += "\n  ";
    out += print_rule(r);
  }
  out += b.rules().empty() ? ")" : "\n)";
  return out;
}

// ---------------------------------------------------------------------------
// Argument structures.

namespace {

struct ArgParseState {
  RawArg raw;
  // Bindings recorded as (bound node, binder index) until all nodes exist.
  std::vector<std::pair<NodeId, std::size_t>> f, h, g;
};

NodeId node_from(const SExpr& s, ArgParseState& st) {
  want_head(s, "node");
  if (s.items.size() < 3 || !s.items[2].is_list) {
    throw ParseError("a node is (node FORMULA (children) markers...)", s.pos);
  }
  FormulaPtr label = formula_from(s.items[1]);

  // Claim this node's preorder slot before reading the children.
  const NodeId id = st.raw.add({std::move(label), LeafKind::None, false, {}});
  for (const SExpr& c : s.items[2].items) {
    const NodeId cid = node_from(c, st);
    st.raw.nodes[id].children.push_back(cid);
  }
  const bool is_leaf = st.raw.nodes[id].children.empty();

  bool classified = false;
  for (std::size_t i = 3; i < s.items.size(); ++i) {
    const std::string& m = want_symbol(s.items[i], "a marker");
    const bool has_index = i + 1 < s.items.size() && !s.items[i + 1].is_list &&
                           !s.items[i + 1].symbol.empty() &&
                           s.items[i + 1].symbol.find_first_not_of(
                               "0123456789") == std::string::npos;
    if (m == ":assume" || m == ":axiom") {
      if (!is_leaf) {
        throw ParseError("only leaves take " + m, s.items[i].pos);
      }
      if (classified) {
        throw ParseError("a leaf takes exactly one :assume/:axiom marker",
                         s.items[i].pos);
      }
      classified = true;
      st.raw.nodes[id].leaf =
          m == ":assume" ? LeafKind::Assumption : LeafKind::Axiom;
      if (has_index) {
        const std::size_t binder = want_index(s.items[i + 1]);
        (m == ":assume" ? st.f : st.h).push_back({id, binder});
        ++i;
      }
    } else if (m == ":marked") {
      if (st.raw.nodes[id].leaf != LeafKind::Axiom) {
        throw ParseError(":marked only follows an :axiom marker",
                         s.items[i].pos);
      }
      st.raw.nodes[id].marked = true;
    } else if (m == ":bind-rule") {
      if (is_leaf) {
        throw ParseError(":bind-rule only marks inner nodes", s.items[i].pos);
      }
      if (!has_index) {
        throw ParseError(":bind-rule needs a binder index", s.items[i].pos);
      }
      st.g.push_back({id, want_index(s.items[i + 1])});
      ++i;
    } else {
      throw ParseError("unknown marker '" + m + "'", s.items[i].pos);
    }
  }
  if (is_leaf && !classified) {
    throw ParseError("every leaf needs :assume or :axiom", s.pos);
  }
  return id;
}

}  // namespace

ArgStructure parse_argstruct(const std::string& text) {
  const SExpr s = read_single(text);
  ArgParseState st;
  node_from(s, st);
  st.raw.root = 0;
  const std::size_t count = st.raw.nodes.size();
  const auto install = [count](const std::vector<std::pair<NodeId, std::size_t>>&
                                   binds,
                               std::map<NodeId, NodeId>& into) {
    for (const auto& [bound, binder] : binds) {
      if (binder >= count) {
        throw ValidationError("binder index " + std::to_string(binder) +
                              " is out of range");
      }
      into[bound] = static_cast<NodeId>(binder);
    }
  };
  install(st.f, st.raw.f);
  install(st.h, st.raw.h);
  install(st.g, st.raw.g);
  return std::move(st.raw).freeze();
}

namespace {

void print_node(std::ostringstream& os, const ArgStructure& d, NodeId id,
                int indent) {
  const ArgStructure::Node& n = d.node(id);
  os << "(node " << print_formula(n.label) << " (";
  if (!n.children.empty()) {
    for (NodeId c : n.children) {
      os << "\n" << std::string(static_cast<std::size_t>(indent) + 2, ' ');
      print_node(os, d, c, indent + 2);
    }
    os << "\n" << std::string(static_cast<std::size_t>(indent), ' ');
  }
  os << ")";
  switch (n.leaf) {
    case LeafKind::Assumption:
      os << " :assume";
      if (auto it = d.f().find(id); it != d.f().end()) os << " " << it->second;
      break;
    case LeafKind::Axiom:
      os << " :axiom";
      if (auto it = d.h().find(id); it != d.h().end()) os << " " << it->second;
      if (n.marked) os << " :marked";
      break;
    case LeafKind::None:
      if (auto it = d.g().find(id); it != d.g().end()) {
        os << " :bind-rule " << it->second;
      }
      break;
  }
  os << ")";
}

}  // namespace

std::string print_argstruct(const ArgStructure& d) {
  std::ostringstream os;
  print_node(os, d, d.root(), 0);
  return os.str();
}

// ---------------------------------------------------------------------------
// Construction terms.

namespace {

DerivSkeleton skeleton_from(const SExpr& s) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list) {
    throw ParseError("a skeleton is (slot ATOM) or (apply RULE ...)", s.pos);
  }
  const std::string& head = s.items[0].symbol;
  if (head == "slot") {
    if (s.items.size() != 2) {
      throw ParseError("(slot ATOM) takes one atom", s.pos);
    }
    return DerivSkeleton::slot(want_symbol(s.items[1], "an atom"));
  }
  if (head == "apply") {
    if (s.items.size() < 2) {
      throw ParseError("(apply RULE ...) needs a rule", s.pos);
    }
    AtomicRule rule = rule_from(s.items[1]);
    std::vector<DerivSkeleton> kids;
    for (std::size_t i = 2; i < s.items.size(); ++i) {
      kids.push_back(skeleton_from(s.items[i]));
    }
    return DerivSkeleton::apply(std::move(rule), std::move(kids));
  }
  throw ParseError("unknown skeleton head '" + head + "'", s.items[0].pos);
}

ConstructionPtr term_from(const SExpr& s) {
  if (!s.is_list || s.items.empty() || s.items[0].is_list) {
    throw ParseError("a term is (wit ...), (tag ...), (lam ...) or (need ...)",
                     s.pos);
  }
  const std::string& head = s.items[0].symbol;
  if (head == "wit") {
    if (s.items.size() != 2) {
      throw ParseError("(wit SKELETON) takes one skeleton", s.pos);
    }
    return Construction::witness_skel(skeleton_from(s.items[1]));
  }
  if (head == "tag") {
    if (s.items.size() != 3) {
      throw ParseError("(tag 1|2 TERM) takes an index and a term", s.pos);
    }
    const std::string& idx = want_symbol(s.items[1], "a tag index");
    if (idx != "1" && idx != "2") {
      throw ParseError("a tag index is 1 or 2", s.items[1].pos);
    }
    return Construction::tagged(idx == "1" ? 1 : 2, term_from(s.items[2]));
  }
  if (head == "lam") {
    if (s.items.size() != 3) {
      throw ParseError("(lam ATOM TERM) takes an atom and a body", s.pos);
    }
    return Construction::lambda(want_symbol(s.items[1], "an atom"),
                                term_from(s.items[2]));
  }
  if (head == "need") {
    if (s.items.size() != 2) {
      throw ParseError("(need FORMULA) takes one formula", s.pos);
    }
    return Construction::ref(formula_from(s.items[1]));
  }
  throw ParseError("unknown term head '" + head + "'", s.items[0].pos);
}

}  // namespace

ConstructionPtr parse_construction(const std::string& text) {
  return term_from(read_single(text));
}

// ---------------------------------------------------------------------------
// Sequents.

Sequent parse_sequent(const std::string& text) {
  const std::size_t arrow = text.find("==>");
  if (arrow == std::string::npos) {
    throw ParseError("a sequent needs '==>'", text.size());
  }
  if (text.find("==>", arrow + 3) != std::string::npos) {
    throw ParseError("a sequent has exactly one '==>'", arrow + 3);
  }
  const auto blank = [](const std::string& part) {
    return part.find_first_not_of(" \t\r\n") == std::string::npos;
  };
  Sequent s;
  const std::string left = text.substr(0, arrow);
  if (!blank(left)) {
    std::size_t from = 0;
    for (;;) {
      const std::size_t comma = left.find(',', from);
      const std::string part = left.substr(
          from, comma == std::string::npos ? std::string::npos : comma - from);
      if (blank(part)) {
        throw ParseError("empty antecedent in the sequent", from);
      }
      s.antecedents.push_back(parse_formula(part));
      if (comma == std::string::npos) break;
      from = comma + 1;
    }
  }
  const std::string right = text.substr(arrow + 3);
  if (blank(right)) {
    throw ParseError("a sequent needs a succedent after '==>'", text.size());
  }
  s.succedent = parse_formula(right);
  return s;
}

std::string print_sequent(const Sequent& s) {
  std::string out;
  for (std::size_t i = 0; i < s.antecedents.size(); ++i) {
    if (i) out += " , ";
    out += print_formula(s.antecedents[i]);
  }
  if (!s.antecedents.empty()) out += " ";
  out += "==> ";
  out += print_formula(s.succedent);
  return out;
}

}  // namespace ptsem
