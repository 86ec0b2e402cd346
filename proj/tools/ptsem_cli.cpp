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
//
// ptsem — command-line driver.
//
// Exit codes, uniform across subcommands:
//   0  the question holds / the operation succeeded
//   1  refuted / invalid / definitively not reachable
//   2  usage error, unreadable file, or malformed input
//   3  inconclusive: a search budget ran out within the stated bounds
//
// Every affirmative verdict is printed together with the bounds that were
// actually searched (pool contents, caps); --json emits the same verdict as
// a machine-readable object under the schema tag "ptsem/v1".

#include <cstddef>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptsem/atomic_system.hpp"
#include "ptsem/bes.hpp"
#include "ptsem/constructions.hpp"
#include "ptsem/errors.hpp"
#include "ptsem/formula.hpp"
#include "ptsem/reduction.hpp"
#include "ptsem/serialize.hpp"
#include "ptsem/validity.hpp"

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "ptsem/v1";
constexpr int kOk = 0;
constexpr int kNo = 1;
constexpr int kUsage = 2;
constexpr int kInconclusive = 3;

bool g_json = false;

// ---------------------------------------------------------------------------
// Small IO and text helpers.

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ptsem::ValidationError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ptsem::ValidationError("cannot write '" + path + "'");
  out << text << "\n";
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  for (;;) {
    const auto at = text.find(sep, from);
    const std::string part = trim(
        text.substr(from, at == std::string::npos ? std::string::npos
                                                  : at - from));
    if (!part.empty()) out.push_back(part);
    if (at == std::string::npos) break;
    from = at + 1;
  }
  return out;
}

std::string indent_block(const std::string& text, int n) {
  const std::string pad(static_cast<std::size_t>(n), ' ');
  std::ostringstream os;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) os << pad << line << "\n";
  return os.str();
}

ptsem::Base load_base(const std::string& path) {
  return path.empty() ? ptsem::Base{} : ptsem::parse_base(slurp(path));
}

void emit(const Json& j, const std::string& human) {
  if (g_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << human;
  }
}

// ---------------------------------------------------------------------------
// Pool flags shared by the pool-bounded subcommands.

struct PoolFlags {
  std::string atoms;        // comma-separated universe
  int level = 1;            // highest enumerated rule level
  int max_premises = 2;     // premise-set size for enumerated level-1 rules
  std::size_t max_size = 12;  // candidate-list truncation
  std::vector<std::string> rules;  // explicit candidates, replace enumeration
};

void attach_pool_flags(CLI::App* cmd, PoolFlags& pf) {
  cmd->add_option("--pool-atoms", pf.atoms,
                  "Comma-separated atom universe the candidate extension "
                  "rules are enumerated over");
  cmd->add_option("--pool-level", pf.level,
                  "Highest rule level enumerated into the pool (0, 1 or 2)")
      ->check(CLI::Range(0, 2))
      ->capture_default_str();
  cmd->add_option("--pool-max-premises", pf.max_premises,
                  "Largest premise set for enumerated one-step rules")
      ->capture_default_str();
  cmd->add_option("--pool-max-size", pf.max_size,
                  "Truncate the candidate list to this many rules")
      ->capture_default_str();
  cmd->add_option("--pool-rule", pf.rules,
                  "Explicit pool candidate as rule text (repeatable; when "
                  "given, replaces the enumeration entirely)");
}

ptsem::ExtensionPool build_pool(const PoolFlags& pf) {
  ptsem::PoolParams params;
  params.atoms = split_list(pf.atoms, ',');
  params.max_level = pf.level;
  params.max_premises = pf.max_premises;
  params.max_size = pf.max_size;
  if (!pf.rules.empty()) {
    std::vector<ptsem::AtomicRule> rules;
    for (const std::string& t : pf.rules) rules.push_back(ptsem::parse_rule(t));
    return ptsem::ExtensionPool(std::move(rules), std::move(params));
  }
  if (params.atoms.empty()) {
    // No universe and no explicit candidates: the empty pool, under which
    // every judgement quantifies over the given base alone.
    return ptsem::ExtensionPool({}, std::move(params));
  }
  return ptsem::make_pool(params);
}

std::string pool_text(const ptsem::ExtensionPool& pool) {
  if (pool.size() == 0) {
    return "empty pool — the judgement quantifies over the given base alone";
  }
  std::ostringstream os;
  os << "pool of " << pool.size() << " candidate rule"
     << (pool.size() == 1 ? "" : "s");
  const ptsem::PoolParams& p = pool.params();
  if (!p.atoms.empty()) {
    os << " over atoms ";
    for (std::size_t i = 0; i < p.atoms.size(); ++i) {
      if (i) os << ",";
      os << p.atoms[i];
    }
  }
  os << " (level <= " << p.max_level << ", premises <= " << p.max_premises
     << ", list cap " << p.max_size << ")";
  return os.str();
}

Json pool_json(const ptsem::ExtensionPool& pool) {
  Json candidates = Json::array();
  for (const ptsem::AtomicRule& r : pool.rules()) {
    candidates.push_back(ptsem::print_rule(r));
  }
  const ptsem::PoolParams& p = pool.params();
  return Json{{"rules", pool.size()},       {"atoms", p.atoms},
              {"max_level", p.max_level},   {"max_premises", p.max_premises},
              {"max_size", p.max_size},     {"candidates", candidates}};
}

// ---------------------------------------------------------------------------
// Shared renderers.

std::string skeleton_text(const ptsem::AtomicDerivation& d) {
  std::string out = "(apply " + ptsem::print_rule(d.rule());
  for (const ptsem::AtomicDerivation& c : d.children()) {
    out += " " + skeleton_text(c);
  }
  return out + ")";
}

void render_derivation(std::ostream& os, const ptsem::AtomicDerivation& d,
                       int indent) {
  os << std::string(static_cast<std::size_t>(indent), ' ') << d.conclusion()
     << "  <-  " << ptsem::print_rule(d.rule()) << "\n";
  for (const ptsem::AtomicDerivation& c : d.children()) {
    render_derivation(os, c, indent + 2);
  }
}

Json trace_json(const ptsem::ReductionTrace& t, bool with_results) {
  Json steps = Json::array();
  for (const ptsem::ReductionStep& s : t.steps) {
    Json js{{"position", static_cast<std::size_t>(s.position)},
            {"rule", s.rule}};
    if (with_results) js["result"] = ptsem::print_argstruct(s.result);
    steps.push_back(std::move(js));
  }
  return steps;
}

std::string trace_text(const ptsem::ReductionTrace& t) {
  if (t.steps.empty()) return "(no rewrite steps)";
  std::ostringstream os;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    if (i) os << " -> ";
    os << t.steps[i].rule << "@" << t.steps[i].position;
  }
  return os.str();
}

const char* validity_name(ptsem::ValidityTag t) {
  switch (t) {
    case ptsem::ValidityTag::Valid: return "valid";
    case ptsem::ValidityTag::Invalid: return "invalid";
    case ptsem::ValidityTag::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int validity_code(ptsem::ValidityTag t) {
  switch (t) {
    case ptsem::ValidityTag::Valid: return kOk;
    case ptsem::ValidityTag::Invalid: return kNo;
    case ptsem::ValidityTag::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

void verdict_into(Json& j, std::ostringstream& hs,
                  const ptsem::ValidityVerdict& v, bool with_results) {
  j["verdict"] = validity_name(v.tag);
  j["reason"] = v.reason;
  j["bounds"] = v.bounds;
  hs << "verdict: " << validity_name(v.tag) << "\n";
  if (!v.reason.empty()) hs << "reason: " << v.reason << "\n";
  if (!v.bounds.empty()) hs << "bounds: " << v.bounds << "\n";
  if (v.trace) {
    j["trace"] = trace_json(*v.trace, with_results);
    hs << "rewrite steps: " << trace_text(*v.trace) << "\n";
  }
  if (v.witness) {
    j["witness"] = skeleton_text(*v.witness);
    hs << "witness derivation:\n";
    std::ostringstream ds;
    render_derivation(ds, *v.witness, 0);
    hs << indent_block(ds.str(), 2);
  }
}

ptsem::Justification build_justification(const std::string& list) {
  ptsem::Justification j;
  if (list == "none") return j;
  if (list.empty() || list == "all") {
    for (const ptsem::Reduction& r : ptsem::standard_reductions()) j.add(r);
    return j;
  }
  for (const std::string& name : split_list(list, ',')) {
    const ptsem::Reduction* r = ptsem::find_standard_reduction(name);
    if (!r) {
      throw ptsem::ValidationError(
          "unknown rewrite '" + name +
          "'; known: iota, phi1, phi2, phi_imp, phi_s, split_to_s "
          "(or 'all' / 'none')");
    }
    j.add(*r);
  }
  return j;
}

Json justification_json(const ptsem::Justification& j) {
  Json names = Json::array();
  for (const ptsem::Reduction& r : j.reductions()) names.push_back(r.name);
  return names;
}

Json refutation_json(const ptsem::Refutation& r, bool replays) {
  Json ants = Json::array();
  for (const ptsem::FormulaPtr& f : r.antecedents) {
    ants.push_back(ptsem::print_formula(f));
  }
  return Json{{"extension", ptsem::print_base(r.extension)},
              {"supports", ants},
              {"fails", ptsem::print_formula(r.failed)},
              {"note", r.note},
              {"replays", replays}};
}

void render_refutation(std::ostream& os, const ptsem::Refutation& r,
                       bool replays) {
  os << "counterexample extension:\n"
     << indent_block(ptsem::print_base(r.extension), 2);
  os << "  supports:";
  if (r.antecedents.empty()) {
    os << " (no antecedents)";
  } else {
    for (const ptsem::FormulaPtr& f : r.antecedents) {
      os << " " << ptsem::print_formula(f);
    }
  }
  os << "\n  fails: " << ptsem::print_formula(r.failed) << "\n";
  if (!r.note.empty()) os << "  note: " << r.note << "\n";
  os << "certificate replays: " << (replays ? "yes" : "NO") << "\n";
}

// ---------------------------------------------------------------------------
// derive

struct DeriveArgs {
  std::string base_path;
  std::string goal;
  std::vector<std::string> assume;
  std::size_t cap = 100000;
};

int run_derive(const DeriveArgs& a) {
  if (a.goal != ptsem::kBottomName && !ptsem::is_valid_atom_name(a.goal)) {
    throw ptsem::ValidationError("the goal must be an atom or '" +
                                 std::string(ptsem::kBottomName) + "'");
  }
  const ptsem::Base b = load_base(a.base_path);
  std::vector<ptsem::AtomicRule> assumed;
  for (const std::string& t : a.assume) assumed.push_back(ptsem::parse_rule(t));
  const ptsem::DeriveResult r = ptsem::derive(a.goal, assumed, b, a.cap);

  Json j{{"schema", kSchema},
         {"command", "derive"},
         {"goal", a.goal},
         {"base_rules", b.rules().size()},
         {"assumed_rules", assumed.size()},
         {"expansions", r.expansions},
         {"bounds", "expansion cap " + std::to_string(a.cap)}};
  std::ostringstream hs;
  hs << "goal: " << a.goal << "\n";
  switch (r.status) {
    case ptsem::DeriveStatus::Derived: {
      j["verdict"] = "derivable";
      j["derivation"] = skeleton_text(*r.derivation);
      hs << "verdict: derivable (" << r.expansions << " expansions)\n"
         << "derivation:\n";
      std::ostringstream ds;
      render_derivation(ds, *r.derivation, 0);
      hs << indent_block(ds.str(), 2);
      emit(j, hs.str());
      return kOk;
    }
    case ptsem::DeriveStatus::NotDerivable:
      j["verdict"] = "not-derivable";
      hs << "verdict: not derivable (search space exhausted after "
         << r.expansions << " expansions; definitive)\n";
      emit(j, hs.str());
      return kNo;
    case ptsem::DeriveStatus::CapExhausted:
      j["verdict"] = "cap-exhausted";
      hs << "verdict: inconclusive (expansion cap " << a.cap
         << " ran out before the search space did)\n";
      emit(j, hs.str());
      return kInconclusive;
  }
  return kUsage;
}

// ---------------------------------------------------------------------------
// bes check

struct BesCheckArgs {
  std::string base_path;
  std::string sequent;
  PoolFlags pool;
};

int run_bes_check(const BesCheckArgs& a) {
  const ptsem::Base b = load_base(a.base_path);
  const ptsem::ExtensionPool pool = build_pool(a.pool);
  const ptsem::Sequent s = ptsem::parse_sequent(a.sequent);
  const ptsem::SequentVerdict v =
      ptsem::bes_holds(s.antecedents, s.succedent, b, pool);

  Json j{{"schema", kSchema},
         {"command", "bes check"},
         {"sequent", ptsem::print_sequent(s)},
         {"base_rules", b.rules().size()},
         {"pool", pool_json(pool)}};
  std::ostringstream hs;
  hs << "sequent: " << ptsem::print_sequent(s) << "\n";
  if (v.holds) {
    j["verdict"] = "holds";
    hs << "verdict: holds within the pool\n"
       << "bounds: " << pool_text(pool) << "\n";
    emit(j, hs.str());
    return kOk;
  }
  const bool replays = ptsem::replay_refutation(*v.refutation, pool);
  j["verdict"] = "refuted";
  j["refutation"] = refutation_json(*v.refutation, replays);
  hs << "verdict: refuted\n";
  render_refutation(hs, *v.refutation, replays);
  emit(j, hs.str());
  return kNo;
}

// ---------------------------------------------------------------------------
// bes refute-subst

struct RefuteSubstArgs {
  std::string sequent;
  std::vector<std::string> subs;
  PoolFlags pool;
};

ptsem::AtomSubstitution parse_substitution(const std::string& text) {
  ptsem::AtomSubstitution s;
  for (const std::string& part : split_list(text, ',')) {
    const auto at = part.find(":=");
    if (at == std::string::npos) {
      throw ptsem::ValidationError(
          "a substitution entry is atom:=FORMULA; got '" + part + "'");
    }
    const std::string atom = trim(part.substr(0, at));
    if (!ptsem::is_valid_atom_name(atom)) {
      throw ptsem::ValidationError("substitution keys are proper atoms; got '" +
                                   atom + "'");
    }
    if (s.count(atom)) {
      throw ptsem::ValidationError("atom '" + atom + "' substituted twice");
    }
    s[atom] = ptsem::parse_formula(part.substr(at + 2));
  }
  if (s.empty()) {
    throw ptsem::ValidationError("an empty substitution changes nothing");
  }
  return s;
}

int run_refute_subst(const RefuteSubstArgs& a) {
  const ptsem::Sequent s = ptsem::parse_sequent(a.sequent);
  const ptsem::ExtensionPool pool = build_pool(a.pool);
  std::vector<ptsem::AtomSubstitution> subs;
  for (const std::string& t : a.subs) subs.push_back(parse_substitution(t));

  const std::optional<ptsem::SubstitutionRefutation> found =
      ptsem::refute_substitution_closure(s.antecedents, s.succedent, subs,
                                         pool);

  Json j{{"schema", kSchema},
         {"command", "bes refute-subst"},
         {"sequent", ptsem::print_sequent(s)},
         {"substitutions_searched", subs.size()},
         {"pool", pool_json(pool)}};
  std::ostringstream hs;
  hs << "sequent: " << ptsem::print_sequent(s) << "\n"
     << "substitutions searched: " << subs.size() << "\n";

  if (!found) {
    j["verdict"] = "no-instance-refuted";
    hs << "verdict: no listed substitution instance is refuted ("
       << pool_text(pool) << ")\n";
    emit(j, hs.str());
    return kNo;
  }

  ptsem::Sequent inst;
  for (const ptsem::FormulaPtr& f : s.antecedents) {
    inst.antecedents.push_back(
        ptsem::apply_substitution(f, found->substitution));
  }
  inst.succedent = ptsem::apply_substitution(s.succedent, found->substitution);
  const bool replays = ptsem::replay_refutation(found->refutation, pool);

  Json sub = Json::object();
  for (const auto& [atom, f] : found->substitution) {
    sub[atom] = ptsem::print_formula(f);
  }
  j["verdict"] = "instance-refuted";
  j["substitution"] = sub;
  j["instance"] = ptsem::print_sequent(inst);
  j["refutation"] = refutation_json(found->refutation, replays);

  hs << "verdict: instance refuted\nsubstitution:";
  for (const auto& [atom, f] : found->substitution) {
    hs << " " << atom << ":=" << ptsem::print_formula(f);
  }
  hs << "\ninstance: " << ptsem::print_sequent(inst) << "\n";
  render_refutation(hs, found->refutation, replays);
  emit(j, hs.str());
  return kOk;
}

// ---------------------------------------------------------------------------
// arg reduce

struct ArgReduceArgs {
  std::string arg_path;
  std::string target_path;
  std::string out_path;
  std::string just = "all";
  std::size_t steps = 16;
  bool trace = false;
};

struct GreedyStep {
  ptsem::NodeId position;
  std::string rule;
  ptsem::ArgStructure result;
};

std::optional<GreedyStep> first_rewrite(const ptsem::ArgStructure& d,
                                        const ptsem::Justification& j) {
  for (ptsem::NodeId pos = 0; pos < d.size(); ++pos) {
    const ptsem::ArgStructure sub = ptsem::subtree(d, pos);
    for (const ptsem::Reduction& phi : j.reductions()) {
      if (!phi.in_domain(sub)) continue;
      try {
        return GreedyStep{pos, phi.name, ptsem::apply_at(d, pos, phi)};
      } catch (const ptsem::DomainError&) {
        // Binding re-threading rejected this position; keep looking.
      }
    }
  }
  return std::nullopt;
}

int run_arg_reduce(const ArgReduceArgs& a) {
  const ptsem::ArgStructure d = ptsem::parse_argstruct(slurp(a.arg_path));
  const ptsem::Justification j = build_justification(a.just);

  Json out{{"schema", kSchema},
           {"command", "arg reduce"},
           {"conclusion", ptsem::print_formula(d.conclusion())},
           {"justification", justification_json(j)},
           {"bounds", "step cap " + std::to_string(a.steps)}};
  std::ostringstream hs;
  hs << "conclusion: " << ptsem::print_formula(d.conclusion()) << " ("
     << d.size() << " nodes)\n";

  const auto finish = [&](const ptsem::ArgStructure& final_d, int code) {
    out["result"] = ptsem::print_argstruct(final_d);
    if (!a.out_path.empty()) {
      spill(a.out_path, ptsem::print_argstruct(final_d));
      out["output_path"] = a.out_path;
      hs << "result written to " << a.out_path << "\n";
    } else {
      hs << "result:\n" << indent_block(ptsem::print_argstruct(final_d), 2);
    }
    emit(out, hs.str());
    return code;
  };

  if (!a.target_path.empty()) {
    const ptsem::ArgStructure target =
        ptsem::parse_argstruct(slurp(a.target_path));
    const ptsem::ReduceResult r = ptsem::reduces_to(d, target, j, a.steps);
    if (r.trace) {
      out["steps"] = trace_json(*r.trace, a.trace);
      hs << "steps: " << trace_text(*r.trace) << "\n";
    }
    switch (r.status) {
      case ptsem::ReduceStatus::Found:
        out["verdict"] = "target-reached";
        hs << "verdict: target reached in "
           << (r.trace ? r.trace->steps.size() : 0) << " step(s)\n";
        return finish(r.trace ? r.trace->last() : d, kOk);
      case ptsem::ReduceStatus::NotReachable:
        out["verdict"] = "target-not-reachable";
        hs << "verdict: target not reachable within " << a.steps
           << " steps (search space exhausted; definitive below that cap)\n";
        return finish(d, kNo);
      case ptsem::ReduceStatus::CapExhausted:
        out["verdict"] = "cap-exhausted";
        hs << "verdict: inconclusive (rewrite frontier still live at the "
           << a.steps << "-step cap)\n";
        return finish(d, kInconclusive);
    }
    return kUsage;
  }

  // No target: rewrite greedily — first position in canonical preorder,
  // first applicable rewrite in name order — until nothing applies.
  ptsem::ArgStructure cur = d;
  Json steps = Json::array();
  std::size_t n = 0;
  bool normal = false;
  for (;;) {
    if (n == a.steps) break;
    std::optional<GreedyStep> s = first_rewrite(cur, j);
    if (!s) {
      normal = true;
      break;
    }
    cur = std::move(s->result);
    ++n;
    Json js{{"position", static_cast<std::size_t>(s->position)},
            {"rule", s->rule}};
    if (a.trace) js["result"] = ptsem::print_argstruct(cur);
    steps.push_back(std::move(js));
    hs << "step " << n << ": " << s->rule << " at node " << s->position
       << "\n";
    if (a.trace) hs << indent_block(ptsem::print_argstruct(cur), 2);
  }
  if (!normal) normal = !first_rewrite(cur, j).has_value();
  out["steps"] = std::move(steps);
  if (normal) {
    out["verdict"] = "normal-form";
    hs << "verdict: normal form after " << n << " step(s)\n";
    return finish(cur, kOk);
  }
  out["verdict"] = "step-cap-exhausted";
  hs << "verdict: inconclusive (step cap " << a.steps
     << " exhausted with rewrites still applicable)\n";
  return finish(cur, kInconclusive);
}

// ---------------------------------------------------------------------------
// arg check-valid

struct CheckValidArgs {
  std::string arg_path;
  std::string base_path;
  std::string just = "all";
  std::vector<std::string> catalog_paths;
  PoolFlags pool;
  std::size_t step_cap = 6;
  std::size_t visit_cap = 50000;
  std::size_t recursion_limit = 32;
  std::size_t max_assignments = 512;
  bool justification_free = false;
  bool trace = false;
};

int run_check_valid(const CheckValidArgs& a) {
  const ptsem::ArgStructure d = ptsem::parse_argstruct(slurp(a.arg_path));
  const ptsem::Base b = load_base(a.base_path);

  Json j{{"schema", kSchema},
         {"command", "arg check-valid"},
         {"conclusion", ptsem::print_formula(d.conclusion())},
         {"closed", ptsem::is_closed(d)},
         {"base_rules", b.rules().size()}};
  std::ostringstream hs;
  hs << "conclusion: " << ptsem::print_formula(d.conclusion()) << " ("
     << (ptsem::is_closed(d) ? "closed" : "open") << " structure)\n";

  if (a.justification_free) {
    // The certificate that needs no rewrites at all: an all-atomic
    // structure whose assumptions, turned into axioms, read back as a
    // derivation.  When it holds, it holds for every justification set.
    const ptsem::ValidityVerdict v = ptsem::valid_for_every_justification(d, b);
    j["mode"] = "justification-free";
    hs << "mode: justification-free certificate\n";
    verdict_into(j, hs, v, a.trace);
    emit(j, hs.str());
    return validity_code(v.tag);
  }

  const ptsem::Justification just = build_justification(a.just);
  const ptsem::ExtensionPool pool = build_pool(a.pool);

  ptsem::ValidityOptions opts;
  opts.step_cap = a.step_cap;
  opts.visit_cap = a.visit_cap;
  opts.recursion_limit = a.recursion_limit;
  opts.max_assignments = a.max_assignments;
  opts.pool = pool;
  for (const std::string& path : a.catalog_paths) {
    ptsem::ArgStructure entry = ptsem::parse_argstruct(slurp(path));
    ptsem::FormulaPtr concl = entry.conclusion();
    opts.catalog.add(std::move(concl), std::move(entry), just);
  }

  j["justification"] = justification_json(just);
  j["pool"] = pool_json(pool);
  j["catalog_entries"] = opts.catalog.size();

  ptsem::ValidityVerdict v;
  if (ptsem::is_closed(d)) {
    v = ptsem::valid_closed(d, just, b, opts);
  } else {
    v = ptsem::valid_open_bounded(d, just, b, opts.catalog, pool, opts);
  }
  verdict_into(j, hs, v, a.trace);
  emit(j, hs.str());
  return validity_code(v.tag);
}

// ---------------------------------------------------------------------------
// split transform

struct SplitTransformArgs {
  std::string arg_path;
  std::string base_path;
  std::string out_path;
  std::string just = "all";
  std::size_t step_cap = 6;
  std::size_t visit_cap = 50000;
  std::size_t recursion_limit = 32;
  bool trace = false;
};

int run_split_transform(const SplitTransformArgs& a) {
  const ptsem::ArgStructure d1 = ptsem::parse_argstruct(slurp(a.arg_path));
  const ptsem::Base c = load_base(a.base_path);
  const ptsem::Justification just = build_justification(a.just);

  ptsem::ValidityOptions opts;
  opts.step_cap = a.step_cap;
  opts.visit_cap = a.visit_cap;
  opts.recursion_limit = a.recursion_limit;

  const ptsem::SplitOutcome o = ptsem::split_transform(d1, just, c, opts);

  Json j{{"schema", kSchema},
         {"command", "split transform"},
         {"input_conclusion", ptsem::print_formula(d1.conclusion())},
         {"output_conclusion", ptsem::print_formula(o.structure.conclusion())},
         {"justification", justification_json(just)},
         {"base_rules", c.rules().size()},
         {"used_detour", o.used_detour},
         {"pipeline", trace_json(o.pipeline, a.trace)}};
  std::ostringstream hs;
  hs << "input conclusion: " << ptsem::print_formula(d1.conclusion()) << "\n"
     << "output conclusion: "
     << ptsem::print_formula(o.structure.conclusion()) << "\n"
     << "pipeline: " << trace_text(o.pipeline) << "\n"
     << "scratch-axiom detour: " << (o.used_detour ? "yes" : "no") << "\n";
  verdict_into(j, hs, o.verdict, a.trace);

  j["structure"] = ptsem::print_argstruct(o.structure);
  if (!a.out_path.empty()) {
    spill(a.out_path, ptsem::print_argstruct(o.structure));
    j["output_path"] = a.out_path;
    hs << "output structure written to " << a.out_path << "\n";
  } else {
    hs << "output structure:\n"
       << indent_block(ptsem::print_argstruct(o.structure), 2);
  }
  emit(j, hs.str());
  return validity_code(o.verdict.tag);
}

// ---------------------------------------------------------------------------
// construct check / construct split-k

const char* construction_name(ptsem::ConstructionVerdict::Tag t) {
  switch (t) {
    case ptsem::ConstructionVerdict::Tag::Yes: return "yes";
    case ptsem::ConstructionVerdict::Tag::No: return "no";
    case ptsem::ConstructionVerdict::Tag::Unknown: return "unknown";
  }
  return "unknown";
}

int construction_code(ptsem::ConstructionVerdict::Tag t) {
  switch (t) {
    case ptsem::ConstructionVerdict::Tag::Yes: return kOk;
    case ptsem::ConstructionVerdict::Tag::No: return kNo;
    case ptsem::ConstructionVerdict::Tag::Unknown: return kInconclusive;
  }
  return kInconclusive;
}

struct ConstructCheckArgs {
  std::string term_path;
  std::string formula;
  std::string base_path;
  std::string from;  // comma-separated premise formulas
  PoolFlags pool;
  std::size_t recursion_limit = 32;
  std::size_t expansion_cap = 100000;
};

int run_construct_check(const ConstructCheckArgs& a) {
  const ptsem::ConstructionPtr k =
      ptsem::parse_construction(slurp(a.term_path));
  const ptsem::FormulaPtr f = ptsem::parse_formula(a.formula);
  const ptsem::Base b = load_base(a.base_path);
  const ptsem::ExtensionPool pool = build_pool(a.pool);
  ptsem::ConstructionCaps caps;
  caps.recursion_limit = a.recursion_limit;
  caps.expansion_cap = a.expansion_cap;

  std::vector<ptsem::FormulaPtr> gamma;
  for (const std::string& t : split_list(a.from, ',')) {
    gamma.push_back(ptsem::parse_formula(t));
  }

  const ptsem::ConstructionVerdict v =
      gamma.empty()
          ? ptsem::is_construction(k, f, b, pool, caps)
          : ptsem::is_construction_from(k, gamma, f, b, pool, caps);

  Json j{{"schema", kSchema},
         {"command", "construct check"},
         {"term", ptsem::print_construction(k)},
         {"formula", ptsem::print_formula(f)},
         {"base_rules", b.rules().size()},
         {"pool", pool_json(pool)},
         {"verdict", construction_name(v.tag)},
         {"reason", v.reason},
         {"bounds", v.bounds}};
  if (!gamma.empty()) {
    Json gs = Json::array();
    for (const ptsem::FormulaPtr& g : gamma) {
      gs.push_back(ptsem::print_formula(g));
    }
    j["from"] = gs;
  }
  std::ostringstream hs;
  hs << "term: " << ptsem::print_construction(k) << "\n";
  if (!gamma.empty()) {
    hs << "premises:";
    for (const ptsem::FormulaPtr& g : gamma) {
      hs << " " << ptsem::print_formula(g);
    }
    hs << "\n";
  }
  hs << "formula: " << ptsem::print_formula(f) << "\n"
     << "verdict: " << construction_name(v.tag) << "\n";
  if (!v.reason.empty()) hs << "reason: " << v.reason << "\n";
  if (!v.bounds.empty()) hs << "bounds: " << v.bounds << "\n";
  emit(j, hs.str());
  return construction_code(v.tag);
}

struct ConstructSplitArgs {
  std::string term_path;
  std::string base_path;
  std::string out_path;
};

int run_construct_split(const ConstructSplitArgs& a) {
  const ptsem::ConstructionPtr k1 =
      ptsem::parse_construction(slurp(a.term_path));
  const ptsem::Base c = load_base(a.base_path);
  const ptsem::SplitConstruction s = ptsem::split_construction(k1, c);

  Json j{{"schema", kSchema},
         {"command", "construct split-k"},
         {"input", ptsem::print_construction(k1)},
         {"verdict", "built"},
         {"index", s.index},
         {"axiom_used", s.axiom_used},
         {"result", ptsem::print_construction(s.result)}};
  std::ostringstream hs;
  hs << "input: " << ptsem::print_construction(k1) << "\n"
     << "verdict: built (evaluation landed in disjunct " << s.index
     << "; scratch axiom "
     << (s.axiom_used ? "abstracted back into the binder" : "not needed")
     << ")\n";
  if (!a.out_path.empty()) {
    spill(a.out_path, ptsem::print_construction(s.result));
    j["output_path"] = a.out_path;
    hs << "result written to " << a.out_path << "\n";
  } else {
    hs << "result: " << ptsem::print_construction(s.result) << "\n";
  }
  emit(j, hs.str());
  return kOk;
}

int fail(const char* kind, const std::string& msg, int code) {
  if (g_json) {
    Json j{{"schema", kSchema},
           {"error", Json{{"kind", kind}, {"message", msg}}}};
    std::cout << j.dump(2) << "\n";
  }
  std::cerr << "ptsem: " << kind << " error: " << msg << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "ptsem — a workbench for atomic rule bases, pooled base-extension "
      "consequence, argument-structure rewriting, bounded validity, and "
      "construction terms.\n"
      "Exit codes: 0 holds/succeeds, 1 refuted/invalid, 2 usage or input "
      "error, 3 inconclusive within the stated bounds."};
  app.require_subcommand(1);

  int rc = kOk;
  const auto attach_json = [](CLI::App* cmd) {
    cmd->add_flag("--json", g_json, "Machine-readable verdict on stdout");
  };

  // derive
  DeriveArgs da;
  auto* derive_cmd = app.add_subcommand(
      "derive", "Search for an atomic derivation of a goal over a rule base");
  derive_cmd->add_option("--base", da.base_path,
                         "Rule-base file; omitted means the empty base");
  derive_cmd->add_option("--goal", da.goal, "Atom to derive ('bot' allowed)")
      ->required();
  derive_cmd->add_option("--assume", da.assume,
                         "Assumed rule as rule text (repeatable)");
  derive_cmd->add_option("--cap", da.cap, "Expansion budget for the search")
      ->capture_default_str();
  attach_json(derive_cmd);
  derive_cmd->callback([&] { rc = run_derive(da); });

  // bes
  auto* bes = app.add_subcommand(
      "bes", "Consequence judgements over pooled base extensions");
  bes->require_subcommand(1);

  BesCheckArgs bca;
  auto* bes_check = bes->add_subcommand(
      "check", "Evaluate a sequent; refutations carry a replayable "
               "counterexample extension");
  bes_check->add_option("--base", bca.base_path,
                        "Rule-base file; omitted means the empty base");
  bes_check
      ->add_option("--sequent", bca.sequent,
                   "Sequent text: \"A1 , A2 ==> B\" (antecedents optional)")
      ->required();
  attach_pool_flags(bes_check, bca.pool);
  attach_json(bes_check);
  bes_check->callback([&] { rc = run_bes_check(bca); });

  RefuteSubstArgs rsa;
  auto* bes_rs = bes->add_subcommand(
      "refute-subst",
      "Search the listed substitutions for one whose instance of the "
      "sequent is refuted as a logical consequence");
  bes_rs
      ->add_option("--sequent", rsa.sequent,
                   "Sequent text: \"A1 , A2 ==> B\"")
      ->required();
  bes_rs
      ->add_option("--subst", rsa.subs,
                   "Substitution \"p:=(or p q),q:=p\" (repeatable; searched "
                   "in order)")
      ->required();
  attach_pool_flags(bes_rs, rsa.pool);
  attach_json(bes_rs);
  bes_rs->callback([&] { rc = run_refute_subst(rsa); });

  // arg
  auto* arg = app.add_subcommand("arg", "Argument-structure operations");
  arg->require_subcommand(1);

  ArgReduceArgs ara;
  auto* arg_reduce = arg->add_subcommand(
      "reduce", "Rewrite a structure: greedily to normal form, or "
                "breadth-first towards --target");
  arg_reduce->add_option("--arg", ara.arg_path, "Argument-structure file")
      ->required();
  arg_reduce->add_option("--target", ara.target_path,
                         "Target structure file (switches to reachability "
                         "search)");
  arg_reduce
      ->add_option("--just", ara.just,
                   "Comma list of rewrites (iota, phi1, phi2, phi_imp, "
                   "phi_s, split_to_s), or 'all' / 'none'")
      ->capture_default_str();
  arg_reduce->add_option("--steps", ara.steps, "Rewrite-step cap")
      ->capture_default_str();
  arg_reduce->add_flag("--trace", ara.trace,
                       "Print every intermediate structure");
  arg_reduce->add_option("--out", ara.out_path,
                         "Write the final structure to this file");
  attach_json(arg_reduce);
  arg_reduce->callback([&] { rc = run_arg_reduce(ara); });

  CheckValidArgs cva;
  auto* arg_valid = arg->add_subcommand(
      "check-valid", "Bounded validity of a structure relative to a "
                     "justification over a base");
  arg_valid->add_option("--arg", cva.arg_path, "Argument-structure file")
      ->required();
  arg_valid->add_option("--base", cva.base_path,
                        "Rule-base file; omitted means the empty base");
  arg_valid
      ->add_option("--just", cva.just,
                   "Comma list of rewrites, or 'all' / 'none'")
      ->capture_default_str();
  arg_valid->add_option(
      "--catalog", cva.catalog_paths,
      "Closed-structure file used to close open assumptions (repeatable; "
      "the entry concludes its own conclusion formula)");
  attach_pool_flags(arg_valid, cva.pool);
  arg_valid->add_option("--step-cap", cva.step_cap,
                        "Rewrite-search depth per question")
      ->capture_default_str();
  arg_valid->add_option("--visit-cap", cva.visit_cap,
                        "Rewrite-search states per question")
      ->capture_default_str();
  arg_valid->add_option("--recursion-limit", cva.recursion_limit,
                        "Nesting bound of the validity recursion")
      ->capture_default_str();
  arg_valid->add_option("--max-assignments", cva.max_assignments,
                        "Catalog combinations per open check")
      ->capture_default_str();
  arg_valid->add_flag(
      "--justification-free", cva.justification_free,
      "Check the rewrite-free certificate for all-atomic structures "
      "(holds for every justification set)");
  arg_valid->add_flag("--trace", cva.trace,
                      "Include intermediate structures in trace output");
  attach_json(arg_valid);
  arg_valid->callback([&] { rc = run_check_valid(cva); });

  // split
  auto* split = app.add_subcommand(
      "split", "The split inference: from an implication into a disjunction "
               "to the disjunction of implications");
  split->require_subcommand(1);

  SplitTransformArgs sta;
  auto* split_tf = split->add_subcommand(
      "transform", "Apply the split step to a valid closed argument and "
                   "eliminate it again; emits the output structure and its "
                   "validity verdict");
  split_tf->add_option("--arg", sta.arg_path, "Argument-structure file")
      ->required();
  split_tf->add_option("--base", sta.base_path,
                       "Rule-base file; omitted means the empty base");
  split_tf
      ->add_option("--just", sta.just,
                   "Comma list of rewrites the input is valid under "
                   "(extended internally with the two split rewrites)")
      ->capture_default_str();
  split_tf->add_option("--step-cap", sta.step_cap,
                       "Rewrite-search depth per question")
      ->capture_default_str();
  split_tf->add_option("--visit-cap", sta.visit_cap,
                       "Rewrite-search states per question")
      ->capture_default_str();
  split_tf->add_option("--recursion-limit", sta.recursion_limit,
                       "Nesting bound of the validity recursion")
      ->capture_default_str();
  split_tf->add_flag("--trace", sta.trace,
                     "Include intermediate structures in pipeline output");
  split_tf->add_option("--out", sta.out_path,
                       "Write the output structure to this file");
  attach_json(split_tf);
  split_tf->callback([&] { rc = run_split_transform(sta); });

  // construct
  auto* construct =
      app.add_subcommand("construct", "Construction-term operations");
  construct->require_subcommand(1);

  ConstructCheckArgs cca;
  auto* con_check = construct->add_subcommand(
      "check", "Check a term as a construction of a formula (optionally "
               "from premises) over pooled base extensions");
  con_check->add_option("--term", cca.term_path, "Construction-term file")
      ->required();
  con_check->add_option("--formula", cca.formula, "Formula text")->required();
  con_check->add_option("--base", cca.base_path,
                        "Rule-base file; omitted means the empty base");
  con_check->add_option("--from", cca.from,
                        "Comma list of premise formulas (open-term check)");
  attach_pool_flags(con_check, cca.pool);
  con_check->add_option("--recursion-limit", cca.recursion_limit,
                        "Nesting bound of the construction check")
      ->capture_default_str();
  con_check->add_option("--expansion-cap", cca.expansion_cap,
                        "Derivability-search budget per extension")
      ->capture_default_str();
  attach_json(con_check);
  con_check->callback([&] { rc = run_construct_check(cca); });

  ConstructSplitArgs csa;
  auto* con_split = construct->add_subcommand(
      "split-k", "Evaluate an implication-witness abstraction on the "
                 "antecedent axiom and rebuild it as a construction of the "
                 "split disjunction");
  con_split->add_option("--term", csa.term_path,
                        "Construction-term file (an abstraction)")
      ->required();
  con_split->add_option("--base", csa.base_path,
                        "Rule-base file; omitted means the empty base");
  con_split->add_option("--out", csa.out_path,
                        "Write the result term to this file");
  attach_json(con_split);
  con_split->callback([&] { rc = run_construct_split(csa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const ptsem::ParseError& e) {
    return fail("parse", e.what(), kUsage);
  } catch (const ptsem::ValidationError& e) {
    return fail("validation", e.what(), kUsage);
  } catch (const ptsem::DomainError& e) {
    return fail("domain", e.what(), kUsage);
  } catch (const ptsem::Error& e) {
    return fail("budget", e.what(), kInconclusive);
  } catch (const std::exception& e) {
    return fail("internal", e.what(), kUsage);
  }
  return rc;
}
