// Deterministic random generators shared by the property tests.  Everything
// is seeded explicitly so failures reproduce.
#ifndef PTSEM_TESTS_SUPPORT_GEN_HPP_
#define PTSEM_TESTS_SUPPORT_GEN_HPP_

#include <random>
#include <set>
#include <string>
#include <vector>

#include "ptsem/argstruct.hpp"
#include "ptsem/atomic_system.hpp"
#include "ptsem/formula.hpp"

namespace testgen {

using Rng = std::mt19937;

inline const std::vector<std::string>& default_atoms() {
  static const std::vector<std::string> atoms = {"p", "q", "r", "s", "t"};
  return atoms;
}

inline std::string random_atom(Rng& rng,
                               const std::vector<std::string>& atoms =
                                   default_atoms()) {
  std::uniform_int_distribution<std::size_t> pick(0, atoms.size() - 1);
  return atoms[pick(rng)];
}

inline ptsem::FormulaPtr random_formula(Rng& rng, int depth,
                                        const std::vector<std::string>& atoms =
                                            default_atoms()) {
  using ptsem::Formula;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 9 : 14);
  int c = pick(rng);
  if (c < 8) return Formula::atom(random_atom(rng, atoms));
  if (c < 10) return Formula::bottom();
  auto l = random_formula(rng, depth - 1, atoms);
  auto r = random_formula(rng, depth - 1, atoms);
  if (c < 12) return Formula::conj(l, r);
  if (c < 13) return Formula::disj(l, r);
  return Formula::imp(l, r);
}

// A random rule of level <= 2: premises over `atoms`, optionally one
// discharged axiom per slot.
inline ptsem::AtomicRule random_rule(Rng& rng,
                                     const std::vector<std::string>& atoms =
                                         default_atoms(),
                                     bool allow_level2 = true) {
  std::uniform_int_distribution<int> nslots(0, 2);
  std::uniform_int_distribution<int> coin(0, 3);
  int n = nslots(rng);
  std::vector<ptsem::AtomicRule::Slot> slots;
  for (int i = 0; i < n; ++i) {
    ptsem::AtomicRule::Slot slot;
    slot.premise = random_atom(rng, atoms);
    if (allow_level2 && coin(rng) == 0) {
      slot.discharges.push_back(
          ptsem::AtomicRule::axiom(random_atom(rng, atoms)));
    }
    slots.push_back(std::move(slot));
  }
  return ptsem::AtomicRule(std::move(slots), random_atom(rng, atoms));
}

inline ptsem::Base random_base(Rng& rng, std::size_t max_rules,
                               const std::vector<std::string>& atoms =
                                   default_atoms(),
                               bool allow_level2 = true) {
  std::uniform_int_distribution<std::size_t> count(0, max_rules);
  std::vector<ptsem::AtomicRule> rules;
  std::size_t n = count(rng);
  for (std::size_t i = 0; i < n; ++i) {
    rules.push_back(random_rule(rng, atoms, allow_level2));
  }
  return ptsem::Base(std::move(rules));
}

// A random argument structure, produced by composing the public builders:
// leaves, arbitrary inference steps (with optional assumption discharge),
// the three introduction builders, rule-discharging atomic steps, and
// closing substitutions.  Every intermediate value passes construction
// validation, so a draw from this generator doubles as an invariant audit.
inline ptsem::ArgStructure random_argstruct(Rng& rng, int ops = 6,
                                            const std::vector<std::string>&
                                                atoms = default_atoms()) {
  using ptsem::ArgStructure;
  using ptsem::Formula;
  using ptsem::FormulaPtr;
  using ptsem::Inference;
  using ptsem::LeafKind;
  using ptsem::LeafRef;
  using ptsem::NodeId;

  auto atom = [&] { return Formula::atom(random_atom(rng, atoms)); };
  auto coin = [&](int sides) {
    return std::uniform_int_distribution<int>(0, sides - 1)(rng);
  };

  std::vector<ArgStructure> pool;
  const int nleaves = 2 + coin(3);
  for (int i = 0; i < nleaves; ++i) {
    if (coin(2) == 0) {
      pool.push_back(ArgStructure::assumption(
          coin(3) != 0 ? atom() : random_formula(rng, 2, atoms)));
    } else if (coin(4) != 0) {
      pool.push_back(ArgStructure::axiom(atom(), coin(8) == 0));
    } else {
      pool.push_back(ArgStructure::axiom(random_formula(rng, 1, atoms)));
    }
  }
  auto pick = [&]() -> const ArgStructure& {
    return pool[std::uniform_int_distribution<std::size_t>(
        0, pool.size() - 1)(rng)];
  };

  for (int i = 0; i < ops; ++i) {
    switch (coin(6)) {
      case 0:
        pool.push_back(conj_intro(pick(), pick()));
        break;
      case 1: {
        const ArgStructure& a = pick();
        FormulaPtr other = atom();
        FormulaPtr disj = coin(2) == 0 ? Formula::disj(a.conclusion(), other)
                                       : Formula::disj(other, a.conclusion());
        pool.push_back(disj_intro(a, disj));
        break;
      }
      case 2: {
        const ArgStructure& a = pick();
        auto opens = a.open_assumptions();
        FormulaPtr ant = opens.empty()
                             ? atom()
                             : opens[std::uniform_int_distribution<std::size_t>(
                                   0, opens.size() - 1)(rng)];
        pool.push_back(coin(5) == 0 ? imp_intro_vacuous(a, ant)
                                    : imp_intro(a, ant));
        break;
      }
      case 3: {
        // Arbitrary inference, possibly discharging some open assumptions.
        Inference inf;
        const int nprem = 1 + coin(2);
        for (int k = 0; k < nprem; ++k) inf.premises.push_back(pick());
        inf.conclusion = random_formula(rng, 2, atoms);
        for (std::size_t pi = 0; pi < inf.premises.size(); ++pi)
          for (NodeId leaf : inf.premises[pi].open_assumption_leaves())
            if (coin(4) == 0)
              inf.bind_assumptions.push_back(LeafRef{pi, leaf});
        pool.push_back(build_inference(inf));
        break;
      }
      case 4: {
        // Atomic step discharging assumed rules (axiom-shaped and proper).
        std::vector<const ArgStructure*> atomic;
        for (const ArgStructure& a : pool)
          if (a.conclusion()->kind() == ptsem::FormulaKind::Atom)
            atomic.push_back(&a);
        if (atomic.empty()) {
          pool.push_back(one_step({pick()}, random_formula(rng, 1, atoms)));
          break;
        }
        Inference inf;
        const int nprem = 1 + coin(2);
        for (int k = 0; k < nprem && k < static_cast<int>(atomic.size()); ++k)
          inf.premises.push_back(
              *atomic[std::uniform_int_distribution<std::size_t>(
                  0, atomic.size() - 1)(rng)]);
        inf.conclusion = atom();
        for (std::size_t pi = 0; pi < inf.premises.size(); ++pi) {
          const ArgStructure& prem = inf.premises[pi];
          std::set<NodeId> ftargets;
          for (const auto& [k, v] : prem.f()) ftargets.insert(v);
          for (NodeId id = 0; id < prem.size(); ++id) {
            const auto& nd = prem.node(id);
            const bool atom_label =
                nd.label->kind() == ptsem::FormulaKind::Atom;
            if (nd.leaf == LeafKind::Axiom && atom_label &&
                prem.h().find(id) == prem.h().end() && coin(3) == 0) {
              inf.bind_rule_axioms.push_back(LeafRef{pi, id});
            } else if (!nd.children.empty() && atom_label &&
                       prem.g().find(id) == prem.g().end() &&
                       ftargets.find(id) == ftargets.end() && coin(3) == 0) {
              bool kids_atomic = true;
              for (NodeId c : nd.children)
                if (prem.node(c).label->kind() != ptsem::FormulaKind::Atom)
                  kids_atomic = false;
              if (kids_atomic) inf.bind_rule_groups.push_back(LeafRef{pi, id});
            }
          }
        }
        pool.push_back(build_inference(inf));
        break;
      }
      default: {
        // Close off a structure by substituting axiom-leaves for its open
        // assumptions.
        const ArgStructure& a = pick();
        ptsem::SigmaAssignment sigma;
        for (const FormulaPtr& fm : a.open_assumptions())
          sigma.assign(fm, ArgStructure::axiom(fm));
        pool.push_back(sigma_instance(a, sigma));
        break;
      }
    }
  }
  return pool.back();
}

// --- samplers for the rewrite catalog ------------------------------------

// A Harrop formula: no disjunction in conclusion position.
inline ptsem::FormulaPtr random_harrop(Rng& rng, int depth,
                                       const std::vector<std::string>& atoms =
                                           default_atoms()) {
  using ptsem::Formula;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 9 : 14);
  int c = pick(rng);
  if (c < 8) return Formula::atom(random_atom(rng, atoms));
  if (c < 10) return Formula::bottom();
  if (c < 12)
    return Formula::conj(random_harrop(rng, depth - 1, atoms),
                         random_harrop(rng, depth - 1, atoms));
  if (c < 13) return Formula::neg(random_formula(rng, depth - 1, atoms));
  return Formula::imp(random_formula(rng, depth - 1, atoms),
                      random_harrop(rng, depth - 1, atoms));
}

// Elimination redex for the implication rewrite: the root combines an
// introduction step (over a body with some bound antecedent leaves) with a
// minor premise concluding the antecedent.  Extra open leaves are labelled
// "u", which the default atom pool never produces, so they never collide
// with the bound antecedent.
inline ptsem::ArgStructure random_phi_imp_redex(Rng& rng) {
  using namespace ptsem;
  auto a = random_formula(rng, 1);
  auto b = random_formula(rng, 1);
  std::uniform_int_distribution<int> kd(0, 3), coin(0, 1), extra(0, 2);

  int k = kd(rng);
  ArgStructure body = [&]() -> ArgStructure {
    if (k == 0) {
      if (coin(rng)) return ArgStructure::axiom(b);
      return one_step({ArgStructure::axiom(Formula::atom(random_atom(rng)))},
                      b);
    }
    if (k == 1 && equal(a, b) && coin(rng))
      return ArgStructure::assumption(a);
    std::vector<ArgStructure> prem;
    for (int i = 0; i < k; ++i) prem.push_back(ArgStructure::assumption(a));
    int e = extra(rng);
    for (int i = 0; i < e; ++i) {
      if (coin(rng)) {
        prem.push_back(ArgStructure::axiom(random_formula(rng, 1)));
      } else {
        prem.push_back(ArgStructure::assumption(Formula::atom("u")));
      }
    }
    return one_step(std::move(prem), b);
  }();
  ArgStructure major = k == 0 ? imp_intro_vacuous(std::move(body), a)
                              : imp_intro(std::move(body), a);
  ArgStructure minor = [&]() -> ArgStructure {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0:
        return ArgStructure::axiom(a);
      case 1:
        return ArgStructure::assumption(a);
      case 2:
        return one_step({ArgStructure::axiom(Formula::atom(random_atom(rng)))},
                        a);
      default:
        return one_step({ArgStructure::assumption(Formula::atom("u"))}, a);
    }
  }();
  return one_step({std::move(major), std::move(minor)}, b);
}

// Input for the exchange expansion: a single-premise step swapping the two
// antecedents of a nested implication.
inline ptsem::ArgStructure random_iota_input(Rng& rng) {
  using namespace ptsem;
  auto a = random_formula(rng, 1);
  auto b = random_formula(rng, 1);
  auto c = random_formula(rng, 1);
  auto nested = Formula::imp(a, Formula::imp(b, c));
  ArgStructure prem = [&]() -> ArgStructure {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        return ArgStructure::axiom(nested);
      case 1:
        return ArgStructure::assumption(nested);
      default:
        return one_step({ArgStructure::assumption(Formula::atom("u"))},
                        nested);
    }
  }();
  return one_step({std::move(prem)},
                  Formula::imp(b, Formula::imp(a, c)));
}

// Closed atomic-split step whose premise body derives the disjunction from
// open antecedent assumptions (all of which the introduction step binds).
inline ptsem::ArgStructure random_phi1_input(Rng& rng) {
  using namespace ptsem;
  auto p = Formula::atom(random_atom(rng));
  auto q = Formula::atom(random_atom(rng));
  auto r = Formula::atom(random_atom(rng));
  std::uniform_int_distribution<int> nd(1, 3), coin(0, 1);
  int n = nd(rng);
  std::vector<ArgStructure> prem;
  for (int i = 0; i < n; ++i) {
    if (coin(rng)) {
      prem.push_back(ArgStructure::assumption(p));
    } else {
      prem.push_back(one_step({ArgStructure::assumption(p)},
                              Formula::atom(random_atom(rng))));
    }
  }
  if (coin(rng))
    prem.push_back(ArgStructure::axiom(random_formula(rng, 1)));
  auto body = one_step(std::move(prem), Formula::disj(q, r));
  auto step = imp_intro(std::move(body), p);
  return one_step({std::move(step)},
                  Formula::disj(Formula::imp(p, q), Formula::imp(p, r)));
}

// Closed atomic-split step whose premise body introduces one disjunct over an
// atomic derivation, under a vacuous abstraction.  Some leaves are antecedent
// axioms (marked or not), possibly one discharged by a rule binding.
inline ptsem::ArgStructure random_phi2_input(Rng& rng) {
  using namespace ptsem;
  auto p = Formula::atom(random_atom(rng));
  auto q = Formula::atom(random_atom(rng));
  auto r = Formula::atom(random_atom(rng));
  std::uniform_int_distribution<int> coin(0, 1), nl(1, 3);
  auto qi = coin(rng) ? q : r;

  std::vector<ArgStructure> leaves;
  int n = nl(rng);
  for (int i = 0; i < n; ++i) {
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
      case 0:
        leaves.push_back(ArgStructure::axiom(p));
        break;
      case 1:
        leaves.push_back(ArgStructure::axiom(p, /*marked=*/true));
        break;
      default:
        leaves.push_back(
            ArgStructure::axiom(Formula::atom(random_atom(rng))));
    }
  }
  ArgStructure grand = [&]() -> ArgStructure {
    if (coin(rng)) return one_step(std::move(leaves), qi);
    Inference inf;
    inf.conclusion = qi;
    inf.bind_rule_axioms.push_back(LeafRef{0, 0});
    for (auto& l : leaves) inf.premises.push_back(std::move(l));
    return build_inference(inf);
  }();
  auto body = disj_intro(std::move(grand), Formula::disj(q, r));
  auto step = imp_intro_vacuous(std::move(body), p);
  return one_step({std::move(step)},
                  Formula::disj(Formula::imp(p, q), Formula::imp(p, r)));
}

// Split step over an implication whose antecedent is Harrop.
inline ptsem::ArgStructure random_split_star_input(Rng& rng) {
  using namespace ptsem;
  auto a = random_harrop(rng, 1);
  auto b = random_formula(rng, 1);
  auto c = random_formula(rng, 1);
  auto fab = Formula::imp(a, Formula::disj(b, c));
  ArgStructure prem = [&]() -> ArgStructure {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
      case 0:
        return ArgStructure::axiom(fab);
      case 1:
        return ArgStructure::assumption(fab);
      default:
        return one_step({ArgStructure::assumption(Formula::atom("u"))}, fab);
    }
  }();
  return one_step({std::move(prem)},
                  Formula::disj(Formula::imp(a, b), Formula::imp(a, c)));
}

// Generalised case analysis whose major branch ends by introducing one
// disjunct, with per-branch discharge groups bound at the root.
inline ptsem::ArgStructure random_phi_s_input(Rng& rng) {
  using namespace ptsem;
  auto a = random_formula(rng, 1);
  auto b1 = random_formula(rng, 1);
  auto b2 = random_formula(rng, 1);
  std::uniform_int_distribution<int> coin(0, 1), cnt(0, 2);
  const int side = coin(rng);
  auto bi = side == 0 ? b1 : b2;
  auto goal = Formula::disj(Formula::imp(a, b1), Formula::imp(a, b2));
  auto hyp1 = Formula::imp(a, b1);
  auto hyp2 = Formula::imp(a, b2);

  int n0 = cnt(rng), n1 = cnt(rng), n2 = cnt(rng);
  if (n0 + n1 + n2 == 0) n0 = 1;  // some group must pin down the antecedent

  ArgStructure major = [&] {
    std::vector<ArgStructure> prem;
    for (int i = 0; i < n0; ++i) prem.push_back(ArgStructure::assumption(a));
    if (n0 == 0 || coin(rng))
      prem.push_back(ArgStructure::axiom(Formula::atom(random_atom(rng))));
    return disj_intro(one_step(std::move(prem), bi),
                      Formula::disj(b1, b2));
  }();
  auto mk_minor = [&](const FormulaPtr& hyp, int n) -> ArgStructure {
    if (n == 0) {
      if (coin(rng)) return ArgStructure::axiom(goal);
      return one_step({ArgStructure::assumption(Formula::atom("u"))}, goal);
    }
    std::vector<ArgStructure> prem;
    for (int i = 0; i < n; ++i) prem.push_back(ArgStructure::assumption(hyp));
    if (coin(rng))
      prem.push_back(ArgStructure::assumption(Formula::atom("u")));
    return one_step(std::move(prem), goal);
  };
  auto minor1 = mk_minor(hyp1, n1);
  auto minor2 = mk_minor(hyp2, n2);

  Inference inf;
  inf.conclusion = goal;
  auto bind_open = [&](const ArgStructure& s, std::size_t idx,
                       const FormulaPtr& lab) {
    for (ptsem::NodeId leaf : s.open_assumption_leaves())
      if (equal(s.node(leaf).label, lab))
        inf.bind_assumptions.push_back(LeafRef{idx, leaf});
  };
  bind_open(major, 0, a);
  bind_open(minor1, 1, hyp1);
  bind_open(minor2, 2, hyp2);
  inf.premises.push_back(std::move(major));
  inf.premises.push_back(std::move(minor1));
  inf.premises.push_back(std::move(minor2));
  return build_inference(inf);
}

}  // namespace testgen

#endif  // PTSEM_TESTS_SUPPORT_GEN_HPP_
