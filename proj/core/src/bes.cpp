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

#include "ptsem/bes.hpp"

#include <algorithm>
#include <map>

namespace ptsem {

ExtensionPool make_pool(const PoolParams& params) {
  if (params.max_level < 0 || params.max_level > 2) {
    throw DomainError("pool max_level must be 0, 1 or 2");
  }
  if (params.max_premises < 1) {
    throw DomainError("pool max_premises must be at least 1");
  }
  if (params.atoms.empty()) {
    throw DomainError("pool atom universe must be nonempty");
  }
  std::vector<std::string> atoms = params.atoms;
  std::sort(atoms.begin(), atoms.end());
  atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
  for (const auto& a : atoms) {
    if (!is_valid_atom_name(a)) {
      throw DomainError("pool atom '" + a + "' is not a valid atom name");
    }
  }

  std::vector<AtomicRule> rules;
  auto push = [&](AtomicRule r) {
    if (rules.size() < params.max_size) rules.push_back(std::move(r));
  };

  for (const auto& a : atoms) push(AtomicRule::axiom(a));

  if (params.max_level >= 1) {
    // Premise subsets by size, then lexicographically.
    std::size_t n = atoms.size();
    int maxm = std::min<int>(params.max_premises, static_cast<int>(n));
    for (int m = 1; m <= maxm; ++m) {
      std::vector<std::size_t> idx(m);
      for (int i = 0; i < m; ++i) idx[i] = i;
      while (true) {
        std::vector<std::string> premises;
        for (int i = 0; i < m; ++i) premises.push_back(atoms[idx[i]]);
        for (const auto& concl : atoms) {
          push(AtomicRule::simple(premises, concl));
        }
        // Next m-combination of {0..n-1}.
        int i = m - 1;
        while (i >= 0 && idx[i] == n - static_cast<std::size_t>(m - i)) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
  }

  if (params.max_level >= 2) {
    // Single-slot rules discharging one axiom: from y, with x assumable,
    // conclude z.
    for (const auto& x : atoms) {
      for (const auto& y : atoms) {
        for (const auto& z : atoms) {
          push(AtomicRule(
              {{std::vector<AtomicRule>{AtomicRule::axiom(x)}, y}}, z));
        }
      }
    }
  }

  PoolParams canon = params;
  canon.atoms = atoms;
  return ExtensionPool(std::move(rules), std::move(canon));
}

std::vector<std::vector<std::size_t>> pool_subsets(const ExtensionPool& pool) {
  std::size_t n = pool.size();
  if (n > 16) {
    throw DomainError("pool of " + std::to_string(n) +
                      " candidates is too large to enumerate exhaustively");
  }
  std::vector<std::vector<std::size_t>> subsets;
  subsets.reserve(std::size_t{1} << n);
  for (std::size_t m = 0; m <= n; ++m) {
    if (m == 0) {
      subsets.push_back({});
      continue;
    }
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    while (true) {
      subsets.push_back(idx);
      std::size_t i = m;
      while (i > 0 && idx[i - 1] == n - (m - (i - 1))) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < m; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return subsets;
}

Base pool_extension(const Base& b, const ExtensionPool& pool,
                    const std::vector<std::size_t>& subset) {
  std::vector<AtomicRule> rules = b.rules();
  for (std::size_t i : subset) {
    if (i >= pool.size()) throw DomainError("pool subset index out of range");
    rules.push_back(pool.rules()[i]);
  }
  return Base(std::move(rules));
}

namespace {

std::string atomic_token(const FormulaPtr& f) {
  return f->is_bottom() ? kBottomName : f->atom_name();
}

// Inductive evaluation of support and consequence, with all extension
// quantifiers bounded by the pool.  Support results are memoised per
// (base, formula); the search for a refutation certificate re-descends
// without the memo so the decisive judgement can be reported.
class Evaluator {
 public:
  explicit Evaluator(const ExtensionPool& pool)
      : pool_(pool), subsets_(pool_subsets(pool)) {}

  // why, when non-null, receives the decisive failing judgement.
  bool supports(const Base& c, const FormulaPtr& a, Refutation* why) {
    if (why == nullptr) {
      std::string key = c.fingerprint() + '#' + print_formula(a);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
      bool res = supports_uncached(c, a, nullptr);
      memo_.emplace(std::move(key), res);
      return res;
    }
    return supports_uncached(c, a, why);
  }

  bool consequence(const Base& c, const std::vector<FormulaPtr>& gamma,
                   const FormulaPtr& a, Refutation* why) {
    if (gamma.empty()) return supports(c, a, why);
    for (const auto& subset : subsets_) {
      Base ext = pool_extension(c, pool_, subset);
      bool all = true;
      for (const auto& g : gamma) {
        if (!supports(ext, g, nullptr)) {
          all = false;
          break;
        }
      }
      if (!all) continue;
      if (!supports(ext, a, nullptr)) {
        if (why) {
          // The decisive judgement: the antecedents are supported at `ext`
          // while the succedent is not.  This replays standalone.
          *why = Refutation{ext, gamma, a,
                            "antecedents supported but succedent fails"};
        }
        return false;
      }
    }
    return true;
  }

 private:
  bool supports_uncached(const Base& c, const FormulaPtr& a, Refutation* why) {
    switch (a->kind()) {
      case FormulaKind::Atom:
      case FormulaKind::Bottom: {
        bool ok = derivable(c, atomic_token(a));
        if (!ok && why) {
          *why = Refutation{c, {}, a, "atom not derivable"};
        }
        return ok;
      }
      case FormulaKind::And: {
        if (!supports(c, a->left(), why)) return false;
        return supports(c, a->right(), why);
      }
      case FormulaKind::Or: {
        if (supports(c, a->left(), nullptr)) return true;
        if (supports(c, a->right(), nullptr)) return true;
        if (why) {
          // Both branches fail; report the left one as the decisive case.
          supports(c, a->left(), why);
          why->note += " (neither disjunct is supported)";
        }
        return false;
      }
      case FormulaKind::Imp: {
        std::vector<FormulaPtr> gamma = {a->left()};
        return consequence(c, gamma, a->right(), why);
      }
    }
    return false;  // unreachable
  }

  bool derivable(const Base& c, const std::string& goal) {
    std::string key = c.fingerprint() + '#' + goal;
    auto it = derive_memo_.find(key);
    if (it != derive_memo_.end()) return it->second;
    auto res = derive(goal, {}, c);
    if (res.status == DeriveStatus::CapExhausted) {
      throw Error("derivation search cap exhausted during consequence check");
    }
    bool ok = res.derived();
    derive_memo_.emplace(std::move(key), ok);
    return ok;
  }

  const ExtensionPool& pool_;
  std::vector<std::vector<std::size_t>> subsets_;
  std::map<std::string, bool> memo_;
  std::map<std::string, bool> derive_memo_;
};

}  // namespace

SequentVerdict bes_holds(const std::vector<FormulaPtr>& gamma,
                         const FormulaPtr& a, const Base& b,
                         const ExtensionPool& pool) {
  Evaluator eval(pool);
  Refutation why;
  if (eval.consequence(b, gamma, a, &why)) {
    return SequentVerdict::holds_within_pool();
  }
  return SequentVerdict::refuted_by(std::move(why));
}

SequentVerdict bes_logical(const std::vector<FormulaPtr>& gamma,
                           const FormulaPtr& a, const ExtensionPool& pool) {
  return bes_holds(gamma, a, Base(), pool);
}

bool replay_refutation(const Refutation& cert, const ExtensionPool& pool) {
  if (!cert.failed) return false;
  Evaluator eval(pool);
  for (const auto& g : cert.antecedents) {
    if (!eval.supports(cert.extension, g, nullptr)) return false;
  }
  return !eval.supports(cert.extension, cert.failed, nullptr);
}

std::optional<SubstitutionRefutation> refute_substitution_closure(
    const std::vector<FormulaPtr>& gamma, const FormulaPtr& a,
    const std::vector<AtomSubstitution>& subs, const ExtensionPool& pool) {
  for (const auto& star : subs) {
    std::vector<FormulaPtr> gamma_inst;
    gamma_inst.reserve(gamma.size());
    for (const auto& g : gamma) {
      gamma_inst.push_back(apply_substitution(g, star));
    }
    FormulaPtr a_inst = apply_substitution(a, star);
    SequentVerdict v = bes_logical(gamma_inst, a_inst, pool);
    if (!v.holds) {
      return SubstitutionRefutation{star, std::move(*v.refutation)};
    }
  }
  return std::nullopt;
}

}  // namespace ptsem
