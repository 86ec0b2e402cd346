#include <vector>

#include "doctest.h"
#include "ptsem/atomic_system.hpp"
#include "support/gen.hpp"

using namespace ptsem;

namespace {

const AtomicRule kAxiomP = AtomicRule::axiom("p");
const AtomicRule kAxiomQ = AtomicRule::axiom("q");
// r: from p and q, conclude r.
const AtomicRule kRuleR = AtomicRule::simple({"p", "q"}, "r");

bool derivable(const std::string& goal, const std::vector<AtomicRule>& assumed,
               const Base& b) {
  return derive(goal, assumed, b).derived();
}

}  // namespace

TEST_CASE("rule levels") {
  CHECK(kAxiomP.level() == 0);
  CHECK(kRuleR.level() == 1);

  AtomicRule level2({{std::vector<AtomicRule>{kAxiomP}, "q"}}, "r");
  CHECK(level2.level() == 2);

  AtomicRule level3({{std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q")},
                      "q"}},
                    "r");
  CHECK(level3.level() == 3);

  CHECK(print_rule(level2) == "(rule (((rule => p)) q) => r)");
  CHECK(print_rule(kRuleR) == "(rule (p) (q) => r)");
  CHECK(print_rule(kAxiomP) == "(rule => p)");
}

TEST_CASE("base extension is rule-set inclusion") {
  Base b0;
  Base b1({kAxiomP});
  Base b2({kAxiomP, kRuleR});
  CHECK(extends(b1, b0));
  CHECK(extends(b2, b1));
  CHECK_FALSE(extends(b1, b2));
  CHECK(extends(b2, b2));
  CHECK(b2.level() == 1);
  CHECK(b0.level() == 0);
}

TEST_CASE("worked derivability family for the two-premise rule") {
  // With assumed p, q and the rule itself, r is derivable over any base.
  for (const Base& any : {Base(), Base({kAxiomQ})}) {
    CHECK(derivable("r", {kAxiomP, kAxiomQ, kRuleR}, any));
  }

  Base bp({kAxiomP});
  // Once p is in the base, assuming q and the rule suffices...
  CHECK(derivable("r", {kAxiomQ, kRuleR}, bp));
  // ...but the rule alone does not (q is missing).
  CHECK_FALSE(derivable("r", {kRuleR}, bp));

  Base bpr({kAxiomP, kRuleR});
  CHECK(derivable("r", {kAxiomQ}, bpr));
  CHECK_FALSE(derivable("r", {}, bpr));

  Base bpqr({kAxiomP, kAxiomQ, kRuleR});
  CHECK(derivable("r", {}, bpqr));
}

TEST_CASE("assumed axioms versus base axioms") {
  Base with_p({kAxiomP});
  Base without;
  // p in the base: derivable with or without assuming it.
  CHECK(derivable("p", {kAxiomP}, with_p));
  CHECK(derivable("p", {}, with_p));
  // p not in the base: only the assumed form goes through.
  CHECK(derivable("p", {kAxiomP}, without));
  CHECK_FALSE(derivable("p", {}, without));
}

TEST_CASE("empty base derives nothing, absurdity included") {
  Base empty;
  for (const char* goal : {"p", "q", "zeta"}) {
    CHECK_FALSE(derivable(goal, {}, empty));
  }
  CHECK_FALSE(derivable(kBottomName, {}, empty));
}

TEST_CASE("absurdity spreads to every atom") {
  AtomicRule bot_axiom = AtomicRule::axiom(kBottomName);
  for (const char* goal : {"p", "q", "anything_else"}) {
    auto res = derive(goal, {bot_axiom}, Base());
    REQUIRE(res.derived());
    auto check = check_derivation(*res.derivation, {bot_axiom}, Base());
    CHECK(check.ok);
  }
  CHECK(derivable(kBottomName, {bot_axiom}, Base()));

  // The spreading rules are implicit: an explicit copy changes nothing.
  CHECK(is_ae_rule(ae_rule("p")));
  CHECK(derivable("p", {}, Base({bot_axiom})));
}

TEST_CASE("higher-level discharge activates rules inside a slot") {
  // From q (with the p axiom assumable there), conclude r.
  AtomicRule discharging({{std::vector<AtomicRule>{kAxiomP}, "q"}}, "r");
  AtomicRule p_to_q = AtomicRule::simple({"p"}, "q");

  Base b({discharging, p_to_q});
  auto res = derive("r", {}, b);
  REQUIRE(res.derived());
  CHECK(check_derivation(*res.derivation, {}, b).ok);

  // Without the bridge from p to q the discharge is useless.
  CHECK_FALSE(derivable("r", {}, Base({discharging})));
  // And the discharged axiom is not available outside the slot.
  CHECK_FALSE(derivable("p", {}, b));
}

TEST_CASE("check_derivation rejects out-of-context applications") {
  auto dp = AtomicDerivation(kAxiomP, {});
  auto dq = AtomicDerivation(kAxiomQ, {});
  AtomicDerivation dr(kRuleR, {dp, dq});
  CHECK(check_derivation(dr, {}, Base({kAxiomP, kAxiomQ, kRuleR})).ok);

  auto bad = check_derivation(dr, {}, Base({kAxiomP, kRuleR}));
  CHECK_FALSE(bad.ok);
  CHECK(bad.reason.find("(rule => q)") != std::string::npos);

  CHECK_THROWS_AS(AtomicDerivation(kRuleR, {dp}), ValidationError);
  CHECK_THROWS_AS(AtomicDerivation(kRuleR, {dq, dp}), ValidationError);
}

TEST_CASE("expansion cap is distinct from definitive failure") {
  Base bpqr({kAxiomP, kAxiomQ, kRuleR});
  auto capped = derive("r", {}, bpqr, 0);
  CHECK(capped.status == DeriveStatus::CapExhausted);
  auto full = derive("r", {}, bpqr);
  CHECK(full.status == DeriveStatus::Derived);
  auto no = derive("s", {}, bpqr);
  CHECK(no.status == DeriveStatus::NotDerivable);
}

TEST_CASE("cyclic rule sets terminate") {
  AtomicRule pq = AtomicRule::simple({"q"}, "p");
  AtomicRule qp = AtomicRule::simple({"p"}, "q");
  Base cyc({pq, qp});
  CHECK_FALSE(derivable("p", {}, cyc));
  CHECK(derivable("p", {}, cyc.with(AtomicRule::axiom("q"))));
}

TEST_CASE("interleaved queries do not poison the memo") {
  // g needs h, h needs g or k; k is underivable, but g has an axiom route.
  AtomicRule g_from_h = AtomicRule::simple({"h"}, "g");
  AtomicRule h_from_g = AtomicRule::simple({"g"}, "h");
  AtomicRule h_from_k = AtomicRule::simple({"k"}, "h");
  Base b({g_from_h, h_from_g, h_from_k, AtomicRule::axiom("g")});
  CHECK(derivable("g", {}, b));
  CHECK(derivable("h", {}, b));
}

TEST_CASE("property: derive output always re-checks; derivability is monotone") {
  testgen::Rng rng(991);
  int derived_count = 0;
  for (int i = 0; i < 600; ++i) {
    Base b = testgen::random_base(rng, 5);
    std::string goal = testgen::random_atom(rng);
    auto res = derive(goal, {}, b);
    if (res.status != DeriveStatus::Derived) continue;
    ++derived_count;
    REQUIRE(res.derivation->conclusion() == goal);
    REQUIRE(check_derivation(*res.derivation, {}, b).ok);

    Base bigger = b.union_with(testgen::random_base(rng, 3));
    auto again = derive(goal, {}, bigger);
    REQUIRE(again.derived());
    // The old witness stays valid over the extension.
    REQUIRE(check_derivation(*res.derivation, {}, bigger).ok);
  }
  CHECK(derived_count > 50);
}

TEST_CASE("property: derive is deterministic") {
  testgen::Rng rng(1717);
  for (int i = 0; i < 200; ++i) {
    Base b = testgen::random_base(rng, 4);
    std::string goal = testgen::random_atom(rng);
    auto r1 = derive(goal, {}, b);
    auto r2 = derive(goal, {}, b);
    REQUIRE(r1.status == r2.status);
    if (r1.derived()) REQUIRE(*r1.derivation == *r2.derivation);
  }
}
