#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "doctest.h"
#include "ptsem/errors.hpp"
#include "ptsem/validity.hpp"
#include "support/gen.hpp"

using namespace ptsem;

namespace {

FormulaPtr at(const char* n) { return Formula::atom(n); }

const Reduction& std_red(const std::string& name) {
  const Reduction* r = find_standard_reduction(name);
  REQUIRE(r != nullptr);
  return *r;
}

AtomicRule guarded_rule() {
  // Concludes q from p, where the p-premise may lean on an assumed axiom s.
  AtomicRule::Slot slot;
  slot.discharges = {AtomicRule::axiom("s")};
  slot.premise = "p";
  return AtomicRule({slot}, "q");
}

AtomicRule higher_rule() {
  // Concludes r from q, where the q-premise may assume the rule p-to-q.
  AtomicRule::Slot slot;
  slot.discharges = {AtomicRule::simple({"p"}, "q")};
  slot.premise = "q";
  return AtomicRule({slot}, "r");
}

// One-step structure inferring q from an axiom leaf p.
ArgStructure axiom_p_to_q() {
  return one_step({ArgStructure::axiom(at("p"))}, at("q"));
}

// One-step structure inferring q from an open assumption p.
ArgStructure assume_p_to_q() {
  return one_step({ArgStructure::assumption(at("p"))}, at("q"));
}

}  // namespace

TEST_CASE("argument structures read back as rule derivations") {
  Base b(std::vector<AtomicRule>{AtomicRule::axiom("p"),
                                 AtomicRule::simple({"p"}, "q")});

  SUBCASE("axiom leaf and one-step inference") {
    auto r0 = reconstruct_derivation(ArgStructure::axiom(at("p")), b);
    REQUIRE(r0.ok);
    CHECK(r0.derivation->conclusion() == "p");
    CHECK(r0.derivation->rule().is_axiom());

    auto r1 = reconstruct_derivation(axiom_p_to_q(), b);
    REQUIRE(r1.ok);
    CHECK(r1.derivation->rule() == AtomicRule::simple({"p"}, "q"));
    REQUIRE(r1.derivation->children().size() == 1);
    CHECK(r1.derivation->children()[0].rule().is_axiom());
    CHECK(check_derivation(*r1.derivation, {}, b).ok);
  }

  SUBCASE("absurdity fallback when no listed rule applies") {
    Base bb(std::vector<AtomicRule>{AtomicRule::axiom("bot")});
    auto r = reconstruct_derivation(
        one_step({ArgStructure::axiom(Formula::bottom())}, at("q")), bb);
    REQUIRE(r.ok);
    CHECK(is_ae_rule(r.derivation->rule()));
    CHECK(check_derivation(*r.derivation, {}, bb).ok);
  }

  SUBCASE("failures carry reasons") {
    auto f1 = reconstruct_derivation(ArgStructure::axiom(at("q")), Base{});
    CHECK_FALSE(f1.ok);
    CHECK(f1.reason.find("no axiom in the base") != std::string::npos);

    auto f2 = reconstruct_derivation(ArgStructure::assumption(at("p")), b);
    CHECK_FALSE(f2.ok);

    auto f3 = reconstruct_derivation(
        one_step({ArgStructure::axiom(at("p"))},
                 Formula::conj(at("p"), at("p"))),
        b);
    CHECK_FALSE(f3.ok);

    auto f4 =
        reconstruct_derivation(one_step({ArgStructure::axiom(at("p"))},
                                        at("r")),
                               b);
    CHECK_FALSE(f4.ok);
    CHECK(f4.reason.find("no available rule") != std::string::npos);
  }

  SUBCASE("axiom-leaf bindings stand in for assumed axioms") {
    AtomicRule guarded = guarded_rule();
    Base bg(std::vector<AtomicRule>{AtomicRule::simple({"s"}, "p"), guarded});
    ArgStructure sub = one_step({ArgStructure::axiom(at("s"))}, at("p"));
    Inference inf;
    inf.premises = {sub};
    inf.conclusion = at("q");
    inf.bind_rule_axioms = {{0, 1}};  // the s-leaf inside the premise
    ArgStructure dh = build_inference(inf);

    auto rh = reconstruct_derivation(dh, bg);
    REQUIRE(rh.ok);
    CHECK(rh.derivation->rule() == guarded);
    CHECK(check_derivation(*rh.derivation, {}, bg).ok);

    // Without the binding the s-axiom would need to come from the base.
    auto rplain = reconstruct_derivation(one_step({sub}, at("q")), bg);
    CHECK_FALSE(rplain.ok);
    CHECK(rplain.reason.find("no axiom in the base") != std::string::npos);
  }

  SUBCASE("inner-node bindings stand in for assumed level-one rules") {
    AtomicRule higher = higher_rule();
    Base bh(std::vector<AtomicRule>{AtomicRule::axiom("p"), higher});
    ArgStructure gsub = one_step({ArgStructure::axiom(at("p"))}, at("q"));
    Inference inf;
    inf.premises = {gsub};
    inf.conclusion = at("r");
    inf.bind_rule_groups = {{0, 0}};  // the q-node heads the assumed rule
    ArgStructure dg = build_inference(inf);

    auto rg = reconstruct_derivation(dg, bh);
    REQUIRE(rg.ok);
    CHECK(rg.derivation->rule() == higher);
    REQUIRE(rg.derivation->children().size() == 1);
    CHECK(rg.derivation->children()[0].rule() ==
          AtomicRule::simple({"p"}, "q"));
    CHECK(check_derivation(*rg.derivation, {}, bh).ok);
  }
}

TEST_CASE("rule derivations render as structures and round-trip") {
  Base b(std::vector<AtomicRule>{AtomicRule::axiom("p"),
                                 AtomicRule::simple({"p"}, "q")});

  SUBCASE("plain derivations") {
    AtomicDerivation dp(AtomicRule::simple({"p"}, "q"),
                        {AtomicDerivation(AtomicRule::axiom("p"), {})});
    CHECK(derivation_to_structure(dp, b) == axiom_p_to_q());
    CHECK_THROWS_AS(derivation_to_structure(dp, Base{}), DomainError);
  }

  SUBCASE("discharged axioms become bound axiom-leaves") {
    AtomicRule guarded = guarded_rule();
    Base bg(std::vector<AtomicRule>{AtomicRule::simple({"s"}, "p"), guarded});
    AtomicDerivation dd(
        guarded,
        {AtomicDerivation(AtomicRule::simple({"s"}, "p"),
                          {AtomicDerivation(AtomicRule::axiom("s"), {})})});
    REQUIRE(check_derivation(dd, {}, bg).ok);

    ArgStructure sh = derivation_to_structure(dd, bg);
    CHECK(sh.h().size() == 1);
    auto back = reconstruct_derivation(sh, bg);
    REQUIRE(back.ok);
    CHECK(*back.derivation == dd);

    // If the base supplies the axiom itself, no binding is needed.
    Base bboth = bg.with(AtomicRule::axiom("s"));
    ArgStructure sboth = derivation_to_structure(dd, bboth);
    CHECK(sboth.h().empty());
    CHECK(reconstruct_derivation(sboth, bboth).ok);
  }

  SUBCASE("discharged level-one rules become bound inner nodes") {
    AtomicRule higher = higher_rule();
    Base bh(std::vector<AtomicRule>{AtomicRule::axiom("p"), higher});
    AtomicDerivation dd(
        higher,
        {AtomicDerivation(AtomicRule::simple({"p"}, "q"),
                          {AtomicDerivation(AtomicRule::axiom("p"), {})})});
    REQUIRE(check_derivation(dd, {}, bh).ok);

    ArgStructure sg = derivation_to_structure(dd, bh);
    CHECK(sg.g().size() == 1);
    auto back = reconstruct_derivation(sg, bh);
    REQUIRE(back.ok);
    CHECK(*back.derivation == dd);
  }

  SUBCASE("discharged rules above level one have no counterpart") {
    AtomicRule guarded = guarded_rule();
    AtomicRule::Slot top_slot;
    top_slot.discharges = {guarded};
    top_slot.premise = "q";
    AtomicRule top({top_slot}, "t");
    Base btop(std::vector<AtomicRule>{AtomicRule::simple({"s"}, "p"), top});
    AtomicDerivation inner(
        guarded,
        {AtomicDerivation(AtomicRule::simple({"s"}, "p"),
                          {AtomicDerivation(AtomicRule::axiom("s"), {})})});
    AtomicDerivation dtop(top, {inner});
    REQUIRE(check_derivation(dtop, {}, btop).ok);
    CHECK_THROWS_AS(derivation_to_structure(dtop, btop), DomainError);
  }

  SUBCASE("random chains round-trip exactly") {
    std::vector<AtomicRule> chain = {
        AtomicRule::simple({"p"}, "q"), AtomicRule::simple({"q"}, "r"),
        AtomicRule::simple({"r"}, "t"), AtomicRule::simple({"t"}, "p")};
    std::vector<AtomicRule> all = chain;
    all.push_back(AtomicRule::axiom("p"));
    Base cb(all);
    testgen::Rng rng(20260822u);
    for (int i = 0; i < 30; ++i) {
      AtomicDerivation der(AtomicRule::axiom("p"), {});
      std::size_t len = rng() % (chain.size() + 1);
      for (std::size_t k = 0; k < len; ++k) {
        der = AtomicDerivation(chain[k], {der});
      }
      ArgStructure s = derivation_to_structure(der, cb);
      auto back = reconstruct_derivation(s, cb);
      REQUIRE(back.ok);
      CHECK(*back.derivation == der);
    }
  }
}

TEST_CASE("closed validity for atomic conclusions") {
  Base b(std::vector<AtomicRule>{AtomicRule::axiom("p"),
                                 AtomicRule::simple({"p"}, "q")});
  Justification jimp;
  jimp.add(std_red("phi_imp"));

  SUBCASE("a derivation-shaped structure is valid with no rewriting") {
    auto v = valid_closed(axiom_p_to_q(), Justification{}, b);
    REQUIRE(v.is_valid());
    REQUIRE(v.trace.has_value());
    CHECK(v.trace->steps.empty());
    REQUIRE(v.witness.has_value());
    CHECK(check_derivation(*v.witness, {}, b).ok);
    CHECK(v.bounds.find("rewrite search bounded") != std::string::npos);
  }

  SUBCASE("a detour contracts to a derivation in one step") {
    ArgStructure redex = one_step(
        {imp_intro(assume_p_to_q(), at("p")), ArgStructure::axiom(at("p"))},
        at("q"));
    auto v = valid_closed(redex, jimp, b);
    REQUIRE(v.is_valid());
    REQUIRE(v.trace.has_value());
    REQUIRE(v.trace->steps.size() == 1);
    CHECK(v.trace->steps[0].rule == "phi_imp");
    CHECK(verify_trace(*v.trace, jimp));
    CHECK(v.trace->last() == axiom_p_to_q());

    // Without the rewrite in the justification the same structure is stuck.
    CHECK(valid_closed(redex, Justification{}, b).is_invalid());

    // With no rewrite budget the question is left open.
    ValidityOptions tight;
    tight.step_cap = 0;
    CHECK(valid_closed(redex, jimp, b, tight).is_inconclusive());
  }

  SUBCASE("invalidity over a base that proves nothing") {
    auto v = valid_closed(axiom_p_to_q(), Justification{}, Base{});
    CHECK(v.is_invalid());
    CHECK(v.reason.find("derivation over the base") != std::string::npos);
  }

  SUBCASE("open structures are rejected") {
    CHECK_THROWS_AS(
        valid_closed(ArgStructure::assumption(at("p")), Justification{}, b),
        DomainError);
  }
}

TEST_CASE("closed validity for compound conclusions") {
  Base b(std::vector<AtomicRule>{AtomicRule::axiom("p"),
                                 AtomicRule::simple({"p"}, "q")});

  SUBCASE("introductions over valid parts") {
    ArgStructure dor =
        disj_intro(axiom_p_to_q(), Formula::disj(at("q"), at("r")));
    CHECK(valid_closed(dor, Justification{}, b).is_valid());

    ArgStructure dand =
        conj_intro(axiom_p_to_q(), ArgStructure::axiom(at("p")));
    CHECK(valid_closed(dand, Justification{}, b).is_valid());
  }

  SUBCASE("an implication introduction checks its open body") {
    ArgStructure dimp = imp_intro(assume_p_to_q(), at("p"));

    // With nothing to close the body, the check is vacuous.
    auto vi = valid_closed(dimp, Justification{}, b);
    CHECK(vi.is_valid());

    // With a closing argument and an axiom extension, genuinely checked.
    ValidityOptions wb;
    wb.catalog.add(at("p"), ArgStructure::axiom(at("p")), Justification{});
    wb.pool = ExtensionPool({AtomicRule::axiom("p")}, PoolParams{});
    CHECK(valid_closed(dimp, Justification{}, b, wb).is_valid());

    // Over the empty base the axiom-p extension refutes the body.
    auto bad = valid_closed(dimp, Justification{}, Base{}, wb);
    REQUIRE(bad.is_invalid());
    CHECK(bad.reason.find("invalid sub-argument") != std::string::npos);
  }

  SUBCASE("a compound conclusion must reach an introduction") {
    ArgStructure stuck = one_step({ArgStructure::axiom(at("p"))},
                                  Formula::disj(at("q"), at("r")));
    auto v = valid_closed(stuck, Justification{}, b);
    CHECK(v.is_invalid());
    CHECK(v.reason.find("introduction") != std::string::npos);
  }

  SUBCASE("reductions may uncover the introduction") {
    Base bs = b.with(AtomicRule::axiom("s"));
    ArgStructure dimp = imp_intro(assume_p_to_q(), at("p"));
    ArgStructure redex =
        one_step({imp_intro_vacuous(dimp, at("s")),
                  ArgStructure::axiom(at("s"))},
                 Formula::imp(at("p"), at("q")));
    Justification jimp;
    jimp.add(std_red("phi_imp"));
    auto v = valid_closed(redex, jimp, bs);
    REQUIRE(v.is_valid());
    REQUIRE(v.trace.has_value());
    CHECK(v.trace->steps.size() == 1);
    CHECK(is_canonical(v.trace->last()));
  }
}

TEST_CASE("bounded open validity") {
  Base bpq(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q")});
  ClosedArgCatalog cat;
  cat.add(at("p"), ArgStructure::axiom(at("p")), Justification{});
  ExtensionPool pool({AtomicRule::axiom("p")}, PoolParams{});

  SUBCASE("the bare assumption-leaf is valid under any catalog") {
    auto v = valid_open_bounded(ArgStructure::assumption(at("p")),
                                Justification{}, Base{}, cat, pool);
    CHECK(v.is_valid());

    ClosedArgCatalog empty_cat;
    auto vv = valid_open_bounded(ArgStructure::assumption(at("p")),
                                 Justification{}, Base{}, empty_cat, pool);
    CHECK(vv.is_valid());
    CHECK(vv.bounds.find("no catalog closings conclude: p") !=
          std::string::npos);
  }

  SUBCASE("an open step backed by a base rule survives all extensions") {
    auto v = valid_open_bounded(assume_p_to_q(), Justification{}, bpq, cat,
                                pool);
    REQUIRE(v.is_valid());
    CHECK(v.bounds.find("pool extensions") != std::string::npos);
  }

  SUBCASE("a counterexample extension is reported deterministically") {
    auto v = valid_open_bounded(assume_p_to_q(), Justification{}, Base{}, cat,
                                pool);
    REQUIRE(v.is_invalid());
    CHECK(v.reason.find("counterexample at extension") != std::string::npos);
    auto v2 = valid_open_bounded(assume_p_to_q(), Justification{}, Base{},
                                 cat, pool);
    CHECK(v2.reason == v.reason);
  }

  SUBCASE("closing arguments may bring their own justifications") {
    Base bsp(std::vector<AtomicRule>{AtomicRule::axiom("s"),
                                     AtomicRule::simple({"s"}, "p"),
                                     AtomicRule::simple({"p"}, "q")});
    ArgStructure redexp = one_step(
        {imp_intro(one_step({ArgStructure::assumption(at("s"))}, at("p")),
                   at("s")),
         ArgStructure::axiom(at("s"))},
        at("p"));
    Justification jimp;
    jimp.add(std_red("phi_imp"));
    ClosedArgCatalog cat2;
    cat2.add(at("p"), redexp, jimp);
    ExtensionPool no_pool;
    auto v = valid_open_bounded(assume_p_to_q(), Justification{}, bsp, cat2,
                                no_pool);
    CHECK(v.is_valid());
  }

  SUBCASE("ill-posed and out-of-budget questions") {
    CHECK_THROWS_AS(valid_open_bounded(ArgStructure::axiom(at("p")),
                                       Justification{}, Base{}, cat, pool),
                    DomainError);
    ValidityOptions no_budget;
    no_budget.max_assignments = 0;
    CHECK(valid_open_bounded(assume_p_to_q(), Justification{}, bpq, cat, pool,
                             no_budget)
              .is_inconclusive());
  }
}

TEST_CASE("justification-independent certificates for atomic structures") {
  Base bpq(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q")});

  SUBCASE("axiomizing the open assumptions yields a derivation") {
    auto cert = valid_for_every_justification(assume_p_to_q(), bpq);
    REQUIRE(cert.is_valid());
    REQUIRE(cert.witness.has_value());
    auto [axd, ext] = axiomize_assumptions(assume_p_to_q(), bpq);
    CHECK(is_closed(axd));
    CHECK(ext.contains(AtomicRule::axiom("p")));
    CHECK(check_derivation(*cert.witness, {}, ext).ok);

    // The certificate transfers: the axiomized structure is valid with the
    // empty justification over the extended base.
    CHECK(valid_closed(axd, Justification{}, ext).is_valid());
  }

  SUBCASE("bare leaves and failures") {
    CHECK(valid_for_every_justification(ArgStructure::assumption(at("p")), Base{})
              .is_valid());
    CHECK(valid_for_every_justification(assume_p_to_q(), Base{}).is_invalid());
    // A pre-existing axiom-leaf must come from the base itself.
    CHECK(valid_for_every_justification(axiom_p_to_q(), bpq).is_invalid());
    CHECK(valid_for_every_justification(axiom_p_to_q(), bpq.with(AtomicRule::axiom("p")))
              .is_valid());
  }

  SUBCASE("non-atomic labels and discharges are rejected") {
    CHECK_THROWS_AS(
        valid_for_every_justification(
            ArgStructure::assumption(Formula::conj(at("p"), at("q"))),
            Base{}),
        DomainError);
    Inference inf;
    inf.premises = {assume_p_to_q()};
    inf.conclusion = at("r");
    inf.bind_assumptions = {{0, 1}};
    CHECK_THROWS_AS(valid_for_every_justification(build_inference(inf), bpq), DomainError);
  }

  SUBCASE("random rule-built structures all certify") {
    Base chain(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q"),
                                       AtomicRule::simple({"q"}, "r"),
                                       AtomicRule::simple({"q", "r"}, "s")});
    testgen::Rng rng(420260822u);
    std::function<ArgStructure(const FormulaPtr&, int)> grow =
        [&](const FormulaPtr& goal, int depth) -> ArgStructure {
      if (depth > 0) {
        std::vector<const AtomicRule*> fits;
        for (const AtomicRule& r : chain.rules()) {
          if (r.conclusion() == print_formula(goal)) fits.push_back(&r);
        }
        if (!fits.empty() && rng() % 4 != 0) {
          const AtomicRule& r = *fits[rng() % fits.size()];
          std::vector<ArgStructure> kids;
          for (const auto& slot : r.slots()) {
            kids.push_back(grow(at(slot.premise.c_str()), depth - 1));
          }
          return one_step(std::move(kids), goal);
        }
      }
      return ArgStructure::assumption(goal);
    };
    const char* goals[] = {"q", "r", "s"};
    for (int i = 0; i < 40; ++i) {
      ArgStructure d = grow(at(goals[i % 3]), 1 + static_cast<int>(rng() % 3));
      auto cert = valid_for_every_justification(d, chain);
      REQUIRE(cert.is_valid());
      auto [axd, ext] = axiomize_assumptions(d, chain);
      CHECK(valid_closed(axd, Justification{}, ext).is_valid());
    }
  }
}

TEST_CASE("the grafting rewrite") {
  ArgStructure dmp = one_step({ArgStructure::assumption(
                                   Formula::imp(at("p"), at("q"))),
                               ArgStructure::assumption(at("p"))},
                              at("q"));
  Reduction graft = graft_reduction(dmp);

  SUBCASE("grafting replaces the final step by the premise arguments") {
    CHECK(graft.name.rfind("graft:", 0) == 0);
    ArgStructure dimparg = imp_intro(assume_p_to_q(), at("p"));
    ArgStructure e =
        one_step({dimparg, ArgStructure::axiom(at("p"))}, at("q"));
    REQUIRE(graft.in_domain(e));
    SigmaAssignment sg;
    sg.assign(Formula::imp(at("p"), at("q")), dimparg);
    sg.assign(at("p"), ArgStructure::axiom(at("p")));
    CHECK(graft.transform(e) == sigma_instance(dmp, sg));

    // Premises are matched by conclusion, not by position.
    ArgStructure esw =
        one_step({ArgStructure::axiom(at("p")), dimparg}, at("q"));
    REQUIRE(graft.in_domain(esw));
    CHECK(graft.transform(esw) == graft.transform(e));
  }

  SUBCASE("every occurrence of an assumption receives a copy") {
    ArgStructure dup = one_step({ArgStructure::assumption(at("p")),
                                 assume_p_to_q()},
                                at("r"));
    Reduction graft2 = graft_reduction(dup);
    ArgStructure e2 = one_step({ArgStructure::axiom(at("p"))}, at("r"));
    REQUIRE(graft2.in_domain(e2));
    SigmaAssignment sg2;
    sg2.assign(at("p"), ArgStructure::axiom(at("p")));
    CHECK(graft2.transform(e2) == sigma_instance(dup, sg2));
  }

  SUBCASE("a single-leaf structure grafts to the premise argument itself") {
    Reduction graft3 = graft_reduction(ArgStructure::assumption(at("s")));
    ArgStructure e3 = one_step({ArgStructure::axiom(at("s"))}, at("s"));
    REQUIRE(graft3.in_domain(e3));
    CHECK(graft3.transform(e3) == ArgStructure::axiom(at("s")));

    ArgStructure prem =
        one_step({ArgStructure::axiom(Formula::bottom())}, at("s"));
    CHECK(graft3.transform(one_step({prem}, at("s"))) == prem);

    // A discharge at the final step takes the instance out of the domain.
    Inference inf;
    inf.premises = {one_step({ArgStructure::assumption(at("s"))}, at("s"))};
    inf.conclusion = at("s");
    inf.bind_assumptions = {{0, 1}};
    CHECK_FALSE(graft3.in_domain(build_inference(inf)));
  }

  SUBCASE("a closed source matches only its designated axiom leaf") {
    ArgStructure closed_d = axiom_p_to_q();
    Reduction graft4 = graft_reduction(closed_d);
    CHECK(graft4.in_domain(ArgStructure::axiom(at("q"))));
    CHECK_FALSE(graft4.in_domain(ArgStructure::assumption(at("q"))));
    CHECK_FALSE(graft4.in_domain(closed_d));
    CHECK(graft4.transform(ArgStructure::axiom(at("q"))) == closed_d);
  }

  SUBCASE("instances outside the domain are rejected") {
    ArgStructure dimparg = imp_intro(assume_p_to_q(), at("p"));
    CHECK_FALSE(graft.in_domain(one_step({dimparg}, at("q"))));
    CHECK_FALSE(graft.in_domain(
        one_step({dimparg, ArgStructure::axiom(at("q"))}, at("q"))));
    CHECK_FALSE(
        graft.in_domain(imp_intro_vacuous(ArgStructure::axiom(at("q")),
                                          at("p"))));
    CHECK_THROWS_AS(graft.transform(ArgStructure::axiom(at("q"))),
                    DomainError);

    // Duplicate premise conclusions never determine a match.
    Reduction gpq = graft_reduction(
        one_step({ArgStructure::assumption(at("p")),
                  ArgStructure::assumption(at("q"))},
                 at("r")));
    CHECK_FALSE(gpq.in_domain(one_step({ArgStructure::axiom(at("p")),
                                        ArgStructure::axiom(at("p"))},
                                       at("r"))));
  }

  SUBCASE("the rewrite laws hold on sampled instances") {
    auto sampler = [](std::mt19937& g) -> std::optional<ArgStructure> {
      auto coin = [&g](int n) { return static_cast<int>(g() % n); };
      auto make_imp_piece = [&]() -> ArgStructure {
        switch (coin(3)) {
          case 0:
            return imp_intro(assume_p_to_q(), at("p"));
          case 1:
            return imp_intro_vacuous(ArgStructure::axiom(at("q")), at("p"));
          default:
            return imp_intro_vacuous(
                one_step({ArgStructure::assumption(at("u"))}, at("q")),
                at("p"));
        }
      };
      auto make_p_piece = [&]() -> ArgStructure {
        switch (coin(3)) {
          case 0:
            return ArgStructure::axiom(at("p"));
          case 1:
            return one_step({ArgStructure::axiom(at("s"))}, at("p"));
          default:
            return one_step({ArgStructure::assumption(at("u"))}, at("p"));
        }
      };
      std::vector<ArgStructure> kids;
      if (coin(2) == 0) {
        kids.push_back(make_imp_piece());
        kids.push_back(make_p_piece());
      } else {
        kids.push_back(make_p_piece());
        kids.push_back(make_imp_piece());
      }
      return one_step(std::move(kids), at("q"));
    };
    auto rep = check_reduction_laws(graft, sampler, 80, 620260822u);
    CHECK(rep.passed);
    CHECK(rep.samples == 80);
  }
}

TEST_CASE("bounded rule validity") {
  Base bpq(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q")});
  ExtensionPool pool({AtomicRule::axiom("p")}, PoolParams{});
  ClosedArgCatalog cat;
  cat.add(at("p"), ArgStructure::axiom(at("p")), Justification{});
  cat.add(Formula::imp(at("p"), at("q")),
          imp_intro(assume_p_to_q(), at("p")), Justification{});

  SUBCASE("implication elimination under its contraction") {
    Justification jimp;
    jimp.add(std_red("phi_imp"));
    auto v = rule_valid_bounded({Formula::imp(at("p"), at("q")), at("p")},
                                at("q"), jimp, bpq, cat, pool);
    CHECK(v.is_valid());
    CHECK(v.bounds.rfind("rule validity", 0) == 0);
  }

  SUBCASE("the split rule under the two split rewrites") {
    FormulaPtr por = Formula::disj(at("q"), at("r"));
    ClosedArgCatalog scat;
    scat.add(at("p"), ArgStructure::axiom(at("p")), Justification{});
    scat.add(Formula::imp(at("p"), por),
             imp_intro(disj_intro(assume_p_to_q(), por), at("p")),
             Justification{});
    Justification jsplit;
    jsplit.add(std_red("phi1"));
    jsplit.add(std_red("phi2"));
    auto v = rule_valid_bounded(
        {Formula::imp(at("p"), por)},
        Formula::disj(Formula::imp(at("p"), at("q")),
                      Formula::imp(at("p"), at("r"))),
        jsplit, bpq, scat, pool);
    CHECK(v.is_valid());
  }

  SUBCASE("an unbacked rule is refuted and a premiss-free one rejected") {
    auto v = rule_valid_bounded({at("p")}, at("q"), Justification{}, Base{},
                                cat, pool);
    CHECK(v.is_invalid());
    CHECK_THROWS_AS(rule_valid_bounded({}, at("q"), Justification{}, Base{},
                                       cat, pool),
                    DomainError);
  }
}

TEST_CASE("the split pipeline: genuine discharge case") {
  Base c(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q")});
  FormulaPtr por = Formula::disj(at("q"), at("r"));
  FormulaPtr goal = Formula::disj(Formula::imp(at("p"), at("q")),
                                  Formula::imp(at("p"), at("r")));
  ArgStructure d1 = imp_intro(disj_intro(assume_p_to_q(), por), at("p"));

  SplitOutcome out = split_transform(d1, Justification{}, c);

  ArgStructure expected =
      disj_intro(imp_intro(assume_p_to_q(), at("p")), goal);
  CHECK(out.structure == expected);
  CHECK(out.used_detour);
  CHECK(is_closed(out.structure));
  CHECK(equal(out.structure.conclusion(), goal));
  REQUIRE(out.verdict.is_valid());

  // The trace replays from the one-step inference under the split-extended
  // justification, and nothing in the output is marked.
  Justification h;
  h.add(std_red("phi1"));
  h.add(std_red("phi2"));
  CHECK(out.pipeline.start == one_step({d1}, goal));
  REQUIRE(out.pipeline.steps.size() == 2);
  CHECK(out.pipeline.steps[0].rule == "phi1");
  CHECK(out.pipeline.steps[1].rule == "phi2");
  CHECK(verify_trace(out.pipeline, h));
  CHECK(out.pipeline.last() == out.structure);
  for (const auto& node : out.structure.nodes()) {
    CHECK_FALSE(node.marked);
  }
  CHECK_FALSE(out.structure.f().empty());

  SplitOutcome again = split_transform(d1, Justification{}, c);
  CHECK(again.structure == out.structure);
}

TEST_CASE("the split pipeline: vacuous discharge case") {
  Base c(std::vector<AtomicRule>{AtomicRule::axiom("q")});
  FormulaPtr por = Formula::disj(at("q"), at("r"));
  FormulaPtr goal = Formula::disj(Formula::imp(at("p"), at("q")),
                                  Formula::imp(at("p"), at("r")));
  ArgStructure d1 =
      imp_intro_vacuous(disj_intro(ArgStructure::axiom(at("q")), por),
                        at("p"));

  SplitOutcome out = split_transform(d1, Justification{}, c);

  ArgStructure expected = disj_intro(
      imp_intro_vacuous(ArgStructure::axiom(at("q")), at("p")), goal);
  CHECK(out.structure == expected);
  CHECK_FALSE(out.used_detour);
  REQUIRE(out.verdict.is_valid());
  REQUIRE(out.pipeline.steps.size() == 1);
  CHECK(out.pipeline.steps[0].rule == "phi2");
  Justification h;
  h.add(std_red("phi1"));
  h.add(std_red("phi2"));
  CHECK(verify_trace(out.pipeline, h));
  CHECK(out.pipeline.last() == out.structure);
}

TEST_CASE("the split pipeline: inner normalisation inside the detour") {
  // The disjunct witness contains a contractible detour; its reduction is
  // replayed inside the hosting structure at a shifted position.
  Base c(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q"),
                                 AtomicRule::axiom("t")});
  FormulaPtr por = Formula::disj(at("q"), at("r"));
  FormulaPtr goal = Formula::disj(Formula::imp(at("p"), at("q")),
                                  Formula::imp(at("p"), at("r")));
  ArgStructure redexq =
      one_step({imp_intro_vacuous(assume_p_to_q(), at("t")),
                ArgStructure::axiom(at("t"))},
               at("q"));
  ArgStructure d1 = imp_intro(disj_intro(redexq, por), at("p"));
  Justification jimp;
  jimp.add(std_red("phi_imp"));

  SplitOutcome out = split_transform(d1, jimp, c);

  ArgStructure expected =
      disj_intro(imp_intro(assume_p_to_q(), at("p")), goal);
  CHECK(out.structure == expected);
  CHECK(out.used_detour);
  REQUIRE(out.verdict.is_valid());
  REQUIRE(out.pipeline.steps.size() == 3);
  CHECK(out.pipeline.steps[0].rule == "phi1");
  CHECK(out.pipeline.steps[1].rule == "phi_imp");
  CHECK(out.pipeline.steps[1].position == 3);
  CHECK(out.pipeline.steps[2].rule == "phi2");
  Justification full = jimp;
  full.add(std_red("phi1"));
  full.add(std_red("phi2"));
  CHECK(verify_trace(out.pipeline, full));
  CHECK(out.pipeline.last() == out.structure);
}

TEST_CASE("the split pipeline: normalisation and preconditions") {
  Base cs(std::vector<AtomicRule>{AtomicRule::simple({"p"}, "q"),
                                  AtomicRule::axiom("s")});
  FormulaPtr por = Formula::disj(at("q"), at("r"));
  FormulaPtr goal = Formula::disj(Formula::imp(at("p"), at("q")),
                                  Formula::imp(at("p"), at("r")));
  ArgStructure d1 = imp_intro(disj_intro(assume_p_to_q(), por), at("p"));

  SUBCASE("a reducible input is normalised first") {
    ArgStructure wrapped =
        one_step({imp_intro_vacuous(d1, at("s")),
                  ArgStructure::axiom(at("s"))},
                 Formula::imp(at("p"), por));
    Justification jimp;
    jimp.add(std_red("phi_imp"));
    SplitOutcome out = split_transform(wrapped, jimp, cs);
    ArgStructure expected =
        disj_intro(imp_intro(assume_p_to_q(), at("p")), goal);
    CHECK(out.structure == expected);
    CHECK(out.pipeline.start == one_step({d1}, goal));
    CHECK(out.verdict.is_valid());
  }

  SUBCASE("open inputs are rejected") {
    CHECK_THROWS_WITH_AS(
        split_transform(ArgStructure::assumption(Formula::imp(at("p"), por)),
                        Justification{}, cs),
        "the split pipeline needs a closed argument", DomainError);
  }

  SUBCASE("conclusions of the wrong shape are rejected") {
    CHECK_THROWS_AS(
        split_transform(ArgStructure::axiom(at("p")), Justification{}, cs),
        DomainError);
    ArgStructure wrong_right = imp_intro_vacuous(
        conj_intro(ArgStructure::axiom(at("q")), ArgStructure::axiom(at("s"))),
        at("p"));
    CHECK_THROWS_AS(
        split_transform(wrong_right, Justification{},
                        Base(std::vector<AtomicRule>{
                            AtomicRule::axiom("q"), AtomicRule::axiom("s")})),
        DomainError);
    ArgStructure wrong_left = imp_intro_vacuous(
        disj_intro(ArgStructure::axiom(at("q")), por), Formula::neg(at("p")));
    CHECK_THROWS_AS(split_transform(wrong_left, Justification{}, cs),
                    DomainError);
  }

  SUBCASE("an invalid or stuck premise is a precondition violation") {
    ArgStructure vac =
        imp_intro_vacuous(disj_intro(ArgStructure::axiom(at("q")), por),
                          at("p"));
    CHECK_THROWS_AS(split_transform(vac, Justification{}, Base{}),
                    DomainError);
    ArgStructure stuck =
        one_step({ArgStructure::axiom(at("s"))}, Formula::imp(at("p"), por));
    CHECK_THROWS_AS(
        split_transform(stuck, Justification{},
                        Base(std::vector<AtomicRule>{AtomicRule::axiom("s")})),
        DomainError);
  }
}

TEST_CASE("validity verdicts replay and grow monotonically") {
  Base b(std::vector<AtomicRule>{AtomicRule::axiom("p"),
                                 AtomicRule::simple({"p"}, "q")});
  Justification jimp;
  jimp.add(std_red("phi_imp"));

  struct Fixture {
    ArgStructure d;
    Justification j;
  };
  std::vector<Fixture> fixtures;
  fixtures.push_back({axiom_p_to_q(), Justification{}});
  fixtures.push_back({one_step({imp_intro(assume_p_to_q(), at("p")),
                                ArgStructure::axiom(at("p"))},
                               at("q")),
                      jimp});
  fixtures.push_back(
      {disj_intro(axiom_p_to_q(), Formula::disj(at("q"), at("r"))),
       Justification{}});
  fixtures.push_back({imp_intro(assume_p_to_q(), at("p")), Justification{}});

  ExtensionPool mpool({AtomicRule::axiom("s"), AtomicRule::axiom("t")},
                      PoolParams{});
  Justification all(standard_reductions());

  for (const Fixture& fx : fixtures) {
    auto v = valid_closed(fx.d, fx.j, b);
    REQUIRE(v.is_valid());
    if (v.trace.has_value()) {
      CHECK(verify_trace(*v.trace, fx.j));
      CHECK(v.trace->start == fx.d);
    }
    if (v.witness.has_value()) {
      CHECK(check_derivation(*v.witness, {}, b).ok);
    }

    // Determinism.
    auto v2 = valid_closed(fx.d, fx.j, b);
    CHECK(v2.reason == v.reason);
    if (v.trace.has_value()) {
      REQUIRE(v2.trace.has_value());
      CHECK(v2.trace->last() == v.trace->last());
    }

    // Growing the justification preserves the verdict.
    Justification jext = fx.j;
    jext.add(std_red("iota"));
    CHECK(valid_closed(fx.d, jext, b).is_valid());
    CHECK(valid_closed(fx.d, all, b).is_valid());

    // Growing the base within a pool preserves the verdict.
    for (const auto& subset : pool_subsets(mpool)) {
      CHECK(valid_closed(fx.d, fx.j, pool_extension(b, mpool, subset))
                .is_valid());
    }
  }

  // With a catalog the open-body clause genuinely quantifies, and base
  // growth inside the pool still preserves the verdict.
  ValidityOptions wb;
  wb.catalog.add(at("p"), ArgStructure::axiom(at("p")), Justification{});
  wb.pool = ExtensionPool({AtomicRule::axiom("p")}, PoolParams{});
  ArgStructure dimp = imp_intro(assume_p_to_q(), at("p"));
  REQUIRE(valid_closed(dimp, Justification{}, b, wb).is_valid());
  for (const auto& subset : pool_subsets(wb.pool)) {
    CHECK(valid_closed(dimp, Justification{},
                       pool_extension(b, wb.pool, subset), wb)
              .is_valid());
  }
}

TEST_CASE("catalog entries are validated and retrievable") {
  ClosedArgCatalog cc;
  CHECK_THROWS_AS(
      cc.add(at("p"), ArgStructure::assumption(at("p")), Justification{}),
      ValidationError);
  CHECK_THROWS_AS(cc.add(at("q"), ArgStructure::axiom(at("p")),
                         Justification{}),
                  ValidationError);
  CHECK(cc.empty());
  cc.add(at("p"), ArgStructure::axiom(at("p")), Justification{});
  cc.add(at("p"), one_step({ArgStructure::axiom(Formula::bottom())}, at("p")),
         Justification{});
  CHECK(cc.size() == 2);
  CHECK(cc.entries_for(at("p")).size() == 2);
  CHECK(cc.entries_for(at("q")).empty());
}
