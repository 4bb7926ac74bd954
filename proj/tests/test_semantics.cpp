#include <doctest.h>

#include "ccp/errors.hpp"
#include "support.hpp"

using namespace ccp;

TEST_SUITE("semantics") {

TEST_CASE("reduction rules") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  auto cfg = [&](const char* text) {
    return parse_config(text, ws.resolver(), ws.cs, ws.pool);
  };

  // tell joins the store and terminates
  CHECK(reduce(cfg("<tell(y=1), z<5&x<5>"), ws.cs, ws.pool) ==
        std::vector<Configuration>{cfg("<stop, z<5&x<5&y=1>")});
  // stop has no moves
  CHECK(reduce(cfg("<stop, false>"), ws.cs, ws.pool).empty());
  // a blocked ask has no moves
  CHECK(reduce(cfg("<ask(x<7) -> tell(true), z<5>"), ws.cs, ws.pool).empty());
  // an enabled ask proceeds without changing the store
  CHECK(reduce(cfg("<ask(x<7) -> tell(true), x<5>"), ws.cs, ws.pool) ==
        std::vector<Configuration>{cfg("<tell(true), x<5>")});
  // choice commits, parallel keeps the rest
  CHECK(reduce(cfg("<tell(x<5) + tell(z<5), true>"), ws.cs, ws.pool).size() == 2);
  CHECK(reduce(cfg("<tell(x<5) || tell(z<5), true>"), ws.cs, ws.pool) ==
        std::vector<Configuration>{cfg("<stop || tell(z<5), x<5>"),
                                   cfg("<tell(x<5) || stop, z<5>")});
}

TEST_CASE("labeled steps of the running example") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  auto cfg = [&](const char* text) {
    return parse_config(text, ws.resolver(), ws.cs, ws.pool);
  };

  // <P+Q, z<5> moves on x<7 and on x<5
  Configuration pq = cfg("<P + Q, z<5>");
  std::vector<Transition> steps = labeled_steps(pq, ws.cs, ws.pool);
  REQUIRE(steps.size() == 2);
  CHECK(ccptest::contains(steps, Transition{pq, *ws.cs.find("x<7"), cfg("<T, z<5&x<7>")}));
  CHECK(ccptest::contains(steps, Transition{pq, *ws.cs.find("x<5"), cfg("<T, z<5&x<5>")}));

  // tell emits a true-labeled step
  Configuration t = cfg("<tell(y=1), z<5>");
  CHECK(labeled_steps(t, ws.cs, ws.pool) ==
        std::vector<Transition>{{t, ws.cs.true_id(), cfg("<stop, z<5&y=1>")}});

  CHECK(labeled_steps(cfg("<stop, true>"), ws.cs, ws.pool).empty());
}

TEST_CASE("barbs") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  auto cfg = [&](const char* text) {
    return parse_config(text, ws.resolver(), ws.cs, ws.pool);
  };
  CHECK(satisfies_barb(cfg("<stop, x<5>"), *ws.cs.find("x<7"), ws.cs));
  CHECK_FALSE(satisfies_barb(cfg("<stop, x<7>"), *ws.cs.find("x<5"), ws.cs));
  CHECK(satisfies_barb(cfg("<stop, z<5>"), ws.cs.true_id(), ws.cs));
  for (std::uint32_t e = 0; e < ws.cs.size(); ++e) {
    CHECK(satisfies_barb(cfg("<P, false>"), ConstraintId{e}, ws.cs));
  }
  CHECK(barb_store(cfg("<P, z<7>")) == *ws.cs.find("z<7"));
}

TEST_CASE("reachable state space") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  auto cfg = [&](const char* text) {
    return parse_config(text, ws.resolver(), ws.cs, ws.pool);
  };
  StepFn step = labeled_step_fn(ws.cs, ws.pool);

  Lts trivial = reachable({cfg("<stop, true>")}, step, 100);
  CHECK(trivial.states.size() == 1);
  CHECK(trivial.transitions.empty());

  Lts fig1 = reachable({cfg("<R' + S, true>"), cfg("<S, true>"), cfg("<R + S, true>")}, step,
                       10'000);
  CHECK(fig1.states.size() == 14);
  CHECK(fig1.transitions.size() == 14);
  CHECK(fig1.kind == LtsKind::Plain);

  CHECK_THROWS_AS(reachable(fig1.initials, step, 5), StateCapExceeded);
}

TEST_CASE("two labeled steps then stop (fig2 shape)") {
  Workspace ws = ccptest::load_fixture("fig2.ccp");
  Configuration a0 = ws.configs.at("a0");
  Lts lts = reachable({a0}, labeled_step_fn(ws.cs, ws.pool), 100);
  CHECK(lts.states.size() == 3);
  CHECK(lts.transitions.size() == 2);
}

TEST_CASE("store monotonicity and true-step agreement on random programs") {
  std::mt19937 rng(23);
  for (const ConstraintSystem& cs : ccptest::lattice_pool()) {
    TermPool pool;
    for (int i = 0; i < 40; ++i) {
      Configuration gamma = ccptest::random_config(rng, cs, pool);
      Lts lts = reachable({gamma}, labeled_step_fn(cs, pool), 10'000);
      for (const Transition& t : lts.transitions) {
        REQUIRE(cs.leq(t.source.store, t.target.store));
      }
      // true-labeled steps coincide with the reduction relation
      for (const Configuration& g : lts.states) {
        std::vector<Configuration> viaLabel;
        for (const Transition& t : labeled_steps(g, cs, pool)) {
          if (t.label == cs.true_id()) viaLabel.push_back(t.target);
        }
        REQUIRE(viaLabel == reduce(g, cs, pool));
      }
    }
  }
}

TEST_CASE("labeled semantics is sound and complete on random programs") {
  std::mt19937 rng(29);
  for (const ConstraintSystem& cs : ccptest::lattice_pool()) {
    TermPool pool;
    for (int i = 0; i < 25; ++i) {
      Configuration gamma = ccptest::random_config(rng, cs, pool);
      for (const Configuration& g :
           reachable({gamma}, labeled_step_fn(cs, pool), 10'000).states) {
        REQUIRE(ccptest::labeled_soundness_violations(g, cs, pool) == 0);
        REQUIRE(ccptest::labeled_completeness_violations(g, cs, pool) == 0);
      }
    }
  }
}

TEST_CASE("weak barb sets") {
  Workspace ws = ccptest::load_fixture("running.ccp");
  auto cfg = [&](const char* text) {
    return parse_config(text, ws.resolver(), ws.cs, ws.pool);
  };
  StepFn step = labeled_step_fn(ws.cs, ws.pool);

  // <tell(y=1), true> can reach a store entailing y=1
  {
    Configuration g = cfg("<tell(y=1), true>");
    Lts sat = saturate_lub(reachable({g}, step, 100), ws.cs);
    std::vector<bool> barbs = weak_barb_set(g, sat, ws.cs);
    CHECK(barbs[ws.cs.find("y=1")->index]);
    CHECK(barbs[ws.cs.true_id().index]);
  }
  // stop keeps exactly the down-set of its store
  {
    Configuration g = cfg("<stop, z<5>");
    Lts sat = saturate_lub(reachable({g}, step, 100), ws.cs);
    CHECK(weak_barb_set(g, sat, ws.cs) == ws.cs.down_set(*ws.cs.find("z<5")));
  }
  // At store true neither branch of the running example can reduce, so both
  // initial configurations have only the trivial weak barb; the y=1
  // difference shows up once x<5 and z<5 are available.
  {
    Lts sat = saturate_lub(
        reachable({cfg("<R' + S, true>"), cfg("<R + S, true>"), cfg("<P + Q', x<5&z<5>"),
                   cfg("<P + Q, x<5&z<5>")},
                  step, 10'000),
        ws.cs);
    CHECK(weak_barb_set(cfg("<R' + S, true>"), sat, ws.cs) ==
          weak_barb_set(cfg("<R + S, true>"), sat, ws.cs));
    std::vector<bool> rich = weak_barb_set(cfg("<P + Q', x<5&z<5>"), sat, ws.cs);
    std::vector<bool> poor = weak_barb_set(cfg("<P + Q, x<5&z<5>"), sat, ws.cs);
    CHECK(rich[ws.cs.find("y=1")->index]);
    CHECK_FALSE(poor[ws.cs.find("y=1")->index]);
  }
}

}
