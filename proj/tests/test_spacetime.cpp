#include <cmath>

#include "doctest.h"
#include "kcausal/spacetime.hpp"
#include "support/testutil.hpp"

using kcausal::Event;
using kcausal::EventSet;
using kcausal::GridScheme;
using kcausal::ModelKind;
using kcausal::RandomScheme;
using kcausal::Region;
using kcausal::RelKind;
using kcausal::SpacetimeModel;
using kcausal::errc;
using testutil::thrown_code;

TEST_CASE("model parsing: defaults and round-trips") {
  const SpacetimeModel flat = kcausal::make_model("minkowski");
  CHECK(flat.kind == ModelKind::minkowski);
  CHECK(flat.region == Region{0.0, 4.0, -2.0, 2.0});

  const SpacetimeModel mp = kcausal::make_model("minus-points");
  REQUIRE(mp.removed_points.size() == 1);
  CHECK(mp.removed_points[0] == Event{2.0, 0.0});

  const SpacetimeModel ms = kcausal::make_model("minus-segment");
  REQUIRE(ms.removed_segment.has_value());
  CHECK(ms.removed_segment->a == Event{2.0, -0.5});
  CHECK(ms.removed_segment->b == Event{2.0, 0.5});

  const SpacetimeModel cyl = kcausal::make_model("cylinder");
  CHECK(cyl.period == 1.0);
  CHECK(cyl.region == Region{0.0, 1.0, -1.0, 1.0});

  const SpacetimeModel cyl2 = kcausal::make_model("cylinder:period=2.5:region=0,2.5,-1,1");
  CHECK(cyl2.period == 2.5);

  for (const char* spec :
       {"minkowski", "minkowski:region=-1,1,-3,3", "minus-points:region=0,2,-1,1:remove=1,0",
        "minus-points:remove=1.5,-0.25:remove=2.5,0.25", "minus-segment:a=2,-0.75:b=2.25,0.75",
        "cylinder", "cylinder:period=2:region=0,2,-4,4"}) {
    const SpacetimeModel m = kcausal::make_model(spec);
    CHECK(kcausal::make_model(kcausal::model_spec(m)) == m);
  }
}

TEST_CASE("model parsing: malformed specs are rejected") {
  auto rejects = [](const std::string& spec) {
    const auto code = thrown_code([&] { kcausal::make_model(spec); });
    return code.has_value() && *code == errc::malformed_spec;
  };
  CHECK(rejects(""));
  CHECK(rejects("torus"));
  CHECK(rejects("minkowski:region=0,4"));          // wrong arity
  CHECK(rejects("minkowski:region=0,4,-2,two"));   // bad number
  CHECK(rejects("minkowski:radius=1"));            // unknown key
  CHECK(rejects("minkowski:remove=2,0"));          // removed set on the flat model
  CHECK(rejects("minkowski:a=1,0:b=1,1"));         // segment keys off minus-segment
  CHECK(rejects("minkowski:region=1,1,-2,2"));     // degenerate region
  CHECK(rejects("minus-points:remove=9,0"));       // removed point outside region
  CHECK(rejects("minus-segment:a=1,0:b=3,0.5"));   // timelike segment
  CHECK(rejects("minus-segment:a=2,-0.5"));        // one endpoint only
  CHECK(rejects("cylinder:period=0"));
  CHECK(rejects("cylinder:period=1:region=0,2,-1,1"));  // chart longer than the period
}

TEST_CASE("grid sampling spans the region and records its scheme") {
  const EventSet es = kcausal::sample(kcausal::make_model("minkowski"), GridScheme{3, 3});
  REQUIRE(es.size() == 9);
  CHECK(es.events.front() == Event{0.0, -2.0});
  CHECK(es.events[4] == Event{2.0, 0.0});
  CHECK(es.events.back() == Event{4.0, 2.0});
  CHECK(es.scheme.kind == "grid");
  CHECK(es.scheme.m_t == 3);
  CHECK(es.scheme.m_x == 3);
  CHECK(es.scheme.jitter == 0.0);
  CHECK_FALSE(es.scheme.seed.has_value());
  CHECK(es.scheme.algorithm.empty());
  CHECK(es.scheme.skipped_sites.empty());
  CHECK(kcausal::scheme_string(es.scheme) == "grid:3x3");

  const EventSet single = kcausal::sample(kcausal::make_model("minkowski"), GridScheme{1, 1});
  REQUIRE(single.size() == 1);
  CHECK(single.events[0] == Event{2.0, 0.0});  // region midpoint
}

TEST_CASE("grid sites over removed points are skipped and recorded") {
  const SpacetimeModel m = kcausal::make_model("minus-points:region=0,2,-1,1:remove=1,0");
  const EventSet es = kcausal::sample(m, GridScheme{3, 3});
  REQUIRE(es.size() == 8);
  CHECK(es.scheme.skipped_sites == std::vector<int>{4});
  const std::vector<Event> expected{{0, -1}, {0, 0}, {0, 1}, {1, -1},
                                    {1, 1},  {2, -1}, {2, 0}, {2, 1}};
  CHECK(es.events == expected);
  CHECK(kcausal::scheme_string(es.scheme) == "grid:3x3:skipped=1");
}

TEST_CASE("jittered grids stay inside the region and need a seed") {
  const SpacetimeModel m = kcausal::make_model("minkowski");
  {
    const auto code = thrown_code([&] { kcausal::sample(m, GridScheme{4, 4, 0.01}); });
    REQUIRE(code.has_value());
    CHECK(*code == errc::seed_required);
  }
  {
    // half the spacing of a 4x4 grid over a 4-unit extent is 0.5
    const auto code = thrown_code([&] { kcausal::sample(m, GridScheme{4, 4, 0.6, 7}); });
    REQUIRE(code.has_value());
    CHECK(*code == errc::malformed_spec);
  }
  const EventSet es = kcausal::sample(m, GridScheme{4, 4, 0.05, 7});
  CHECK(es.size() == 16);
  for (const Event& e : es.events) CHECK(m.region.contains(e));
  CHECK(es.scheme.algorithm == kcausal::kRngAlgorithm);
  CHECK(kcausal::scheme_string(es.scheme) == "grid:4x4:jitter=0.05:seed=7");
  // same seed, same events
  CHECK(kcausal::sample(m, GridScheme{4, 4, 0.05, 7}) == es);
  CHECK_FALSE(kcausal::sample(m, GridScheme{4, 4, 0.05, 8}) == es);
}

TEST_CASE("random sampling is seeded, reproducible, and avoids removed sets") {
  const SpacetimeModel m = kcausal::make_model("minus-points");
  {
    const auto code = thrown_code([&] { kcausal::sample(m, RandomScheme{10}); });
    REQUIRE(code.has_value());
    CHECK(*code == errc::seed_required);
  }
  const EventSet es = kcausal::sample(m, RandomScheme{25, 42});
  CHECK(es.size() == 25);
  for (const Event& e : es.events) {
    CHECK(m.region.contains(e));
    CHECK_FALSE(m.on_removed_set(e));
  }
  CHECK(es.scheme.kind == "random");
  CHECK(es.scheme.n == 25);
  CHECK(es.scheme.algorithm == kcausal::kRngAlgorithm);
  CHECK(kcausal::scheme_string(es.scheme) == "random:n=25:seed=42");
  CHECK(kcausal::sample(m, RandomScheme{25, 42}) == es);
}

TEST_CASE("explicit event sets are validated against the model") {
  const SpacetimeModel m = kcausal::make_model("minus-points");
  const EventSet es = kcausal::make_event_set(m, {{1.0, 0.0}, {3.0, 0.5}});
  CHECK(es.size() == 2);
  CHECK(es.scheme.kind == "explicit");
  {
    const auto code = thrown_code([&] { kcausal::make_event_set(m, {{5.0, 0.0}}); });
    REQUIRE(code.has_value());
    CHECK(*code == errc::event_outside_region);
  }
  {
    const auto code = thrown_code([&] { kcausal::make_event_set(m, {{2.0, 0.0}}); });
    REQUIRE(code.has_value());
    CHECK(*code == errc::event_outside_region);  // sits on the removed point
  }
}

TEST_CASE("flat-cone membership: timelike, null, spacelike, past") {
  const SpacetimeModel m = kcausal::make_model("minkowski");
  const Event o{1.0, 0.0};
  const Event timelike{2.0, 0.5}, null{2.0, 1.0}, spacelike{1.5, 1.0}, past{0.0, 0.0};
  CHECK(kcausal::oracle(m, RelKind::chrono, o, timelike));
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, o, null));
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, o, spacelike));
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, o, past));
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, o, o));  // irreflexive
  for (RelKind k : {RelKind::causal, RelKind::k_hull}) {
    CHECK(kcausal::oracle(m, k, o, timelike));
    CHECK(kcausal::oracle(m, k, o, null));
    CHECK_FALSE(kcausal::oracle(m, k, o, spacelike));
    CHECK_FALSE(kcausal::oracle(m, k, o, past));
    CHECK(kcausal::oracle(m, k, o, o));  // reflexive
  }
  const auto code =
      thrown_code([&] { kcausal::oracle(m, RelKind::chrono, Event{9.0, 0.0}, o); });
  REQUIRE(code.has_value());
  CHECK(*code == errc::event_outside_region);
}

TEST_CASE("exact slack sign survives cancellation that zeroes the double slack") {
  // Three events from a 20x20 lattice over [0,4]x[-2,2]. Each hop beats the
  // light cone by about one ulp; over the composed span the two double
  // subtractions cancel to exactly 0.0, so a double-slack chronology would
  // violate transitivity here. The expansion-arithmetic sign does not.
  const Event p{0.63157894736842102, -1.7894736842105263};
  const Event q{2.3157894736842106, -0.10526315789473695};
  const Event r{3.1578947368421053, 0.73684210526315752};
  CHECK(kcausal::cone_slack(p, q) > 0.0);
  CHECK(kcausal::cone_slack(q, r) > 0.0);
  CHECK(kcausal::cone_slack(p, r) == 0.0);  // the rounded slack lies
  CHECK(kcausal::cone_slack_sign(p, q) == 1);
  CHECK(kcausal::cone_slack_sign(q, r) == 1);
  CHECK(kcausal::cone_slack_sign(p, r) == 1);  // truly timelike end to end
  const SpacetimeModel m = kcausal::make_model("minkowski");
  CHECK(kcausal::oracle(m, RelKind::chrono, p, q));
  CHECK(kcausal::oracle(m, RelKind::chrono, q, r));
  CHECK(kcausal::oracle(m, RelKind::chrono, p, r));

  // Plain exact cases on integer coordinates.
  CHECK(kcausal::cone_slack_sign(Event{0, 0}, Event{1, 1}) == 0);
  CHECK(kcausal::cone_slack_sign(Event{0, 0}, Event{1, -1}) == 0);
  CHECK(kcausal::cone_slack_sign(Event{0, 0}, Event{2, 1}) == 1);
  CHECK(kcausal::cone_slack_sign(Event{0, 0}, Event{1, 2}) == -1);
  CHECK(kcausal::cone_slack_sign(Event{1, 1}, Event{0, 0}) == -1);
}

TEST_CASE("deleted points cut null geodesics but not timelike or hull relations") {
  const SpacetimeModel m = kcausal::make_model("minus-points:region=0,2,-1,1:remove=1,0");
  const Event a{0.0, -1.0}, b{2.0, 1.0};  // null chord through the deleted point
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, a, b));
  CHECK_FALSE(kcausal::oracle(m, RelKind::causal, a, b));
  CHECK(kcausal::oracle(m, RelKind::k_hull, a, b));
  // A null chord missing the deleted point stays causal.
  CHECK(kcausal::oracle(m, RelKind::causal, Event{0.0, 0.0}, Event{1.0, 1.0}));
  // Timelike pairs dodge a point no matter where it sits.
  CHECK(kcausal::oracle(m, RelKind::chrono, Event{0.0, 0.0}, Event{2.0, 0.5}));
  CHECK(kcausal::oracle(m, RelKind::causal, Event{0.0, 0.0}, Event{2.0, 0.5}));
}

TEST_CASE("deleted spacelike segment blocks narrow causal diamonds only") {
  const SpacetimeModel m = kcausal::make_model("minus-segment");  // t=2, x in [-0.5,0.5]
  const Event below{1.9, 0.0}, above{2.1, 0.0};
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, below, above));
  CHECK_FALSE(kcausal::oracle(m, RelKind::causal, below, above));
  // A wide diamond reaches around the segment's endpoints.
  CHECK(kcausal::oracle(m, RelKind::chrono, Event{1.0, 0.0}, Event{3.0, 0.0}));
  CHECK(kcausal::oracle(m, RelKind::causal, Event{1.0, 0.0}, Event{3.0, 0.0}));
  // Pairs on one side of the segment's line are untouched.
  CHECK(kcausal::oracle(m, RelKind::causal, Event{0.5, 0.0}, Event{1.5, 0.0}));
  CHECK(kcausal::oracle(m, RelKind::causal, above, above));
  const auto code = thrown_code([&] { kcausal::oracle(m, RelKind::k_hull, below, above); });
  REQUIRE(code.has_value());
  CHECK(*code == errc::unsupported_oracle);
}

TEST_CASE("time-periodic chart relates every distinct pair chronologically") {
  const SpacetimeModel m = kcausal::make_model("cylinder");
  const Event a{0.2, 0.3}, b{0.9, 0.3};
  CHECK(kcausal::oracle(m, RelKind::chrono, a, b));
  CHECK(kcausal::oracle(m, RelKind::chrono, b, a));  // wind backwards through t ~ t+1
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, a, a));
  // Chart times one full period apart name the same event.
  CHECK_FALSE(kcausal::oracle(m, RelKind::chrono, Event{0.0, 0.5}, Event{1.0, 0.5}));
  // Only x must stay in chart; t wraps.
  CHECK(kcausal::oracle(m, RelKind::chrono, Event{5.3, 0.0}, a));
  const auto code = thrown_code([&] { kcausal::oracle(m, RelKind::causal, a, b); });
  REQUIRE(code.has_value());
  CHECK(*code == errc::unsupported_oracle);
}

TEST_CASE("chart distance wraps time on the periodic model") {
  const SpacetimeModel flat = kcausal::make_model("minkowski");
  CHECK(kcausal::chart_distance(flat, Event{0, 0}, Event{3, 4}) == doctest::Approx(5.0));
  const SpacetimeModel cyl = kcausal::make_model("cylinder");
  CHECK(kcausal::chart_distance(cyl, Event{0.1, 0.0}, Event{0.9, 0.0}) ==
        doctest::Approx(0.2));
}

TEST_CASE("clearance measures boundary and removed-set proximity") {
  const SpacetimeModel flat = kcausal::make_model("minkowski");
  CHECK(kcausal::clearance(flat, Event{2, 0}) == doctest::Approx(2.0));
  CHECK(kcausal::clearance(flat, Event{0.5, 1.8}) == doctest::Approx(0.2));
  const SpacetimeModel mp = kcausal::make_model("minus-points");
  CHECK(kcausal::clearance(mp, Event{2.5, 0.0}) == doctest::Approx(0.5));
  const SpacetimeModel cyl = kcausal::make_model("cylinder");
  // No time boundary on the cylinder: only the x-sides count.
  CHECK(kcausal::clearance(cyl, Event{0.0, 0.0}) == doctest::Approx(1.0));
}

TEST_CASE("default radius and margin interiors on reference lattices") {
  const SpacetimeModel m = kcausal::make_model("minkowski");
  const EventSet es20 = kcausal::sample(m, GridScheme{20, 20});
  const double r = kcausal::default_radius(es20);
  CHECK(r == 2.0 * kcausal::max_nearest_neighbor_distance(es20));
  CHECK(r == doctest::Approx(2.0 * 4.0 / 19.0).epsilon(1e-12));
  CHECK(kcausal::margin_interior(es20, kcausal::default_margin(r)).count() == 100);

  const EventSet es10 = kcausal::sample(m, GridScheme{10, 10});
  const double r10 = kcausal::default_radius(es10);
  CHECK(kcausal::margin_interior(es10, kcausal::default_margin(r10)).none());

  const auto code = thrown_code([&] {
    kcausal::default_radius(kcausal::make_event_set(m, {{1.0, 0.0}}));
  });
  REQUIRE(code.has_value());
  CHECK(*code == errc::malformed_spec);
}

TEST_CASE("ball topology includes exact-radius neighbours and is discrete inside lattices") {
  const SpacetimeModel m = kcausal::make_model("minkowski:region=0,2,0,2");
  const EventSet es = kcausal::sample(m, GridScheme{3, 3});  // unit spacing
  // radius == spacing: the 4-neighbours sit exactly on the ball boundary and
  // the one-sided inflation keeps them in.
  const kcausal::FiniteTopology t1 = kcausal::ball_topology(es, 1.0);
  CHECK(t1.generators()[4].count() == 5);  // centre + 4-neighbourhood
  CHECK(t1.generators()[4].test(1));
  CHECK_FALSE(t1.generators()[4].test(0));  // diagonal at sqrt(2)

  // At twice the spacing (the default-radius shape) minimal neighbourhoods
  // collapse to singletons away from the boundary: balls centred two steps
  // away contain the centre but not its neighbours.
  const EventSet es5 =
      kcausal::sample(kcausal::make_model("minkowski:region=0,4,0,4"), GridScheme{5, 5});
  const kcausal::FiniteTopology t2 = kcausal::ball_topology(es5, 2.0);
  CHECK(t2.min_nbhd(12) == kcausal::PointSet::singleton(25, 12));

  const auto code = thrown_code([&] { kcausal::ball_topology(es, 0.0); });
  REQUIRE(code.has_value());
  CHECK(*code == errc::malformed_spec);
}

TEST_CASE("relation matrices agree with the membership predicate") {
  const SpacetimeModel m = kcausal::make_model("minkowski");
  const EventSet es = kcausal::sample(m, GridScheme{4, 4});
  for (RelKind k : {RelKind::chrono, RelKind::causal, RelKind::k_hull}) {
    const kcausal::Rel rel = kcausal::oracle_relation(es, k);
    for (int i = 0; i < es.size(); ++i) {
      for (int j = 0; j < es.size(); ++j) {
        CHECK(rel.test(i, j) == kcausal::oracle(m, k, es.events[i], es.events[j]));
      }
    }
  }
}
