#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "crm/io.hpp"
#include "crm/orbit.hpp"
#include "support.hpp"

using namespace crm;
using crm::testing::fixture;

namespace {

struct FinalExample : ::testing::Test {
  SpaceDef space = load_space(fixture("final_example.json"));
  MapSpec map = load_map(fixture("final_example_map.json"));

  OrbitTrace fixed_horizon(std::size_t h) const {
    PicardOptions po;
    po.max_iter = h;
    po.min_iter = h;
    return picard(space, map, Point::numeric(2.0), po);
  }
};

struct Cycle : ::testing::Test {
  SpaceDef space = load_space(fixture("three_cycle.json"));
  MapSpec map = load_map(fixture("three_cycle_map.json"));
  OrbitTrace trace = picard(space, map, Point::symbol("a"), {1e-9, 30, 0});
};

double closed_form_step(std::size_t n) {
  const double a = std::pow(2.0, 1.0 / std::pow(2.0, static_cast<double>(n)));
  const double b = std::pow(2.0, 1.0 / std::pow(2.0, static_cast<double>(n + 1)));
  return (a - b) * (a - b);
}

}  // namespace

TEST_F(FinalExample, OrbitFromTwo) {
  const auto t = picard(space, map, Point::numeric(2.0), {1e-8, 60, 0});
  ASSERT_GE(t.points.size(), 4u);
  EXPECT_NEAR(*t.points[1].value, 1.414214, 1e-6);
  EXPECT_NEAR(*t.points[2].value, 1.189207, 1e-6);
  EXPECT_NEAR(*t.points[3].value, 1.090508, 1e-6);
  EXPECT_EQ(t.stop_reason, StopReason::eps_reached);
  ASSERT_TRUE(t.fixed_point);
  EXPECT_LE(space.distance(*t.fixed_point, Point::numeric(1.0)), 1e-8);
  EXPECT_LE(t.iterations(), 60u);
}

TEST_F(FinalExample, StepDistancesMatchClosedForm) {
  const auto t = picard(space, map, Point::numeric(2.0), {1e-8, 60, 0});
  for (std::size_t n = 0; n < t.step_dists.size(); ++n) EXPECT_NEAR(t.step_dists[n], closed_form_step(n), 1e-12) << n;
  EXPECT_NEAR(t.step_dists[0], 0.343146, 1e-6);
  EXPECT_NEAR(t.step_dists[1], 0.050628, 1e-6);
  EXPECT_NEAR(t.step_dists[2], 0.009741, 1e-6);
}

TEST_F(FinalExample, OrbitConsistency) {
  const auto t = fixed_horizon(40);
  for (std::size_t n = 0; n + 1 < t.points.size(); ++n) {
    EXPECT_EQ(space.distance(t.points[n + 1], apply(space, map, t.points[n])), 0.0);
  }
}

TEST_F(FinalExample, StartAtFixedPointStopsImmediately) {
  const auto t = picard(space, map, Point::numeric(1.0));
  EXPECT_EQ(t.stop_reason, StopReason::fixed_point_reached);
  EXPECT_EQ(t.iterations(), 1u);
  EXPECT_DOUBLE_EQ(*t.fixed_point->value, 1.0);
  EXPECT_EQ(t.step_dists[0], 0.0);
}

TEST_F(FinalExample, DecayAtRateOneHalf) {
  const auto t = picard(space, map, Point::numeric(2.0), {1e-8, 60, 0});
  const auto r = decay_check(t, 0.5);
  EXPECT_TRUE(r.holds);
  EXPECT_FALSE(r.first_failure);
  EXPECT_NEAR(*t.decay_ratios[0], 0.1475, 1e-4);
  EXPECT_NEAR(*t.decay_ratios[1], 0.1924, 1e-4);
}

TEST_F(FinalExample, SkipDistancesVanish) {
  const auto t = fixed_horizon(32);
  EXPECT_LT(t.skip_dists[25], 1e-6);
  EXPECT_TRUE(skip_check(t, 1e-6).holds);
}

TEST_F(FinalExample, CauchyTailBelowTolerance) {
  const auto t = fixed_horizon(40);
  const auto r = cauchy_probe(space, t, 1e-4);
  EXPECT_TRUE(r.holds);
  EXPECT_LT(r.tail_max, 1e-4);
  EXPECT_EQ(r.tail_begin, 20u);
}

TEST_F(FinalExample, CauchyTailMonotoneInHorizon) {
  double previous = INFINITY;
  for (std::size_t h : {16u, 32u, 64u}) {
    const auto r = cauchy_probe(space, fixed_horizon(h), 1e-9);
    EXPECT_LE(r.tail_max, previous) << h;
    previous = r.tail_max;
  }
}

TEST_F(FinalExample, AprioriRowsAreInformational) {
  const auto t = picard(space, map, Point::numeric(2.0), {1e-8, 60, 0});
  const auto r = apriori_bound(space, t, 0.5);
  EXPECT_FALSE(r.applicable);
  ASSERT_EQ(r.rows.size(), t.points.size());
  const double z = *t.fixed_point->value;
  for (const auto& row : r.rows) {
    const double x = std::pow(2.0, 1.0 / std::pow(2.0, static_cast<double>(row.n)));
    EXPECT_NEAR(row.distance_to_fixed, (x - z) * (x - z), 1e-12);
    EXPECT_NEAR(row.bound, std::pow(0.5, static_cast<double>(row.n)) / 0.5 * closed_form_step(0), 1e-12);
  }
}

TEST_F(FinalExample, UniqueFixedPointFromFourStarts) {
  const std::array<Point, 4> starts{*space.lookup("2"), *space.lookup("1.5"), *space.lookup("1/3"),
                                    *space.lookup("1/5")};
  const auto r = uniqueness_probe(space, map, starts, 1e-8, 60);
  EXPECT_TRUE(r.unique);
  ASSERT_EQ(r.fixed_points.size(), 1u);
  for (const auto& s : r.starts) {
    EXPECT_TRUE(s.converged);
    EXPECT_LE(s.iterations, 60u);
    EXPECT_LE(space.distance(*s.fixed_point, Point::numeric(1.0)), 1e-8);
  }
}

TEST_F(FinalExample, ConditionEstimateInBand) {
  const auto est = condition_estimate(space, map, Point::numeric(2.0), {Scheme::banach, 0.5});
  EXPECT_GE(est.estimate, 2.9);
  EXPECT_LE(est.estimate, 3.5);
  EXPECT_DOUBLE_EQ(est.threshold, 4.0);
  EXPECT_TRUE(est.holds);
  EXPECT_FALSE(est.cycle_detected);
  bool seen_nm = false;
  bool seen_nx = false;
  for (const auto& a : est.auxiliary_limits) {
    if (a.name == "alpha(x_n,x_m)") {
      seen_nm = true;
      EXPECT_NEAR(a.estimate, 3.0, 1e-6);
    }
    if (a.name == "alpha(x_n,x)") {
      seen_nx = true;
      EXPECT_LE(a.estimate, 4.0);
    }
  }
  EXPECT_TRUE(seen_nm && seen_nx);
  for (const auto& r : est.ratio_values) {
    EXPECT_FALSE(r.m >= r.i && r.m <= r.i + 3);
    EXPECT_GE(r.m, 1u);
    EXPECT_LE(r.m, est.horizon);
  }
}

TEST(ConditionEstimate, ConstantControlGivesS) {
  // Integer points with |x - y| distance, shifted by one up to a fixed end.
  for (double s : {1.0, 1.7, 2.5}) {
    std::vector<Point> pts;
    for (int i = 0; i <= 80; ++i) pts.push_back(Point::numeric(static_cast<double>(i)));
    DistanceSpec d;
    d.fallback = DistanceFallback::abs_difference;
    const auto space = SpaceDef::create(Carrier{pts, {}}, d, ControlSpec::constant_value(s));
    std::vector<std::pair<Point, Point>> e;
    for (int i = 0; i < 80; ++i) e.emplace_back(pts[i], pts[i + 1]);
    e.emplace_back(pts[80], pts[80]);
    const auto est = condition_estimate(space, MapSpec::table(e), pts[0], {Scheme::banach, 0.5});
    EXPECT_EQ(est.estimate, s);
    for (const auto& r : est.ratio_values) EXPECT_EQ(r.value, s);
    EXPECT_EQ(est.holds, s < 4.0 - 1e-9);
  }
}

TEST(ConditionEstimate, ReichNotesSubstitution) {
  const auto space = load_space(fixture("final_example.json"));
  const auto map = load_map(fixture("final_example_map.json"));
  const auto est = condition_estimate(space, map, Point::numeric(2.0), {Scheme::reich, 0.3});
  EXPECT_NEAR(est.threshold, 1.0 / 0.09, 1e-12);
  EXPECT_FALSE(est.note.empty());
  const auto fisher = condition_estimate(space, map, Point::numeric(2.0), {Scheme::fisher, 0.3, 0.2});
  EXPECT_NEAR(fisher.threshold, 4.0, 1e-12);
}

TEST(ConditionEstimate, HorizonTooShortThrows) {
  const auto space = load_space(fixture("final_example.json"));
  ConditionOptions co;
  co.horizon = 4;
  EXPECT_THROW(condition_estimate(space, MapSpec::identity(), Point::numeric(2.0), {Scheme::banach, 0.5}, co),
               std::invalid_argument);
}

TEST_F(Cycle, DecayFailsAtFirstStep) {
  EXPECT_EQ(trace.stop_reason, StopReason::max_iter);
  EXPECT_FALSE(trace.fixed_point);
  for (double d : trace.step_dists) EXPECT_EQ(d, 1.0);
  const auto r = decay_check(trace, 0.9);
  EXPECT_FALSE(r.holds);
  EXPECT_EQ(r.first_failure, 1u);
}

TEST_F(Cycle, SkipAndCauchyFail) {
  const auto s = skip_check(trace, 1e-6);
  EXPECT_FALSE(s.holds);
  EXPECT_EQ(s.tail_max, 1.0);
  const auto c = cauchy_probe(space, trace, 1e-6);
  EXPECT_FALSE(c.holds);
  EXPECT_EQ(c.tail_max, 1.0);
  EXPECT_FALSE(c.tail_near_fixed_point.has_value());
}

TEST_F(Cycle, AprioriNeedsFixedPoint) { EXPECT_THROW(apriori_bound(space, trace, 0.5), std::invalid_argument); }

TEST_F(Cycle, ConditionEstimateReportsCycle) {
  const auto est = condition_estimate(space, map, Point::symbol("a"), {Scheme::banach, 0.5});
  EXPECT_TRUE(est.cycle_detected);
  EXPECT_FALSE(est.fixed_point);
}

TEST_F(Cycle, IdentityIsNotUnique) {
  const std::array<Point, 2> starts{Point::symbol("a"), Point::symbol("b")};
  const auto r = uniqueness_probe(space, MapSpec::identity(), starts, 1e-9, 10);
  EXPECT_FALSE(r.unique);
  EXPECT_EQ(r.fixed_points.size(), 2u);
  const std::array<Point, 1> one{Point::symbol("a")};
  EXPECT_THROW(uniqueness_probe(space, MapSpec::identity(), one, 1e-9, 10), std::invalid_argument);
}

TEST(ConstantOrbit, AllChecksTrivial) {
  const auto space = load_space(fixture("three_cycle.json"));
  const auto map = MapSpec::constant(Point::symbol("b"));
  const auto t = picard(space, map, Point::symbol("b"), {1e-9, 20, 10});
  EXPECT_TRUE(decay_check(t, 0.5).holds);
  EXPECT_EQ(skip_check(t, 1e-12).tail_max, 0.0);
  EXPECT_EQ(cauchy_probe(space, t, 1e-12).tail_max, 0.0);
  const auto a = apriori_bound(space, t, 0.5);
  EXPECT_TRUE(a.holds);
}

TEST(Picard, RejectsBadOptions) {
  const auto space = load_space(fixture("three_cycle.json"));
  EXPECT_THROW(picard(space, MapSpec::identity(), Point::symbol("a"), {0.0, 10, 0}), std::invalid_argument);
  EXPECT_THROW(picard(space, MapSpec::identity(), Point::symbol("a"), {1e-9, 0, 0}), std::invalid_argument);
}

TEST(DecayCheck, RejectsBadRate) {
  const auto space = load_space(fixture("three_cycle.json"));
  const auto t = picard(space, MapSpec::identity(), Point::symbol("a"));
  EXPECT_THROW(decay_check(t, 1.0), std::invalid_argument);
  EXPECT_THROW(decay_check(OrbitTrace{}, 0.5), std::invalid_argument);
}
