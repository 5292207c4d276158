#include <gtest/gtest.h>

#include <cmath>

#include "crm/io.hpp"
#include "crm/space.hpp"
#include "support.hpp"

using namespace crm;
using crm::testing::fixture;

namespace {

std::vector<double> values(const std::vector<Point>& pts) {
  std::vector<double> out;
  for (const auto& p : pts) out.push_back(p.value.value_or(std::nan("")));
  return out;
}

}  // namespace

TEST(Materialize, IntervalGridEndsExactlyAtHi) {
  const auto pts = materialize(Carrier{{}, {Interval{1.0, 2.0, 5}}});
  EXPECT_EQ(values(pts), (std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0}));
}

TEST(Materialize, FinitePointsFirstThenGrid) {
  const auto space = load_space(fixture("final_example.json"));
  const auto& pts = space.points();
  ASSERT_EQ(pts.size(), 5u + 11u);
  EXPECT_EQ(pts[0].label, "1/2");
  EXPECT_EQ(pts[4].label, "1/6");
  EXPECT_DOUBLE_EQ(*pts[1].value, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(*pts[5].value, 1.0);
  EXPECT_DOUBLE_EQ(*pts.back().value, 2.0);
  for (std::size_t i = 6; i < pts.size(); ++i) EXPECT_LT(*pts[i - 1].value, *pts[i].value);
}

TEST(Materialize, GridPointCoincidingWithFinitePointIsMerged) {
  const auto pts = materialize(Carrier{{Point::numeric(1.5)}, {Interval{1.0, 2.0, 3}}});
  EXPECT_EQ(values(pts), (std::vector<double>{1.5, 1.0, 2.0}));
}

TEST(Materialize, ConflictingLabelsThrow) {
  EXPECT_THROW(materialize(Carrier{{Point::numeric(0.5, "a"), Point::numeric(0.7, "a")}, {}}), SpaceError);
  EXPECT_THROW(materialize(Carrier{{Point::numeric(0.5, "a"), Point::numeric(0.5, "b")}, {}}), SpaceError);
}

TEST(Materialize, Deterministic) {
  const Carrier c{{Point::symbol("z"), Point::numeric(0.25)}, {Interval{0.0, 1.0, 7}}};
  const auto a = materialize(c);
  const auto b = materialize(c);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].label, b[i].label);
}

TEST(ParseReal, DecimalAndFraction) {
  EXPECT_DOUBLE_EQ(*parse_real("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(*parse_real("1/9"), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(*parse_real("-3"), -3.0);
  EXPECT_FALSE(parse_real("a").has_value());
  EXPECT_FALSE(parse_real("1/0").has_value());
  EXPECT_FALSE(parse_real("1/2/3").has_value());
}

TEST(Distance, TableLookupIsSymmetric) {
  const auto space = load_space(fixture("example_2_3.json"));
  const auto one = *space.lookup("1");
  const auto three = *space.lookup("3");
  EXPECT_DOUBLE_EQ(space.distance(one, three), 1.0 / 9.0);
  EXPECT_DOUBLE_EQ(space.distance(three, one), 1.0 / 9.0);
  EXPECT_EQ(space.distance(one, one), 0.0);
}

TEST(Distance, FallbackOnInterval) {
  const auto space = load_space(fixture("final_example.json"));
  EXPECT_NEAR(space.distance(Point::numeric(1.5), Point::numeric(1.2)), 0.09, 1e-15);
  EXPECT_NEAR(space.distance(*space.lookup("1/3"), *space.lookup("1/6")), 0.36, 0.0);
  // Entries override the fallback: (1/3-1/6)^2 would be 1/36.
  EXPECT_NE(space.distance(*space.lookup("1/3"), *space.lookup("1/6")), 1.0 / 36.0);
}

TEST(Distance, MissingEntryRejectedAtCreate) {
  Carrier c{{Point::symbol("a"), Point::symbol("b"), Point::symbol("c")}, {}};
  DistanceSpec d;
  d.entries = {{Point::symbol("a"), Point::symbol("b"), 1.0}};
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::constant_value(1.0)), SpaceError);
}

TEST(Distance, InvalidEntriesRejected) {
  Carrier c{{Point::symbol("a"), Point::symbol("b")}, {}};
  DistanceSpec d;
  d.entries = {{Point::symbol("a"), Point::symbol("b"), -1.0}};
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::constant_value(1.0)), SpaceError);
  d.entries = {{Point::symbol("a"), Point::symbol("b"), 0.0}};
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::constant_value(1.0)), SpaceError);
  d.entries = {{Point::symbol("a"), Point::symbol("a"), 1.0}};
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::constant_value(1.0)), SpaceError);
  d.entries = {{Point::symbol("a"), Point::symbol("b"), 1.0}, {Point::symbol("b"), Point::symbol("a"), 2.0}};
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::constant_value(1.0)), SpaceError);
}

TEST(Control, MaxOnExample23) {
  const auto space = load_space(fixture("example_2_3.json"));
  EXPECT_DOUBLE_EQ(space.control(*space.lookup("3"), *space.lookup("4")), 4.0);
  EXPECT_DOUBLE_EQ(space.control(*space.lookup("2"), *space.lookup("1")), 2.0);
}

TEST(Control, PiecewiseInsideAndOutsideRegion) {
  const auto space = load_space(fixture("final_example.json"));
  EXPECT_DOUBLE_EQ(space.control(*space.lookup("1/5"), *space.lookup("1/4")), 3.0);
  EXPECT_DOUBLE_EQ(space.control(Point::numeric(1.0), Point::numeric(1.5)), 3.5);
  EXPECT_DOUBLE_EQ(space.control(Point::numeric(2.0), Point::numeric(1.0)), 4.0);
  // One point in the region is not enough.
  EXPECT_DOUBLE_EQ(space.control(Point::numeric(1.5), *space.lookup("1/3")), 3.0);
}

TEST(Control, SumPlus) {
  const auto space = load_space(fixture("example_1_3.json"));
  EXPECT_DOUBLE_EQ(space.control(*space.lookup("1"), *space.lookup("4")), 6.0);
}

TEST(Control, ConstantBelowOneRejected) {
  Carrier c{{Point::symbol("a"), Point::symbol("b")}, {}};
  DistanceSpec d;
  d.entries = {{Point::symbol("a"), Point::symbol("b"), 1.0}};
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::constant_value(0.5)), SpaceError);
  EXPECT_THROW(SpaceDef::create(c, d, ControlSpec::table({{Point::symbol("a"), Point::symbol("b"), 0.9}})),
               SpaceError);
}

TEST(Control, TableIsNotAssumedSymmetric) {
  const auto a = Point::symbol("a");
  const auto b = Point::symbol("b");
  DistanceSpec d;
  d.entries = {{a, b, 1.0}};
  const auto space = SpaceDef::create(Carrier{{a, b}, {}}, d, ControlSpec::table({{a, b, 2.0}, {b, a, 5.0}}));
  EXPECT_DOUBLE_EQ(space.control(a, b), 2.0);
  EXPECT_DOUBLE_EQ(space.control(b, a), 5.0);
  EXPECT_DOUBLE_EQ(space.control(a, a), 1.0);
}

TEST(Lookup, LabelThenValue) {
  const auto space = load_space(fixture("final_example.json"));
  EXPECT_EQ(space.lookup("1/3")->label, "1/3");
  EXPECT_EQ(space.lookup("0.2")->label, "1/5");
  EXPECT_DOUBLE_EQ(*space.lookup("1.5")->value, 1.5);
  EXPECT_FALSE(space.lookup("7").has_value());
  EXPECT_FALSE(space.lookup("nope").has_value());
}

TEST(WithGrid, ResamplesIntervals) {
  const auto space = load_space(fixture("final_example.json"));
  EXPECT_EQ(space.with_grid(21).size(), 5u + 21u);
  EXPECT_EQ(space.with_grid(6).size(), 5u + 6u);
}
