// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "engine/types.hpp"
#include "oracles.hpp"

using namespace tabletale;

TEST_SUITE("core") {
  TEST_CASE("overlap area of intersecting, disjoint and identical rects") {
    CHECK(rect_overlap_area({0, 0, 10, 10}, {5, 5, 10, 10}) == 25);
    CHECK(rect_overlap_area({0, 0, 10, 10}, {20, 20, 5, 5}) == 0);
    Rect a{3, 4, 7, 9};
    CHECK(rect_overlap_area(a, a) == doctest::Approx(63));
    CHECK(rect_overlap_area({0, 0, 10, 10}, {10, 0, 10, 10}) == 0);  // touching edge
  }

  TEST_CASE("overlap is commutative and bounded by the smaller area") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pos(-50, 150), size(0, 80);
    for (int i = 0; i < 2000; ++i) {
      Rect a{pos(rng), pos(rng), size(rng), size(rng)};
      Rect b{pos(rng), pos(rng), size(rng), size(rng)};
      const double ab = rect_overlap_area(a, b);
      CHECK(ab == rect_overlap_area(b, a));
      CHECK(ab <= std::min(a.area(), b.area()) + 1e-9);
      CHECK(ab == doctest::Approx(tt_oracle::overlap(a, b)));
    }
  }

  TEST_CASE("clamp_to_frame moves rects inside and shrinks oversize ones") {
    FrameSize f{1280, 720};
    CHECK(clamp_to_frame({-10, -5, 100, 50}, f) == Rect{0, 0, 100, 50});
    CHECK(clamp_to_frame({1250, 700, 100, 50}, f) == Rect{1180, 670, 100, 50});
    CHECK(clamp_to_frame({10, 10, 2000, 50}, f) == Rect{0, 10, 1280, 50});
  }

  TEST_CASE("rect union spans both") {
    CHECK(rect_union({0, 0, 10, 10}, {20, 5, 10, 10}) == Rect{0, 0, 30, 15});
  }

  TEST_CASE("3D distance") {
    CHECK(distance({0, 0, 1}, {0.3, 0.4, 1}) == doctest::Approx(0.5));
  }

  TEST_CASE("pair keys are canonically ordered") {
    auto k = PairKey::of(ObjectId{5}, ObjectId{2});
    CHECK(k.a == ObjectId{2});
    CHECK(k.b == ObjectId{5});
  }

  TEST_CASE("enum names round-trip") {
    for (auto c : kAllCommands) CHECK(vis_command_from_string(to_string(c)) == c);
    for (auto t : {ChartType::Bar, ChartType::Line, ChartType::Pie, ChartType::Donut, ChartType::Radar})
      CHECK(chart_type_from_string(to_string(t)) == t);
    CHECK(hand_side_from_string("left") == HandSide::Left);
    CHECK(hand_side_from_string(to_string(HandSide::Right)) == HandSide::Right);
    CHECK_FALSE(vis_command_from_string("Zoom").has_value());
    CHECK(to_string(ErrorCode::StreamOrder) == "StreamOrder");
  }

  TEST_CASE("chart spec invariants") {
    ChartSpec ok{ChartType::Pie, {{"s", {{"a", 1}, {"b", 2}}}}, "t", "src", nullptr};
    CHECK(chart_spec_problems(ok).empty());

    ChartSpec empty = ok;
    empty.series.clear();
    CHECK_FALSE(chart_spec_problems(empty).empty());

    ChartSpec dup = ok;
    dup.series[0].points.push_back({"a", 3});
    CHECK_FALSE(chart_spec_problems(dup).empty());

    ChartSpec negativePie = ok;
    negativePie.series[0].points[0].value = -1;
    CHECK_FALSE(chart_spec_problems(negativePie).empty());

    ChartSpec nonFinite = ok;
    nonFinite.chartType = ChartType::Bar;
    nonFinite.series[0].points[0].value = std::numeric_limits<double>::infinity();
    CHECK_FALSE(chart_spec_problems(nonFinite).empty());

    ChartSpec detail = ok;
    auto other = std::make_shared<ChartSpec>(ok);
    other->sourceTag = "elsewhere";
    detail.detailVariant = other;
    CHECK_FALSE(chart_spec_problems(detail).empty());
  }

  TEST_CASE("categories are the first-seen union") {
    ChartSpec c{ChartType::Bar, {{"a", {{"x", 1}, {"y", 2}}}, {"b", {{"z", 1}, {"x", 2}}}}, "t", "s", nullptr};
    CHECK(c.categories() == std::vector<std::string>{"x", "y", "z"});
    CHECK(c.find_series("b") != nullptr);
    CHECK(c.find_series("c") == nullptr);
  }
}
