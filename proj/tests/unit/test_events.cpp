// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "engine/events.hpp"
#include "support.hpp"

using namespace tabletale;
using namespace tabletale::events;
using tt_test::track;

namespace {

/// Drives `step` frame by frame with caller-supplied tracks.
struct Driver {
  EventParams params;
  EventState state;
  tracking::TableBaseline baseline{0.0, true, 30};
  std::int64_t index = 0;
  std::vector<tracking::TrackedObject> last;
  std::vector<tracking::HandObservation> hands;
  std::vector<charts::VisInstance> vis;
  bool composable = true;

  std::vector<ManipulationEvent> feed(std::vector<tracking::TrackedObject> tracks) {
    for (auto& t : tracks) {
      for (const auto& p : last)
        if (p.id == t.id) t.previousPosition = p.position;
    }
    StepInput in;
    in.frameIndex = index;
    in.timestamp = static_cast<double>(index) / 30;
    ++index;
    in.tracks = tracks;
    in.baseline = baseline;
    in.hands = hands;
    in.visLayout = vis;
    in.canCompose = [&](const auto&, const auto&) { return composable; };
    auto r = step(in, params, std::move(state));
    state = std::move(r.state);
    last = tracks;
    return r.events;
  }
};

std::vector<EventKind> kinds(const std::vector<ManipulationEvent>& es) {
  std::vector<EventKind> out;
  for (const auto& e : es) out.push_back(e.kind);
  return out;
}

}  // namespace

TEST_SUITE("events") {
  TEST_CASE("first sighting announces the object once") {
    Driver d;
    auto e = d.feed({track(1, "a", {0, 0, 0.8})});
    CHECK(kinds(e) == std::vector{EventKind::ObjectAppeared});
    CHECK(d.feed({track(1, "a", {0, 0, 0.8})}).empty());
  }

  TEST_CASE("identical frames after any prefix produce no further events") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 0.8}), track(2, "b", {0.05, 0, 0.8})});
    for (int i = 0; i < 10; ++i) d.feed({track(1, "a", {0, 0.1, 0.8}), track(2, "b", {0.3, 0, 0.8})});
    for (int i = 0; i < 30; ++i)
      CHECK(d.feed({track(1, "a", {0, 0.1, 0.8}), track(2, "b", {0.3, 0, 0.8})}).empty());
  }

  TEST_CASE("far band hides and returning shows, with hysteresis") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 1.0})});
    CHECK(kinds(d.feed({track(1, "a", {0, 0, 1.25})})) ==
          std::vector{EventKind::ObjectHidden, EventKind::DistanceBandChanged});
    // Back below farBand but inside the hysteresis band: still far.
    CHECK(d.feed({track(1, "a", {0, 0, 1.17})}).empty());
    CHECK(kinds(d.feed({track(1, "a", {0, 0, 1.14})})) ==
          std::vector{EventKind::ObjectAppeared, EventKind::DistanceBandChanged});
  }

  TEST_CASE("an object first seen far is not announced until it comes closer") {
    Driver d;
    // The band is reported, the object is not.
    CHECK(kinds(d.feed({track(1, "a", {0, 0, 1.5})})) == std::vector{EventKind::DistanceBandChanged});
    auto e = d.feed({track(1, "a", {0, 0, 1.0})});
    CHECK(kinds(e) == std::vector{EventKind::ObjectAppeared, EventKind::DistanceBandChanged});
  }

  TEST_CASE("near band entry and exit") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 0.8})});
    auto e = d.feed({track(1, "a", {0, 0, 0.44})});
    REQUIRE(e.size() == 1);
    CHECK(e[0].band == DistanceBand::Near);
    CHECK(d.feed({track(1, "a", {0, 0, 0.48})}).empty());
    e = d.feed({track(1, "a", {0, 0, 0.51})});
    REQUIRE(e.size() == 1);
    CHECK(e[0].band == DistanceBand::Normal);
  }

  TEST_CASE("band transition table") {
    EventParams p;
    CHECK(initial_band(0.3, p) == DistanceBand::Near);
    CHECK(initial_band(0.8, p) == DistanceBand::Normal);
    CHECK(initial_band(1.3, p) == DistanceBand::Far);
    CHECK(next_band(DistanceBand::Near, 1.3, p) == DistanceBand::Far);
    CHECK(next_band(DistanceBand::Far, 0.3, p) == DistanceBand::Near);
    CHECK(next_band(DistanceBand::Near, 0.47, p) == DistanceBand::Near);
    CHECK(next_band(DistanceBand::Far, 1.18, p) == DistanceBand::Far);
  }

  TEST_CASE("lost track emits ObjectHidden") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 0.8})});
    CHECK(kinds(d.feed({})) == std::vector{EventKind::ObjectHidden});
  }

  TEST_CASE("lift and lower with hysteresis") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 0.8})});
    d.feed({track(1, "a", {0, 0.05, 0.8})});
    CHECK(kinds(d.feed({track(1, "a", {0, 0.07, 0.8})})) == std::vector{EventKind::Lifted});
    CHECK(d.feed({track(1, "a", {0, 0.04, 0.8})}).empty());
    CHECK(d.feed({track(1, "a", {0, 0.065, 0.8})}).empty());
    CHECK(kinds(d.feed({track(1, "a", {0, 0.02, 0.8})})) == std::vector{EventKind::Lowered});
  }

  TEST_CASE("no lift before the baseline is calibrated") {
    Driver d;
    d.baseline = {};
    d.feed({track(1, "a", {0, 0, 0.8})});
    CHECK(d.feed({track(1, "a", {0, 0.2, 0.8})}).empty());
  }

  TEST_CASE("a rise while another object moves is blocked until it comes down") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 0.8}), track(2, "b", {0.5, 0, 0.8})});
    for (int i = 0; i < 6; ++i) d.feed({track(1, "a", {0, 0, 0.8}), track(2, "b", {0.5, 0, 0.8})});
    // b slides while a rises: both hands busy, no Lifted.
    CHECK(d.feed({track(1, "a", {0, 0.08, 0.8}), track(2, "b", {0.55, 0, 0.8})}).empty());
    CHECK(d.state.tracks.at(ObjectId{1}).lift == LiftPhase::Blocked);
    for (int i = 0; i < 6; ++i)
      CHECK(d.feed({track(1, "a", {0, 0.08, 0.8}), track(2, "b", {0.55, 0, 0.8})}).empty());
    CHECK(d.feed({track(1, "a", {0, 0.0, 0.8}), track(2, "b", {0.55, 0, 0.8})}).empty());
    CHECK(kinds(d.feed({track(1, "a", {0, 0.08, 0.8}), track(2, "b", {0.55, 0, 0.8})})) ==
          std::vector{EventKind::Lifted});
  }

  TEST_CASE("join orientation and split hysteresis") {
    Driver d;
    auto a = track(1, "a", {0, 0, 0.8}, {600, 300, 60, 80});
    auto b = track(2, "b", {0.3, 0, 0.8}, {800, 300, 60, 80});
    d.feed({a, b});
    b.position = {0.1, 0, 0.8};
    b.bbox = {680, 305, 60, 80};
    auto e = d.feed({a, b});
    REQUIRE(e.size() == 1);
    CHECK(e[0].kind == EventKind::ProximityJoin);
    CHECK(e[0].orientation == charts::Orientation::Horizontal);
    CHECK(e[0].object == ObjectId{1});
    CHECK(e[0].other == ObjectId{2});
    b.position = {0.15, 0, 0.8};
    CHECK(d.feed({a, b}).empty());
    b.position = {0.19, 0, 0.8};
    CHECK(kinds(d.feed({a, b})) == std::vector{EventKind::ProximitySplit});

    // Stacked: b directly above a on screen.
    b.position = {0, 0.06, 0.8};
    b.bbox = {600, 210, 60, 80};
    e = d.feed({a, b});
    REQUIRE(e.size() == 1);
    CHECK(e[0].kind == EventKind::ProximityJoin);
    CHECK(e[0].orientation == charts::Orientation::Vertical);
  }

  TEST_CASE("pairs that cannot compose are never joined") {
    Driver d;
    d.composable = false;
    d.feed({track(1, "a", {0, 0, 0.8}), track(2, "b", {0.05, 0, 0.8})});
    CHECK(d.state.joined.empty());
  }

  TEST_CASE("losing a joined member splits the pair") {
    Driver d;
    d.feed({track(1, "a", {0, 0, 0.8}), track(2, "b", {0.3, 0, 0.8})});
    d.feed({track(1, "a", {0, 0, 0.8}), track(2, "b", {0.05, 0, 0.8})});
    CHECK(kinds(d.feed({track(1, "a", {0, 0, 0.8})})) ==
          std::vector{EventKind::ObjectHidden, EventKind::ProximitySplit});
  }

  TEST_CASE("pointing dwell on an object, end, and hand discrimination") {
    Driver d;
    d.params.dwellSeconds = 0.1;  // 3 frames
    auto a = track(1, "a", {0, 0, 0.8}, {600, 300, 60, 80});
    d.feed({a});
    d.hands = {{HandSide::Left, {630, 340}}};
    for (int i = 0; i < 5; ++i) CHECK(d.feed({a}).empty());
    d.hands = {{HandSide::Right, {630, 340}}};
    CHECK(d.feed({a}).empty());
    CHECK(d.feed({a}).empty());
    CHECK(d.feed({a}).empty());
    auto e = d.feed({a});
    REQUIRE(e.size() == 1);
    CHECK(e[0].kind == EventKind::PointAtObject);
    CHECK(e[0].object == ObjectId{1});
    CHECK(d.feed({a}).empty());
    d.hands.clear();
    CHECK(kinds(d.feed({a})) == std::vector{EventKind::PointDwellEnd});
  }

  TEST_CASE("pointing at a chart mark selects the point") {
    Driver d;
    d.params.dwellSeconds = 0;
    auto a = track(1, "a", {0, 0, 0.8}, {100, 500, 60, 80});
    charts::VisInstance v;
    v.visId = 4;
    v.spec = {ChartType::Bar, {{"s", {{"x", 1}, {"y", 2}}}}, "t", "src", nullptr};
    v.placedRect = {500, 100, 240, 160};
    v.markRects = charts::mark_geometry(v.spec, std::nullopt, v.placedRect);
    d.vis = {v};
    d.feed({a});
    const auto target = v.markRects[1].rect.center();
    d.hands = {{HandSide::Right, target}};
    auto e = d.feed({a});
    REQUIRE(e.size() == 1);
    CHECK(e[0].kind == EventKind::PointAtVis);
    CHECK(e[0].visId == 4);
    CHECK(e[0].seriesName == "s");
    CHECK(e[0].category == "y");
  }

  TEST_CASE("emission order puts removals before additions") {
    ManipulationEvent hide{EventKind::ObjectHidden}, appear{EventKind::ObjectAppeared};
    hide.object = ObjectId{9};
    appear.object = ObjectId{1};
    CHECK(emission_less(hide, appear));
    CHECK_FALSE(emission_less(appear, hide));
    for (int k = 0; k < 13; ++k)
      CHECK(event_kind_from_string(to_string(static_cast<EventKind>(k))) == static_cast<EventKind>(k));
  }
}
