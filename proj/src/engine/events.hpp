// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "engine/charts.hpp"
#include "engine/tracking.hpp"
#include "engine/types.hpp"

namespace tabletale::events {

// Declaration order is the within-frame emission order: removals before
// additions, so a frame never shows a chart that the same frame hides.
enum class EventKind {
  SceneChanged,
  ObjectHidden,
  ProximitySplit,
  Lowered,
  PointDwellEnd,
  ConditionCleared,
  ObjectAppeared,
  DistanceBandChanged,
  ProximityJoin,
  Lifted,
  PointAtObject,
  PointAtVis,
  ConditionMet,
};

std::string_view to_string(EventKind k);
std::optional<EventKind> event_kind_from_string(std::string_view s);

enum class DistanceBand { Far, Normal, Near };
std::string_view to_string(DistanceBand b);
std::optional<DistanceBand> distance_band_from_string(std::string_view s);

struct ManipulationEvent {
  EventKind kind = EventKind::ObjectAppeared;
  std::int64_t frameIndex = 0;
  double timestamp = 0;

  std::optional<ObjectId> object;  // subject; `a` of a pair
  std::optional<ObjectId> other;   // `b` of a pair
  std::optional<charts::Orientation> orientation;
  std::optional<DistanceBand> band;
  std::optional<int> visId;
  std::optional<std::string> seriesName;
  std::optional<std::string> category;
  std::optional<std::string> conditionId;
  std::optional<int> sceneIndex;
  std::optional<std::string> sceneName;

  friend bool operator==(const ManipulationEvent&, const ManipulationEvent&) = default;
};

/// Total order used to sort a frame's events: kind, then ids.
bool emission_less(const ManipulationEvent& a, const ManipulationEvent& b);

struct EventParams {
  double liftOnHeight = 0.06;
  double liftOffHeight = 0.03;
  double joinDistance = 0.12;
  double splitDistance = 0.18;
  double orientationCutoffDeg = 45;
  double dwellSeconds = 1.0;
  double nearBand = 0.45;
  double farBand = 1.2;
  double bandHysteresis = 0.05;
  double stationaryEpsilon = 0.01;
  int stationaryWindow = 5;
  double snapRadius = 24;
  HandSide pointingHand = HandSide::Right;
  friend bool operator==(const EventParams&, const EventParams&) = default;
};

enum class LiftPhase {
  Unknown,  // not yet evaluated against a calibrated baseline
  Armed,    // resting; a rise above liftOnHeight may fire Lifted
  Lifted,
  Blocked,  // rose while others moved; must come down before re-arming
};

struct TrackEventState {
  bool announced = false;
  bool hidden = false;
  DistanceBand band = DistanceBand::Normal;
  LiftPhase lift = LiftPhase::Unknown;
  int stationaryRun = 0;
  int age = 0;
  friend bool operator==(const TrackEventState&, const TrackEventState&) = default;
};

struct VisMark {
  int visId = 0;
  std::string series;
  std::string category;
  friend auto operator<=>(const VisMark&, const VisMark&) = default;
};

using PointTarget = std::variant<ObjectId, VisMark>;

struct PointingState {
  std::optional<PointTarget> target;
  double since = 0;
  bool fired = false;
  friend bool operator==(const PointingState&, const PointingState&) = default;
};

struct EventState {
  std::map<ObjectId, TrackEventState> tracks;
  std::map<PairKey, bool> joined;  // only joined pairs are present
  PointingState pointing;
  friend bool operator==(const EventState&, const EventState&) = default;
};

/// Whether two tracks are bound to charts the current scene may compose.
using ComposePredicate =
    std::function<bool(const tracking::TrackedObject&, const tracking::TrackedObject&)>;

struct StepInput {
  std::int64_t frameIndex = 0;
  double timestamp = 0;
  std::span<const tracking::TrackedObject> tracks;
  tracking::TableBaseline baseline;
  std::span<const tracking::HandObservation> hands;
  /// Charts as placed in the previous frame, with mark rects.
  std::span<const charts::VisInstance> visLayout;
  ComposePredicate canCompose;
};

struct StepResult {
  std::vector<ManipulationEvent> events;
  EventState state;
};

/// Runs every detector in fixed order and returns the sorted events.
StepResult step(const StepInput& in, const EventParams& params, EventState state);

// Individual detectors; each mutates `state` and appends to `out`.
void detect_distance_band(const StepInput& in, const EventParams& params,
                          EventState& state, std::vector<ManipulationEvent>& out);
void detect_visibility(const StepInput& in, const EventParams& params,
                       EventState& state, std::vector<ManipulationEvent>& out);
void detect_lift(const StepInput& in, const EventParams& params, EventState& state,
                 std::vector<ManipulationEvent>& out);
void detect_proximity(const StepInput& in, const EventParams& params,
                      EventState& state, std::vector<ManipulationEvent>& out);
void detect_pointing(const StepInput& in, const EventParams& params,
                     EventState& state, std::vector<ManipulationEvent>& out);

/// Band classification with hysteresis around the current band.
DistanceBand next_band(DistanceBand current, double cameraDistance,
                       const EventParams& params);
DistanceBand initial_band(double cameraDistance, const EventParams& params);

}  // namespace tabletale::events
