// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/events.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>

namespace tabletale::events {

namespace {

constexpr std::array<std::string_view, 13> kKindNames{
    "SceneChanged",     "ObjectHidden",   "ProximitySplit", "Lowered",
    "PointDwellEnd",    "ConditionCleared", "ObjectAppeared", "DistanceBandChanged",
    "ProximityJoin",    "Lifted",         "PointAtObject",  "PointAtVis",
    "ConditionMet",
};

ManipulationEvent make(EventKind kind, const StepInput& in) {
  ManipulationEvent e;
  e.kind = kind;
  e.frameIndex = in.frameIndex;
  e.timestamp = in.timestamp;
  return e;
}

ManipulationEvent make(EventKind kind, const StepInput& in, ObjectId id) {
  ManipulationEvent e = make(kind, in);
  e.object = id;
  return e;
}

TrackEventState& ensure_entry(const tracking::TrackedObject& t,
                              const EventParams& params, EventState& state) {
  auto [it, inserted] = state.tracks.try_emplace(t.id);
  if (inserted) it->second.band = initial_band(t.position.z, params);
  return it->second;
}

bool is_visible(const EventState& state, ObjectId id) {
  auto it = state.tracks.find(id);
  return it != state.tracks.end() && it->second.announced && !it->second.hidden;
}

void update_motion(const StepInput& in, const EventParams& params, EventState& state) {
  for (const auto& t : in.tracks) {
    auto& s = ensure_entry(t, params, state);
    ++s.age;
    if (distance(t.position, t.previousPosition) <= params.stationaryEpsilon)
      ++s.stationaryRun;
    else
      s.stationaryRun = 0;
  }
}

void set_target_fields(ManipulationEvent& e, const PointTarget& target) {
  if (const auto* id = std::get_if<ObjectId>(&target)) {
    e.object = *id;
  } else {
    const auto& mark = std::get<VisMark>(target);
    e.visId = mark.visId;
    e.seriesName = mark.series;
    e.category = mark.category;
  }
}

}  // namespace

std::string_view to_string(EventKind k) { return kKindNames[static_cast<std::size_t>(k)]; }

std::optional<EventKind> event_kind_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (kKindNames[i] == s) return static_cast<EventKind>(i);
  return std::nullopt;
}

std::string_view to_string(DistanceBand b) {
  switch (b) {
    case DistanceBand::Far: return "far";
    case DistanceBand::Normal: return "normal";
    case DistanceBand::Near: return "near";
  }
  return "?";
}

std::optional<DistanceBand> distance_band_from_string(std::string_view s) {
  if (s == "far") return DistanceBand::Far;
  if (s == "normal") return DistanceBand::Normal;
  if (s == "near") return DistanceBand::Near;
  return std::nullopt;
}

bool emission_less(const ManipulationEvent& a, const ManipulationEvent& b) {
  auto key = [](const ManipulationEvent& e) {
    return std::make_tuple(static_cast<int>(e.kind), e.object.value_or(ObjectId{-1}),
                           e.other.value_or(ObjectId{-1}), e.visId.value_or(-1),
                           e.seriesName.value_or(""), e.category.value_or(""),
                           e.conditionId.value_or(""));
  };
  return key(a) < key(b);
}

DistanceBand initial_band(double z, const EventParams& params) {
  if (z > params.farBand) return DistanceBand::Far;
  if (z < params.nearBand) return DistanceBand::Near;
  return DistanceBand::Normal;
}

// A band is entered at its nominal threshold and left only once the distance
// moves back past the threshold by bandHysteresis.
DistanceBand next_band(DistanceBand current, double z, const EventParams& params) {
  switch (current) {
    case DistanceBand::Normal:
      return initial_band(z, params);
    case DistanceBand::Near:
      if (z > params.farBand) return DistanceBand::Far;
      if (z > params.nearBand + params.bandHysteresis) return DistanceBand::Normal;
      return DistanceBand::Near;
    case DistanceBand::Far:
      if (z < params.nearBand) return DistanceBand::Near;
      if (z < params.farBand - params.bandHysteresis) return DistanceBand::Normal;
      return DistanceBand::Far;
  }
  return current;
}

void detect_distance_band(const StepInput& in, const EventParams& params,
                          EventState& state, std::vector<ManipulationEvent>& out) {
  for (const auto& t : in.tracks) {
    const bool fresh = !state.tracks.count(t.id);
    auto& s = ensure_entry(t, params, state);
    DistanceBand before = fresh ? DistanceBand::Normal : s.band;
    if (!fresh && t.observed()) s.band = next_band(s.band, t.position.z, params);
    if (s.band != before) {
      auto e = make(EventKind::DistanceBandChanged, in, t.id);
      e.band = s.band;
      out.push_back(std::move(e));
    }
  }
}

void detect_visibility(const StepInput& in, const EventParams& params,
                       EventState& state, std::vector<ManipulationEvent>& out) {
  std::set<ObjectId> live;
  for (const auto& t : in.tracks) {
    live.insert(t.id);
    auto& s = ensure_entry(t, params, state);
    const bool far = s.band == DistanceBand::Far;
    if (!s.announced) {
      s.announced = true;
      s.hidden = far;
      if (!far) out.push_back(make(EventKind::ObjectAppeared, in, t.id));
    } else if (far != s.hidden) {
      s.hidden = far;
      out.push_back(make(far ? EventKind::ObjectHidden : EventKind::ObjectAppeared, in, t.id));
    }
  }
  for (auto it = state.tracks.begin(); it != state.tracks.end();) {
    if (live.count(it->first)) {
      ++it;
      continue;
    }
    if (it->second.announced && !it->second.hidden)
      out.push_back(make(EventKind::ObjectHidden, in, it->first));
    it = state.tracks.erase(it);
  }
}

void detect_lift(const StepInput& in, const EventParams& params, EventState& state,
                 std::vector<ManipulationEvent>& out) {
  if (!in.baseline.calibrated) return;
  auto others_stationary = [&](ObjectId self) {
    for (const auto& [id, s] : state.tracks) {
      if (id == self || !s.announced || s.hidden) continue;
      if (s.stationaryRun < std::min(params.stationaryWindow, s.age)) return false;
    }
    return true;
  };
  for (const auto& t : in.tracks) {
    if (!t.observed()) continue;
    auto& s = ensure_entry(t, params, state);
    const double h = tracking::kinematics(t, in.baseline).heightAboveTable;
    switch (s.lift) {
      case LiftPhase::Unknown:
        s.lift = h > params.liftOnHeight ? LiftPhase::Blocked : LiftPhase::Armed;
        break;
      case LiftPhase::Armed:
        if (h > params.liftOnHeight) {
          if (others_stationary(t.id)) {
            s.lift = LiftPhase::Lifted;
            out.push_back(make(EventKind::Lifted, in, t.id));
          } else {
            s.lift = LiftPhase::Blocked;
          }
        }
        break;
      case LiftPhase::Lifted:
        if (h < params.liftOffHeight) {
          s.lift = LiftPhase::Armed;
          out.push_back(make(EventKind::Lowered, in, t.id));
        }
        break;
      case LiftPhase::Blocked:
        if (h < params.liftOffHeight) s.lift = LiftPhase::Armed;
        break;
    }
  }
}

void detect_proximity(const StepInput& in, const EventParams& params,
                      EventState& state, std::vector<ManipulationEvent>& out) {
  std::set<PairKey> considered;
  for (std::size_t i = 0; i < in.tracks.size(); ++i) {
    for (std::size_t j = i + 1; j < in.tracks.size(); ++j) {
      const auto& a = in.tracks[i];
      const auto& b = in.tracks[j];
      if (!is_visible(state, a.id) || !is_visible(state, b.id)) continue;
      if (!in.canCompose || !in.canCompose(a, b)) continue;
      const PairKey key = PairKey::of(a.id, b.id);
      considered.insert(key);
      if (!a.observed() || !b.observed()) continue;

      const double d = distance(a.position, b.position);
      const bool joined = state.joined.count(key) > 0;
      if (!joined && d < params.joinDistance) {
        Point2 ca = a.bbox.center(), cb = b.bbox.center();
        double angle = std::atan2(std::abs(cb.y - ca.y), std::abs(cb.x - ca.x)) * 180 /
                       std::numbers::pi;
        auto e = make(EventKind::ProximityJoin, in, key.a);
        e.other = key.b;
        e.orientation = angle > params.orientationCutoffDeg ? charts::Orientation::Vertical
                                                            : charts::Orientation::Horizontal;
        out.push_back(std::move(e));
        state.joined[key] = true;
      } else if (joined && d > params.splitDistance) {
        auto e = make(EventKind::ProximitySplit, in, key.a);
        e.other = key.b;
        out.push_back(std::move(e));
        state.joined.erase(key);
      }
    }
  }
  // Joined pairs that lost a member or their eligibility are split.
  for (auto it = state.joined.begin(); it != state.joined.end();) {
    if (considered.count(it->first)) {
      ++it;
      continue;
    }
    auto e = make(EventKind::ProximitySplit, in, it->first.a);
    e.other = it->first.b;
    out.push_back(std::move(e));
    it = state.joined.erase(it);
  }
}

void detect_pointing(const StepInput& in, const EventParams& params,
                     EventState& state, std::vector<ManipulationEvent>& out) {
  std::optional<PointTarget> target;
  const tracking::HandObservation* hand = nullptr;
  for (const auto& h : in.hands)
    if (h.side == params.pointingHand) hand = &h;

  if (hand) {
    const Point2 tip = hand->indexTip;
    bool insideChart = false;
    std::vector<const charts::VisInstance*> charts;
    for (const auto& v : in.visLayout) charts.push_back(&v);
    std::sort(charts.begin(), charts.end(),
              [](auto* a, auto* b) { return a->visId < b->visId; });
    for (const auto* v : charts) {
      if (!v->placedRect.contains(tip)) continue;
      insideChart = true;
      if (auto hit = charts::hit_test(*v, tip, params.snapRadius)) {
        target = VisMark{v->visId, hit->first, hit->second};
        break;
      }
    }
    if (!insideChart) {
      for (const auto& t : in.tracks) {  // ascending id
        if (!t.observed() || !is_visible(state, t.id) || !t.bbox.contains(tip)) continue;
        if (state.tracks.at(t.id).lift != LiftPhase::Lifted) target = t.id;
        break;
      }
    }
  }

  auto& p = state.pointing;
  if (target != p.target) {
    if (p.target && p.fired) {
      auto e = make(EventKind::PointDwellEnd, in);
      set_target_fields(e, *p.target);
      out.push_back(std::move(e));
    }
    p.target = target;
    p.since = in.timestamp;
    p.fired = false;
  }
  if (p.target && !p.fired && in.timestamp - p.since >= params.dwellSeconds - 1e-9) {
    p.fired = true;
    auto e = make(std::holds_alternative<ObjectId>(*p.target) ? EventKind::PointAtObject
                                                              : EventKind::PointAtVis,
                  in);
    set_target_fields(e, *p.target);
    out.push_back(std::move(e));
  }
}

StepResult step(const StepInput& in, const EventParams& params, EventState state) {
  StepResult r;
  detect_distance_band(in, params, state, r.events);
  detect_visibility(in, params, state, r.events);
  update_motion(in, params, state);
  detect_lift(in, params, state, r.events);
  detect_proximity(in, params, state, r.events);
  detect_pointing(in, params, state, r.events);
  std::stable_sort(r.events.begin(), r.events.end(), emission_less);
  r.state = std::move(state);
  return r;
}

}  // namespace tabletale::events
