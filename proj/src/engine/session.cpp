// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/session.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace tabletale::session {

double LatencyStats::percentile(double q) const {
  if (samples_.empty()) return 0;
  std::vector<double> sorted = samples_;
  std::sort(sorted.begin(), sorted.end());
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

double LatencyStats::mean() const {
  if (samples_.empty()) return 0;
  return std::accumulate(samples_.begin(), samples_.end(), 0.0) /
         static_cast<double>(samples_.size());
}

double LatencyStats::max() const {
  return samples_.empty() ? 0 : *std::max_element(samples_.begin(), samples_.end());
}

Session::Session(scene::Presentation presentation, FrameSize frameSize,
                 std::unique_ptr<condition::Oracle> oracle)
    : presentation_(std::move(presentation)),
      frameSize_(frameSize),
      oracle_(std::move(oracle)),
      calibrator_(presentation_.trackParams.calibrationMinSamples) {
  if (presentation_.scenes.empty())
    throw Error(ErrorCode::InvalidArgument, "presentation has no scenes");
  presentation_.currentIndex =
      std::clamp(presentation_.currentIndex, 0, static_cast<int>(presentation_.scenes.size()) - 1);
  runtime_ = scene::enter_scene(presentation_);
}

void Session::handle_control(const io::Control& control) {
  std::lock_guard lock(controlMutex_);
  controls_.push_back(control);
}

std::size_t Session::pending_controls() const {
  std::lock_guard lock(controlMutex_);
  return controls_.size();
}

void Session::enter_current_scene() {
  runtime_ = scene::enter_scene(presentation_);
  events_ = {};
  previousRects_.clear();
  condition::ConditionState fresh;
  fresh.nextRequestId = conditions_.nextRequestId;
  fresh.droppedTicks = conditions_.droppedTicks;
  fresh.protocolErrors = conditions_.protocolErrors;
  fresh.staleAnswers = conditions_.staleAnswers;
  conditions_ = std::move(fresh);
}

void Session::apply_controls(const tracking::TrackFrame& frame,
                             std::vector<io::EventRecord>& records) {
  std::deque<io::Control> pending;
  {
    std::lock_guard lock(controlMutex_);
    pending.swap(controls_);
  }
  for (const auto& c : pending) {
    switch (c.kind) {
      case io::ControlKind::SceneNext:
      case io::ControlKind::ScenePrev: {
        presentation_ = scene::advance_scene(std::move(presentation_),
                                             c.kind == io::ControlKind::SceneNext
                                                 ? scene::Direction::Next
                                                 : scene::Direction::Prev);
        enter_current_scene();
        events::ManipulationEvent e;
        e.kind = events::EventKind::SceneChanged;
        e.frameIndex = frame.frameIndex;
        e.timestamp = frame.timestamp;
        e.sceneIndex = presentation_.currentIndex;
        e.sceneName = presentation_.current().name;
        scene::VisEffect clear;
        clear.kind = scene::EffectKind::ClearScene;
        records.push_back({std::move(e), {clear}, std::nullopt});
        break;
      }
      case io::ControlKind::Pause: paused_ = true; break;
      case io::ControlKind::Resume: paused_ = false; break;
      case io::ControlKind::SetPointingHand:
        if (c.hand) presentation_.eventParams.pointingHand = *c.hand;
        events_.pointing = {};
        break;
      case io::ControlKind::Status: break;
    }
  }
}

std::vector<charts::VisInstance> Session::vis_layout() const {
  std::vector<charts::VisInstance> out;
  for (const auto* v : runtime_.on_screen()) out.push_back(*v);
  return out;
}

void Session::update_scales(std::span<const tracking::TrackedObject> tracks) {
  const bool enabled = presentation_.current().enabled(VisCommand::Scale);
  auto distance_of = [&](ObjectId id) -> std::optional<double> {
    for (const auto& t : tracks)
      if (t.id == id) return t.position.z;
    return std::nullopt;
  };
  for (auto& [id, v] : runtime_.visible) {
    auto d = distance_of(id);
    v.scale = enabled && d ? charts::scale_for_distance(*d, presentation_.chartParams) : 1.0;
  }
  for (auto& [key, v] : runtime_.composites) {
    auto da = distance_of(key.a), db = distance_of(key.b);
    v.scale = enabled && da && db
                  ? charts::scale_for_distance((*da + *db) / 2, presentation_.chartParams)
                  : 1.0;
  }
}

render::RenderFrame Session::layout_and_render(const tracking::TrackFrame& frame) {
  const auto& weights = presentation_.layoutWeights;
  const auto& cp = presentation_.chartParams;
  auto bbox_of = [&](ObjectId id) -> const Rect* {
    for (const auto& t : tracker_.tracks)
      if (t.id == id) return &t.bbox;
    return nullptr;
  };

  layout::LayoutScene ls;
  ls.frameSize = frameSize_;
  ls.faceBox = frame.faceBox;
  for (const auto& t : tracker_.tracks)
    if (t.observed()) ls.objectBoxes.emplace_back(t.id, t.bbox);
  ls.previousPlacements = previousRects_;

  std::vector<layout::LayoutRequest> requests;
  auto chart_request = [&](const charts::VisInstance& v, const Rect& anchor) {
    requests.push_back({{layout::ItemKind::Chart, v.visId}, anchor, cp.baseWidth * v.scale,
                        cp.baseHeight * v.scale});
  };
  for (const auto& [id, v] : runtime_.visible)
    if (const Rect* box = bbox_of(id)) chart_request(v, *box);
  for (const auto& [key, v] : runtime_.composites) {
    const Rect *a = bbox_of(key.a), *b = bbox_of(key.b);
    if (a && b) {
      const Rect members[] = {*a, *b};
      chart_request(v, layout::composite_anchor(members));
    }
  }

  render::RenderFrame rf;
  const auto& scene = presentation_.current();
  std::map<int, render::AnnotationPlacement> annotationContent;
  for (ObjectId id : runtime_.annotations) {
    const Rect* box = bbox_of(id);
    if (!box) continue;
    const tracking::TrackedObject* track = nullptr;
    for (const auto& t : tracker_.tracks)
      if (t.id == id) track = &t;
    const scene::Binding* binding = scene::resolve_binding(*track, scene);
    if (!binding) continue;
    auto content = scene::effective_annotation(scene, runtime_, *binding);
    if (!content) continue;
    annotationContent[id.value] = {id, {}, content->imageRef, content->text};
    requests.push_back({{layout::ItemKind::Annotation, id.value}, *box, kAnnotationWidth,
                        kAnnotationHeight});
  }

  std::map<layout::LayoutKey, Rect> placed;
  for (const auto& p : layout::place(requests, ls, weights)) {
    Rect rect = p.rect;
    if (auto prev = previousRects_.find(p.key); prev != previousRects_.end())
      rect = clamp_to_frame(layout::smooth(prev->second, p.rect, weights.smoothingAlpha), frameSize_);
    placed[p.key] = rect;
  }
  previousRects_ = placed;

  auto emit = [&](charts::VisInstance& v, std::vector<ObjectId> objects) {
    auto it = placed.find({layout::ItemKind::Chart, v.visId});
    if (it == placed.end()) return;
    v.placedRect = it->second;
    v.markRects = charts::mark_geometry(v.spec, v.composition, v.placedRect);
    render::Placement p;
    p.visId = v.visId;
    p.rect = v.placedRect;
    p.scale = v.scale;
    p.objects = std::move(objects);
    p.chart = v.spec;
    p.chart.detailVariant.reset();
    p.composition = v.composition;
    p.highlightSeries = v.highlightSeries;
    p.highlightPoints = v.highlightPoints;
    p.marks = v.markRects;
    rf.placements.push_back(std::move(p));
  };
  for (auto& [id, v] : runtime_.visible) emit(v, {id});
  for (auto& [key, v] : runtime_.composites) emit(v, {key.a, key.b});
  std::sort(rf.placements.begin(), rf.placements.end(),
            [](const auto& a, const auto& b) { return a.visId < b.visId; });

  for (auto& [id, a] : annotationContent) {
    auto it = placed.find({layout::ItemKind::Annotation, id});
    if (it == placed.end()) continue;
    a.rect = it->second;
    rf.annotations.push_back(std::move(a));
  }
  return rf;
}

FrameOutput Session::process_frame(const tracking::TrackFrame& frame) {
  const auto start = std::chrono::steady_clock::now();
  if (tracker_.lastFrameIndex && frame.frameIndex <= *tracker_.lastFrameIndex)
    throw Error(ErrorCode::StreamOrder, "frame " + std::to_string(frame.frameIndex) +
                                            " arrived after frame " +
                                            std::to_string(*tracker_.lastFrameIndex));
  FrameOutput out;
  apply_controls(frame, out.records);
  const bool sceneChanged = !out.records.empty();

  auto assoc = tracking::associate(tracker_, frame, presentation_.trackParams);
  tracker_ = std::move(assoc.state);
  const tracking::TableBaseline baseline = calibrator_.observe(frame);

  if (!paused_) {
    const auto& scene = presentation_.current();
    std::vector<events::ManipulationEvent> evs;
    if (oracle_)
      for (const auto& answer : oracle_->drain(frame.timestamp))
        for (auto& e : condition::ingest_answer(answer, scene.conditions, conditions_,
                                                frame.frameIndex, frame.timestamp))
          evs.push_back(std::move(e));
    condition::poll_tick(frame.timestamp, frame.frameIndex, scene.conditions, conditions_,
                         oracle_.get());

    const auto vis = vis_layout();
    events::StepInput in;
    in.frameIndex = frame.frameIndex;
    in.timestamp = frame.timestamp;
    in.tracks = tracker_.tracks;
    in.baseline = baseline;
    in.hands = frame.hands;
    in.visLayout = vis;
    in.canCompose = [&](const tracking::TrackedObject& a, const tracking::TrackedObject& b) {
      return scene::can_compose(scene, runtime_, a, b);
    };
    auto step = events::step(in, presentation_.eventParams, std::move(events_));
    events_ = std::move(step.state);
    evs.insert(evs.end(), std::make_move_iterator(step.events.begin()),
               std::make_move_iterator(step.events.end()));
    std::stable_sort(evs.begin(), evs.end(), events::emission_less);

    std::vector<tracking::TrackedObject> known = tracker_.tracks;
    known.insert(known.end(), assoc.deaths.begin(), assoc.deaths.end());
    for (auto& e : evs) {
      auto r = scene::dispatch(e, scene, runtime_, known);
      if (r.diagnostic == "Masked") ++diagnostics_.maskedEvents;
      out.records.push_back({std::move(e), std::move(r.effects), std::move(r.diagnostic)});
    }
    update_scales(tracker_.tracks);
    out.frame = layout_and_render(frame);
  } else if (previousFrame_ && !sceneChanged) {
    out.frame = *previousFrame_;
  }

  diagnostics_.framesProcessed += 1;
  diagnostics_.eventsEmitted += out.records.size();
  diagnostics_.droppedOracleTicks = conditions_.droppedTicks;
  diagnostics_.staleAnswers = conditions_.staleAnswers;
  diagnostics_.protocolErrors = conditions_.protocolErrors;
  diagnostics_.liveTracks = tracker_.tracks.size();
  diagnostics_.paused = paused_;
  diagnostics_.baselineCalibrated = baseline.calibrated;

  out.frame.frameIndex = frame.frameIndex;
  out.frame.timestamp = frame.timestamp;
  out.frame.panel = runtime_.panel;
  out.frame.diagnostics = diagnostics_;
  previousFrame_ = out.frame;

  latency_.add(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                   .count());
  return out;
}

}  // namespace tabletale::session
