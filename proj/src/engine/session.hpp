// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "engine/condition.hpp"
#include "engine/events.hpp"
#include "engine/io.hpp"
#include "engine/layout.hpp"
#include "engine/render.hpp"
#include "engine/scene.hpp"
#include "engine/tracking.hpp"

namespace tabletale::session {

inline constexpr double kAnnotationWidth = 200;
inline constexpr double kAnnotationHeight = 90;

/// Wall-clock per-frame processing times in milliseconds.
class LatencyStats {
 public:
  void add(double ms) { samples_.push_back(ms); }
  std::size_t count() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double median() const { return percentile(0.5); }
  double p95() const { return percentile(0.95); }
  double mean() const;
  double max() const;
  /// Nearest-rank percentile, q in (0, 1].
  double percentile(double q) const;

 private:
  std::vector<double> samples_;
};

struct FrameOutput {
  render::RenderFrame frame;
  std::vector<io::EventRecord> records;
};

/// One presentation run. process_frame is the only mutator of engine state;
/// controls may be queued from any thread and take effect at the next frame.
class Session {
 public:
  /// `oracle` may be null; condition polls are then counted as dropped.
  Session(scene::Presentation presentation, FrameSize frameSize,
          std::unique_ptr<condition::Oracle> oracle);

  /// Throws Error{StreamOrder} on a non-increasing frame index.
  FrameOutput process_frame(const tracking::TrackFrame& frame);

  void handle_control(const io::Control& control);
  std::size_t pending_controls() const;

  const scene::Presentation& presentation() const { return presentation_; }
  const scene::SceneRuntime& runtime() const { return runtime_; }
  const tracking::TrackerState& tracker() const { return tracker_; }
  const events::EventState& event_state() const { return events_; }
  const LatencyStats& latency() const { return latency_; }
  const render::Diagnostics& diagnostics() const { return diagnostics_; }
  bool paused() const { return paused_; }
  FrameSize frame_size() const { return frameSize_; }

 private:
  void apply_controls(const tracking::TrackFrame& frame, std::vector<io::EventRecord>& records);
  void enter_current_scene();
  void update_scales(std::span<const tracking::TrackedObject> tracks);
  render::RenderFrame layout_and_render(const tracking::TrackFrame& frame);
  std::vector<charts::VisInstance> vis_layout() const;

  scene::Presentation presentation_;
  FrameSize frameSize_;
  std::unique_ptr<condition::Oracle> oracle_;

  tracking::TrackerState tracker_;
  tracking::BaselineCalibrator calibrator_;
  events::EventState events_;
  scene::SceneRuntime runtime_;
  condition::ConditionState conditions_;
  std::map<layout::LayoutKey, Rect> previousRects_;
  std::optional<render::RenderFrame> previousFrame_;
  bool paused_ = false;

  render::Diagnostics diagnostics_;
  LatencyStats latency_;

  mutable std::mutex controlMutex_;
  std::deque<io::Control> controls_;
};

}  // namespace tabletale::session
