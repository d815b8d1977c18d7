// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "engine/charts.hpp"
#include "engine/scene.hpp"
#include "engine/types.hpp"

namespace tabletale::render {

struct Placement {
  int visId = 0;
  Rect rect;
  double scale = 1.0;
  /// Anchor objects: one id, or both members of a composite.
  std::vector<ObjectId> objects;
  ChartSpec chart;  // without detail variant
  std::optional<charts::CompositionKind> composition;
  std::set<std::string> highlightSeries;
  std::set<charts::PointKey> highlightPoints;
  std::vector<charts::MarkRect> marks;
  friend bool operator==(const Placement&, const Placement&) = default;
};

struct AnnotationPlacement {
  ObjectId object;
  Rect rect;
  std::string imageRef;
  std::string text;
  friend bool operator==(const AnnotationPlacement&, const AnnotationPlacement&) = default;
};

/// Deterministic counters only; wall-clock figures live in the session.
struct Diagnostics {
  std::uint64_t framesProcessed = 0;
  std::uint64_t eventsEmitted = 0;
  std::uint64_t maskedEvents = 0;
  std::uint64_t droppedOracleTicks = 0;
  std::uint64_t staleAnswers = 0;
  std::uint64_t protocolErrors = 0;
  std::uint64_t liveTracks = 0;
  bool paused = false;
  bool baselineCalibrated = false;
  friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct RenderFrame {
  std::int64_t frameIndex = 0;
  double timestamp = 0;
  std::vector<Placement> placements;  // ascending visId
  std::vector<AnnotationPlacement> annotations;  // ascending object id
  scene::PresenterPanel panel;
  Diagnostics diagnostics;
  friend bool operator==(const RenderFrame&, const RenderFrame&) = default;
};

}  // namespace tabletale::render
