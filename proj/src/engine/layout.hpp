// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "engine/types.hpp"

namespace tabletale::layout {

// Candidate order; also the argmax tie-break order.
enum class Compass { N, NE, E, SE, S, SW, W, NW };
std::string_view to_string(Compass c);

struct LayoutWeights {
  double wFace = 4.0;    // per 1000 px² of overlap
  double wObject = 2.0;  // per 1000 px² of overlap
  double wVis = 2.0;     // per 1000 px² of overlap
  double wTop = 1.0;
  double wPrev = 2.0;
  double smoothingAlpha = 0.25;
  double margin = 12;
  friend bool operator==(const LayoutWeights&, const LayoutWeights&) = default;
};

enum class ItemKind { Chart, Annotation };

/// Charts are laid out before annotations, each group by ascending id.
struct LayoutKey {
  ItemKind kind = ItemKind::Chart;
  int id = 0;
  friend auto operator<=>(const LayoutKey&, const LayoutKey&) = default;
};

struct Candidate {
  Compass dir = Compass::N;
  Rect rect;
};

struct LayoutScene {
  FrameSize frameSize;
  std::optional<Rect> faceBox;
  std::vector<std::pair<ObjectId, Rect>> objectBoxes;
  std::vector<Rect> placedVis;
  std::map<LayoutKey, Rect> previousPlacements;
};

struct LayoutRequest {
  LayoutKey key;
  Rect anchor;
  double width = 0;
  double height = 0;
};

struct Placement {
  LayoutKey key;
  Rect rect;
  Compass dir = Compass::N;
  double score = 0;
};

/// The eight compass positions around `anchor`, clamped into the frame.
std::array<Candidate, 8> candidates(const Rect& anchor, double width, double height,
                                    FrameSize frame, double margin);

double score(const Candidate& c, const LayoutScene& scene, LayoutKey key,
             const LayoutWeights& weights);

/// Greedy pass: each request in key order takes its best candidate, and
/// later requests see it as an obstacle.
std::vector<Placement> place(std::span<const LayoutRequest> requests, LayoutScene scene,
                             const LayoutWeights& weights);

/// Linear interpolation of the position toward `target`; size jumps.
Rect smooth(const Rect& prev, const Rect& target, double alpha);

/// Anchor for a composite: the box spanning all contributing objects, so the
/// north candidate is centered above them.
Rect composite_anchor(std::span<const Rect> members);

}  // namespace tabletale::layout
