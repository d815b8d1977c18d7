// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/layout.hpp"

#include <algorithm>
#include <cmath>

namespace tabletale::layout {

namespace {
constexpr double kOverlapUnit = 1000.0;  // px² per penalty unit
}

std::string_view to_string(Compass c) {
  static constexpr std::string_view names[] = {"N", "NE", "E", "SE", "S", "SW", "W", "NW"};
  return names[static_cast<int>(c)];
}

std::array<Candidate, 8> candidates(const Rect& anchor, double width, double height,
                                    FrameSize frame, double margin) {
  const double left = anchor.x - margin - width;
  const double right = anchor.right() + margin;
  const double midX = anchor.x + anchor.w / 2 - width / 2;
  const double above = anchor.y - margin - height;
  const double below = anchor.bottom() + margin;
  const double midY = anchor.y + anchor.h / 2 - height / 2;

  auto at = [&](Compass dir, double x, double y) {
    return Candidate{dir, clamp_to_frame({x, y, width, height}, frame)};
  };
  return {at(Compass::N, midX, above),  at(Compass::NE, right, above),
          at(Compass::E, right, midY),  at(Compass::SE, right, below),
          at(Compass::S, midX, below),  at(Compass::SW, left, below),
          at(Compass::W, left, midY),   at(Compass::NW, left, above)};
}

double score(const Candidate& c, const LayoutScene& scene, LayoutKey key,
             const LayoutWeights& weights) {
  double face = scene.faceBox ? rect_overlap_area(c.rect, *scene.faceBox) : 0;
  double objects = 0;
  for (const auto& [id, box] : scene.objectBoxes) objects += rect_overlap_area(c.rect, box);
  double vis = 0;
  for (const auto& r : scene.placedVis) vis += rect_overlap_area(c.rect, r);

  double s = -weights.wFace * face / kOverlapUnit - weights.wObject * objects / kOverlapUnit -
             weights.wVis * vis / kOverlapUnit;
  if (c.dir == Compass::N) s += weights.wTop;
  if (auto it = scene.previousPlacements.find(key); it != scene.previousPlacements.end()) {
    Point2 a = c.rect.center(), b = it->second.center();
    double diag = std::hypot(scene.frameSize.w, scene.frameSize.h);
    double consistency = diag > 0 ? std::max(0.0, 1 - std::hypot(a.x - b.x, a.y - b.y) / diag) : 0;
    s += weights.wPrev * consistency;
  }
  return s;
}

std::vector<Placement> place(std::span<const LayoutRequest> requests, LayoutScene scene,
                             const LayoutWeights& weights) {
  std::vector<LayoutRequest> ordered(requests.begin(), requests.end());
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const auto& a, const auto& b) { return a.key < b.key; });
  std::vector<Placement> out;
  out.reserve(ordered.size());
  for (const auto& req : ordered) {
    const auto cands = candidates(req.anchor, req.width, req.height, scene.frameSize,
                                  weights.margin);
    Placement best{req.key, cands[0].rect, cands[0].dir,
                   score(cands[0], scene, req.key, weights)};
    for (std::size_t i = 1; i < cands.size(); ++i) {
      double s = score(cands[i], scene, req.key, weights);
      if (s > best.score) best = {req.key, cands[i].rect, cands[i].dir, s};
    }
    scene.placedVis.push_back(best.rect);
    out.push_back(best);
  }
  return out;
}

Rect smooth(const Rect& prev, const Rect& target, double alpha) {
  return {prev.x + alpha * (target.x - prev.x), prev.y + alpha * (target.y - prev.y),
          target.w, target.h};
}

Rect composite_anchor(std::span<const Rect> members) {
  if (members.empty()) return {};
  Rect r = members.front();
  for (const auto& m : members.subspan(1)) r = rect_union(r, m);
  return r;
}

}  // namespace tabletale::layout
