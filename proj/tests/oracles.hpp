// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

// Reference implementations used as test oracles. They are written from the
// behavioural definitions, not from the engine code, and favour obviousness
// over speed.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "engine/types.hpp"

namespace tt_oracle {

using tabletale::Rect;
using tabletale::Vec3;

// ---------------------------------------------------------------------------
// Association: exhaustive minimum-cost assignment.
// ---------------------------------------------------------------------------

struct Point {
  std::string cls;
  Vec3 p;
};

/// Track index for each detection (-1: unmatched). Maximises the number of
/// gated same-class matches, then minimises the summed distance.
inline std::vector<int> min_cost_assignment(const std::vector<Point>& tracks,
                                            const std::vector<Point>& dets, double gate) {
  const std::size_t nd = dets.size();
  std::vector<int> current(nd, -1), best(nd, -1);
  std::vector<bool> used(tracks.size(), false);
  int bestMatches = -1;
  double bestCost = std::numeric_limits<double>::infinity();

  auto dist = [](const Vec3& a, const Vec3& b) {
    return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                     (a.z - b.z) * (a.z - b.z));
  };
  auto recurse = [&](auto&& self, std::size_t d, int matches, double cost) -> void {
    if (d == nd) {
      if (matches > bestMatches || (matches == bestMatches && cost < bestCost - 1e-12)) {
        bestMatches = matches;
        bestCost = cost;
        best = current;
      }
      return;
    }
    current[d] = -1;
    self(self, d + 1, matches, cost);
    for (std::size_t t = 0; t < tracks.size(); ++t) {
      if (used[t] || tracks[t].cls != dets[d].cls) continue;
      const double c = dist(tracks[t].p, dets[d].p);
      if (c > gate) continue;
      used[t] = true;
      current[d] = static_cast<int>(t);
      self(self, d + 1, matches + 1, cost + c);
      used[t] = false;
      current[d] = -1;
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return best;
}

// ---------------------------------------------------------------------------
// Layout: candidate geometry and objective, written from the definition.
// ---------------------------------------------------------------------------

struct Frame {
  double w, h;
};

inline Rect clamp_into(Rect r, Frame f) {
  r.w = std::min(std::max(r.w, 0.0), f.w);
  r.h = std::min(std::max(r.h, 0.0), f.h);
  r.x = std::min(std::max(r.x, 0.0), f.w - r.w);
  r.y = std::min(std::max(r.y, 0.0), f.h - r.h);
  return r;
}

inline double overlap(const Rect& a, const Rect& b) {
  const double w = std::min(a.x + a.w, b.x + b.w) - std::max(a.x, b.x);
  const double h = std::min(a.y + a.h, b.y + b.h) - std::max(a.y, b.y);
  return w > 0 && h > 0 ? w * h : 0;
}

/// N, NE, E, SE, S, SW, W, NW around the anchor, `margin` px away, clamped.
inline std::array<Rect, 8> candidates(const Rect& a, double w, double h, Frame f, double margin) {
  const double cx = a.x + a.w / 2, cy = a.y + a.h / 2;
  const double top = a.y - margin - h, bottom = a.y + a.h + margin;
  const double left = a.x - margin - w, right = a.x + a.w + margin;
  const std::array<Rect, 8> raw = {{
      {cx - w / 2, top, w, h},    {right, top, w, h},    {right, cy - h / 2, w, h},
      {right, bottom, w, h},      {cx - w / 2, bottom, w, h}, {left, bottom, w, h},
      {left, cy - h / 2, w, h},   {left, top, w, h},
  }};
  std::array<Rect, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = clamp_into(raw[i], f);
  return out;
}

struct Weights {
  double face, object, vis, top, prev;
};

struct Scene {
  Frame frame;
  std::optional<Rect> face;
  std::vector<Rect> objects;
  std::vector<Rect> placed;
  std::optional<Rect> previous;
};

inline double objective(const Rect& c, bool isNorth, const Scene& s, const Weights& w) {
  double v = 0;
  if (s.face) v -= w.face * overlap(c, *s.face) / 1000;
  for (const auto& o : s.objects) v -= w.object * overlap(c, o) / 1000;
  for (const auto& p : s.placed) v -= w.vis * overlap(c, p) / 1000;
  if (isNorth) v += w.top;
  if (s.previous) {
    const double dx = (c.x + c.w / 2) - (s.previous->x + s.previous->w / 2);
    const double dy = (c.y + c.h / 2) - (s.previous->y + s.previous->h / 2);
    const double diag = std::sqrt(s.frame.w * s.frame.w + s.frame.h * s.frame.h);
    v += w.prev * std::max(0.0, 1 - std::sqrt(dx * dx + dy * dy) / diag);
  }
  return v;
}

/// Index of the best of the 8 candidates; earliest wins ties.
inline int exhaustive_argmax(const std::array<Rect, 8>& cands, const Scene& s, const Weights& w) {
  int best = 0;
  double bestScore = objective(cands[0], true, s, w);
  for (int i = 1; i < 8; ++i) {
    const double v = objective(cands[i], false, s, w);
    if (v > bestScore) {
      best = i;
      bestScore = v;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Two-threshold switches.
// ---------------------------------------------------------------------------

/// On when the signal rises above `on`, off when it falls below `off`.
struct RisingSwitch {
  double on, off;
  bool state = false;
  /// +1 on a rising edge, -1 on a falling edge, 0 otherwise.
  int feed(double x) {
    if (!state && x > on) {
      state = true;
      return 1;
    }
    if (state && x < off) {
      state = false;
      return -1;
    }
    return 0;
  }
};

/// On when the signal falls below `on`, off when it rises above `off`.
struct FallingSwitch {
  double on, off;
  bool state = false;
  int feed(double x) {
    if (!state && x < on) {
      state = true;
      return 1;
    }
    if (state && x > off) {
      state = false;
      return -1;
    }
    return 0;
  }
};

}  // namespace tt_oracle
