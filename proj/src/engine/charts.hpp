// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "engine/types.hpp"

namespace tabletale::charts {

enum class Orientation { Horizontal, Vertical };
std::string_view to_string(Orientation o);
std::optional<Orientation> orientation_from_string(std::string_view s);

enum class CompositionKind { Clustered, Stacked, Overlay };
std::string_view to_string(CompositionKind k);
std::optional<CompositionKind> composition_kind_from_string(std::string_view s);

struct ChartParams {
  double refDistance = 0.7;
  double scaleMin = 0.5;
  double scaleMax = 2.5;
  double baseWidth = 240;
  double baseHeight = 160;
  friend bool operator==(const ChartParams&, const ChartParams&) = default;
};

struct MarkRect {
  std::string series;
  std::string category;
  Rect rect;
  friend bool operator==(const MarkRect&, const MarkRect&) = default;
};

using Anchor = std::variant<ObjectId, PairKey>;
using PointKey = std::pair<std::string, std::string>;  // (series, category)

/// Where a composite's series came from.
struct SeriesOrigin {
  std::string compositeName;
  std::size_t member = 0;
  std::string memberName;
  friend bool operator==(const SeriesOrigin&, const SeriesOrigin&) = default;
};

struct VisInstance {
  int visId = 0;
  ChartSpec spec;
  Anchor anchor;
  std::set<std::string> highlightSeries;
  std::set<PointKey> highlightPoints;
  double scale = 1.0;
  Rect placedRect;
  std::vector<MarkRect> markRects;

  // Composite-only state; empty for singletons.
  std::optional<CompositionKind> composition;
  std::vector<VisInstance> members;
  std::vector<SeriesOrigin> origins;

  bool is_composite() const { return composition.has_value(); }
  friend bool operator==(const VisInstance&, const VisInstance&) = default;
};

/// Which composite a pair of chart types forms for the given alignment.
/// Throws Error{IncompatibleCharts} for cross-type pairs.
CompositionKind composition_kind(ChartType a, ChartType b, Orientation o);

/// Builds a composite from two singletons. An empty title defaults to
/// "<a> + <b>".
VisInstance compose(const VisInstance& a, const VisInstance& b, Orientation o,
                    int visId, const std::string& title = {});

/// Recovers the members of a composite, carrying back any selection made on
/// the composite. Throws Error{NotComposite}.
std::pair<VisInstance, VisInstance> decompose(const VisInstance& composite);

/// Replaces the chart while keeping anchor and scale; highlights are cleared.
VisInstance apply_swap(VisInstance v, ChartSpec newSpec);

/// Nearest mark whose center is within `snapRadius`; ties go to the
/// lexicographically smaller (series, category).
std::optional<PointKey> hit_test(const VisInstance& v, Point2 p, double snapRadius);

double scale_for_distance(double cameraDistance, const ChartParams& params);

/// Renderer-independent mark positions for a chart drawn into `area`.
std::vector<MarkRect> mark_geometry(const ChartSpec& spec,
                                    std::optional<CompositionKind> composition,
                                    const Rect& area);

/// Per-category sum over all series (the stacked-bar totals).
std::map<std::string, double> category_totals(const ChartSpec& spec);

}  // namespace tabletale::charts
