// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tabletale {

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  InvalidArgument,
  Io,
  SchemaMismatch,
  MalformedRecord,
  NonMonotonicFrame,
  StreamOrder,
  InsufficientSamples,
  BaselineNotCalibrated,
  IncompatibleCharts,
  NotComposite,
  OracleUnavailable,
  ProtocolError,
  UnknownScenario,
  Validation,
  Network,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  /// Errors tied to a line of an input file carry its 1-based number.
  Error(ErrorCode code, const std::string& what, std::size_t line)
      : std::runtime_error(what), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> line_;
};

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

/// Camera-centered physical position in meters. z is the distance along the
/// optical axis, y points up.
struct Vec3 {
  double x = 0, y = 0, z = 0;
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

double distance(const Vec3& a, const Vec3& b);

struct Point2 {
  double x = 0, y = 0;
  friend bool operator==(const Point2&, const Point2&) = default;
};

/// Screen rectangle in pixels, origin top-left.
struct Rect {
  double x = 0, y = 0, w = 0, h = 0;

  double area() const { return w * h; }
  double right() const { return x + w; }
  double bottom() const { return y + h; }
  Point2 center() const { return {x + w / 2, y + h / 2}; }
  bool contains(Point2 p) const {
    return p.x >= x && p.x <= x + w && p.y >= y && p.y <= y + h;
  }
  friend bool operator==(const Rect&, const Rect&) = default;
};

double rect_overlap_area(const Rect& a, const Rect& b);
Rect rect_union(const Rect& a, const Rect& b);

struct FrameSize {
  double w = 1280, h = 720;
  friend bool operator==(const FrameSize&, const FrameSize&) = default;
};

/// Moves `r` inside the frame; shrinks it first if it cannot fit.
Rect clamp_to_frame(Rect r, FrameSize frame);

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

struct ObjectClass {
  std::string label;
  friend auto operator<=>(const ObjectClass&, const ObjectClass&) = default;
};

struct ObjectId {
  int value = 0;
  friend auto operator<=>(const ObjectId&, const ObjectId&) = default;
};

/// Canonically ordered pair of object ids (a < b).
struct PairKey {
  ObjectId a, b;
  static PairKey of(ObjectId x, ObjectId y) {
    return x < y ? PairKey{x, y} : PairKey{y, x};
  }
  friend auto operator<=>(const PairKey&, const PairKey&) = default;
};

enum class HandSide { Left, Right };
std::string_view to_string(HandSide side);
std::optional<HandSide> hand_side_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// Visualization commands
// ---------------------------------------------------------------------------

enum class VisCommand {
  ShowHide,
  Scale,
  ComposeDecompose,
  SelectDataPoint,
  SelectDataSeries,
  ChangeChartType,
  ChangeDataSource,
  HierarchicalNavigation,
  Annotation,
};

inline constexpr VisCommand kAllCommands[] = {
    VisCommand::ShowHide,         VisCommand::Scale,
    VisCommand::ComposeDecompose, VisCommand::SelectDataPoint,
    VisCommand::SelectDataSeries, VisCommand::ChangeChartType,
    VisCommand::ChangeDataSource, VisCommand::HierarchicalNavigation,
    VisCommand::Annotation,
};

std::string_view to_string(VisCommand c);
std::optional<VisCommand> vis_command_from_string(std::string_view s);

// ---------------------------------------------------------------------------
// Chart data
// ---------------------------------------------------------------------------

enum class ChartType { Bar, Line, Pie, Donut, Radar };
std::string_view to_string(ChartType t);
std::optional<ChartType> chart_type_from_string(std::string_view s);

struct DataPoint {
  std::string category;
  double value = 0;
  friend bool operator==(const DataPoint&, const DataPoint&) = default;
};

struct DataSeries {
  std::string name;
  std::vector<DataPoint> points;

  const DataPoint* find(std::string_view category) const;
  friend bool operator==(const DataSeries&, const DataSeries&) = default;
};

struct ChartSpec {
  ChartType chartType = ChartType::Bar;
  std::vector<DataSeries> series;
  std::string title;
  std::string sourceTag;
  /// Shown when the anchor object is in the near distance band.
  std::shared_ptr<const ChartSpec> detailVariant;

  const DataSeries* find_series(std::string_view name) const;
  /// Union of categories over all series, in first-seen order.
  std::vector<std::string> categories() const;
  friend bool operator==(const ChartSpec& a, const ChartSpec& b);
};

/// Image reference plus caption shown next to an object.
struct Annotation {
  std::string imageRef;
  std::string text;
  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Invariant violations of a chart spec, as human-readable strings prefixed
/// by the offending field name. Empty when valid.
std::vector<std::string> chart_spec_problems(const ChartSpec& spec);

}  // namespace tabletale
