// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <utility>

namespace tabletale {

namespace {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) {
  for (const auto& [e, name] : table)
    if (name == s) return e;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table,
                         E e) {
  for (const auto& [v, name] : table)
    if (v == e) return name;
  return "?";
}

constexpr std::array<std::pair<VisCommand, std::string_view>, 9> kCommandNames{{
    {VisCommand::ShowHide, "ShowHide"},
    {VisCommand::Scale, "Scale"},
    {VisCommand::ComposeDecompose, "ComposeDecompose"},
    {VisCommand::SelectDataPoint, "SelectDataPoint"},
    {VisCommand::SelectDataSeries, "SelectDataSeries"},
    {VisCommand::ChangeChartType, "ChangeChartType"},
    {VisCommand::ChangeDataSource, "ChangeDataSource"},
    {VisCommand::HierarchicalNavigation, "HierarchicalNavigation"},
    {VisCommand::Annotation, "Annotation"},
}};

constexpr std::array<std::pair<ChartType, std::string_view>, 5> kChartNames{{
    {ChartType::Bar, "bar"},
    {ChartType::Line, "line"},
    {ChartType::Pie, "pie"},
    {ChartType::Donut, "donut"},
    {ChartType::Radar, "radar"},
}};

constexpr std::array<std::pair<HandSide, std::string_view>, 2> kHandNames{{
    {HandSide::Left, "left"},
    {HandSide::Right, "right"},
}};

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::NonMonotonicFrame: return "NonMonotonicFrame";
    case ErrorCode::StreamOrder: return "StreamOrder";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::BaselineNotCalibrated: return "BaselineNotCalibrated";
    case ErrorCode::IncompatibleCharts: return "IncompatibleCharts";
    case ErrorCode::NotComposite: return "NotComposite";
    case ErrorCode::OracleUnavailable: return "OracleUnavailable";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::UnknownScenario: return "UnknownScenario";
    case ErrorCode::Validation: return "Validation";
    case ErrorCode::Network: return "Network";
  }
  return "?";
}

double distance(const Vec3& a, const Vec3& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

double rect_overlap_area(const Rect& a, const Rect& b) {
  double w = std::min(a.right(), b.right()) - std::max(a.x, b.x);
  double h = std::min(a.bottom(), b.bottom()) - std::max(a.y, b.y);
  if (w <= 0 || h <= 0) return 0;
  return w * h;
}

Rect rect_union(const Rect& a, const Rect& b) {
  double x0 = std::min(a.x, b.x), y0 = std::min(a.y, b.y);
  double x1 = std::max(a.right(), b.right()), y1 = std::max(a.bottom(), b.bottom());
  return {x0, y0, x1 - x0, y1 - y0};
}

Rect clamp_to_frame(Rect r, FrameSize frame) {
  r.w = std::clamp(r.w, 0.0, frame.w);
  r.h = std::clamp(r.h, 0.0, frame.h);
  r.x = std::clamp(r.x, 0.0, frame.w - r.w);
  r.y = std::clamp(r.y, 0.0, frame.h - r.h);
  return r;
}

std::string_view to_string(HandSide side) { return name_of(kHandNames, side); }
std::optional<HandSide> hand_side_from_string(std::string_view s) {
  return lookup(kHandNames, s);
}

std::string_view to_string(VisCommand c) { return name_of(kCommandNames, c); }
std::optional<VisCommand> vis_command_from_string(std::string_view s) {
  return lookup(kCommandNames, s);
}

std::string_view to_string(ChartType t) { return name_of(kChartNames, t); }
std::optional<ChartType> chart_type_from_string(std::string_view s) {
  return lookup(kChartNames, s);
}

const DataPoint* DataSeries::find(std::string_view category) const {
  for (const auto& p : points)
    if (p.category == category) return &p;
  return nullptr;
}

const DataSeries* ChartSpec::find_series(std::string_view name) const {
  for (const auto& s : series)
    if (s.name == name) return &s;
  return nullptr;
}

std::vector<std::string> ChartSpec::categories() const {
  std::vector<std::string> out;
  std::set<std::string, std::less<>> seen;
  for (const auto& s : series)
    for (const auto& p : s.points)
      if (seen.insert(p.category).second) out.push_back(p.category);
  return out;
}

bool operator==(const ChartSpec& a, const ChartSpec& b) {
  if (a.chartType != b.chartType || a.series != b.series || a.title != b.title ||
      a.sourceTag != b.sourceTag)
    return false;
  if (!a.detailVariant || !b.detailVariant)
    return !a.detailVariant && !b.detailVariant;
  return *a.detailVariant == *b.detailVariant;
}

std::vector<std::string> chart_spec_problems(const ChartSpec& spec) {
  std::vector<std::string> out;
  if (spec.series.empty()) out.push_back("series: must be non-empty");
  std::set<std::string> names;
  for (const auto& s : spec.series) {
    if (!names.insert(s.name).second)
      out.push_back("series: duplicate series name '" + s.name + "'");
    std::set<std::string> cats;
    for (const auto& p : s.points) {
      if (!cats.insert(p.category).second)
        out.push_back("category: duplicate category '" + p.category +
                      "' in series '" + s.name + "'");
      if (!std::isfinite(p.value))
        out.push_back("value: non-finite value in series '" + s.name + "'");
      else if ((spec.chartType == ChartType::Pie ||
                spec.chartType == ChartType::Donut) &&
               p.value < 0)
        out.push_back("value: negative value in " +
                      std::string(to_string(spec.chartType)) + " series '" +
                      s.name + "'");
    }
  }
  if (spec.detailVariant) {
    if (spec.detailVariant->sourceTag != spec.sourceTag)
      out.push_back("detail: detail variant sourceTag '" +
                    spec.detailVariant->sourceTag + "' differs from '" +
                    spec.sourceTag + "'");
    for (auto& p : chart_spec_problems(*spec.detailVariant))
      out.push_back("detail." + p);
  }
  return out;
}

}  // namespace tabletale
