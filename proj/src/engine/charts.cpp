// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/charts.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace tabletale::charts {

namespace {

constexpr double kVertexMark = 8;
constexpr double kSectorMark = 12;

Rect square_at(Point2 c, double size) {
  return {c.x - size / 2, c.y - size / 2, size, size};
}

std::string unique_name(const std::string& wanted, const std::string& prefix,
                        const std::set<std::string>& taken) {
  if (!taken.count(wanted)) return wanted;
  std::string name = prefix + ": " + wanted;
  for (int i = 2; taken.count(name); ++i)
    name = prefix + ": " + wanted + " (" + std::to_string(i) + ")";
  return name;
}

// Aligns a series to the category axis: bars get zeros for missing
// categories, lines keep gaps.
DataSeries align(const DataSeries& s, const std::vector<std::string>& axis,
                 ChartType type) {
  DataSeries out{s.name, {}};
  for (const auto& cat : axis) {
    if (const auto* p = s.find(cat))
      out.points.push_back(*p);
    else if (type == ChartType::Bar)
      out.points.push_back({cat, 0.0});
  }
  return out;
}

double max_value(const ChartSpec& spec) {
  double m = 0;
  for (const auto& s : spec.series)
    for (const auto& p : s.points) m = std::max(m, p.value);
  return m;
}

}  // namespace

std::string_view to_string(Orientation o) {
  return o == Orientation::Horizontal ? "horizontal" : "vertical";
}

std::optional<Orientation> orientation_from_string(std::string_view s) {
  if (s == "horizontal") return Orientation::Horizontal;
  if (s == "vertical") return Orientation::Vertical;
  return std::nullopt;
}

std::string_view to_string(CompositionKind k) {
  switch (k) {
    case CompositionKind::Clustered: return "clustered";
    case CompositionKind::Stacked: return "stacked";
    case CompositionKind::Overlay: return "overlay";
  }
  return "?";
}

std::optional<CompositionKind> composition_kind_from_string(std::string_view s) {
  if (s == "clustered") return CompositionKind::Clustered;
  if (s == "stacked") return CompositionKind::Stacked;
  if (s == "overlay") return CompositionKind::Overlay;
  return std::nullopt;
}

CompositionKind composition_kind(ChartType a, ChartType b, Orientation o) {
  if (a != b)
    throw Error(ErrorCode::IncompatibleCharts,
                "cannot compose " + std::string(to_string(a)) + " with " +
                    std::string(to_string(b)));
  if (a == ChartType::Bar)
    return o == Orientation::Horizontal ? CompositionKind::Clustered
                                        : CompositionKind::Stacked;
  return CompositionKind::Overlay;
}

VisInstance compose(const VisInstance& a, const VisInstance& b, Orientation o,
                    int visId, const std::string& title) {
  if (a.is_composite() || b.is_composite())
    throw Error(ErrorCode::IncompatibleCharts, "composites cannot be nested");
  const CompositionKind kind = composition_kind(a.spec.chartType, b.spec.chartType, o);
  const ChartType type = a.spec.chartType;

  VisInstance c;
  c.visId = visId;
  c.composition = kind;
  c.members = {a, b};
  c.scale = std::max(a.scale, b.scale);
  c.spec.chartType = type;
  c.spec.title = title.empty() ? a.spec.title + " + " + b.spec.title : title;
  c.spec.sourceTag = a.spec.sourceTag == b.spec.sourceTag
                         ? a.spec.sourceTag
                         : a.spec.sourceTag + "+" + b.spec.sourceTag;

  ChartSpec merged;
  merged.series = a.spec.series;
  merged.series.insert(merged.series.end(), b.spec.series.begin(), b.spec.series.end());
  const std::vector<std::string> axis = merged.categories();
  const bool alignAxis = type == ChartType::Bar || type == ChartType::Line;

  std::set<std::string> taken;
  const VisInstance* parts[] = {&a, &b};
  for (std::size_t m = 0; m < 2; ++m) {
    const VisInstance& member = *parts[m];
    for (const auto& s : member.spec.series) {
      DataSeries ds = alignAxis ? align(s, axis, type) : s;
      ds.name = unique_name(s.name, member.spec.title, taken);
      taken.insert(ds.name);
      c.origins.push_back({ds.name, m, s.name});
      if (member.highlightSeries.count(s.name)) c.highlightSeries.insert(ds.name);
      for (const auto& [series, cat] : member.highlightPoints)
        if (series == s.name) c.highlightPoints.insert({ds.name, cat});
      c.spec.series.push_back(std::move(ds));
    }
  }
  return c;
}

std::pair<VisInstance, VisInstance> decompose(const VisInstance& composite) {
  if (!composite.is_composite() || composite.members.size() != 2)
    throw Error(ErrorCode::NotComposite,
                "vis " + std::to_string(composite.visId) + " is not a composite");
  VisInstance parts[2] = {composite.members[0], composite.members[1]};
  for (auto& p : parts) {
    p.highlightSeries.clear();
    p.highlightPoints.clear();
  }
  for (const auto& o : composite.origins) {
    auto& member = parts[o.member];
    if (composite.highlightSeries.count(o.compositeName))
      member.highlightSeries.insert(o.memberName);
    for (const auto& [series, cat] : composite.highlightPoints)
      if (series == o.compositeName) member.highlightPoints.insert({o.memberName, cat});
  }
  return {std::move(parts[0]), std::move(parts[1])};
}

VisInstance apply_swap(VisInstance v, ChartSpec newSpec) {
  v.spec = std::move(newSpec);
  v.highlightSeries.clear();
  v.highlightPoints.clear();
  v.markRects.clear();
  return v;
}

std::optional<PointKey> hit_test(const VisInstance& v, Point2 p, double snapRadius) {
  std::optional<std::tuple<double, std::string, std::string>> best;
  for (const auto& m : v.markRects) {
    Point2 c = m.rect.center();
    double d = std::hypot(c.x - p.x, c.y - p.y);
    if (d > snapRadius) continue;
    auto key = std::make_tuple(d, m.series, m.category);
    if (!best || key < *best) best = std::move(key);
  }
  if (!best) return std::nullopt;
  return PointKey{std::get<1>(*best), std::get<2>(*best)};
}

double scale_for_distance(double cameraDistance, const ChartParams& params) {
  if (cameraDistance <= 0) return params.scaleMax;
  return std::clamp(params.refDistance / cameraDistance, params.scaleMin,
                    params.scaleMax);
}

std::map<std::string, double> category_totals(const ChartSpec& spec) {
  std::map<std::string, double> totals;
  for (const auto& s : spec.series)
    for (const auto& p : s.points) totals[p.category] += p.value;
  return totals;
}

std::vector<MarkRect> mark_geometry(const ChartSpec& spec,
                                    std::optional<CompositionKind> composition,
                                    const Rect& area) {
  std::vector<MarkRect> out;
  const std::vector<std::string> cats = spec.categories();
  if (cats.empty() || area.w <= 0 || area.h <= 0) return out;
  const double n = static_cast<double>(cats.size());
  const double band = area.w / n;

  switch (spec.chartType) {
    case ChartType::Bar: {
      if (composition == CompositionKind::Stacked) {
        double top = 0;
        for (const auto& [cat, total] : category_totals(spec)) top = std::max(top, total);
        for (std::size_t i = 0; i < cats.size(); ++i) {
          double base = area.bottom();
          for (const auto& s : spec.series) {
            const auto* p = s.find(cats[i]);
            if (!p) continue;
            double h = top > 0 ? std::max(0.0, p->value) / top * area.h : 0;
            base -= h;
            out.push_back({s.name, cats[i], {area.x + i * band, base, band, h}});
          }
        }
      } else {
        double top = max_value(spec);
        double k = static_cast<double>(spec.series.size());
        for (std::size_t i = 0; i < cats.size(); ++i) {
          for (std::size_t j = 0; j < spec.series.size(); ++j) {
            const auto* p = spec.series[j].find(cats[i]);
            if (!p) continue;
            double h = top > 0 ? std::max(0.0, p->value) / top * area.h : 0;
            double w = band / k;
            out.push_back({spec.series[j].name, cats[i],
                           {area.x + i * band + j * w, area.bottom() - h, w, h}});
          }
        }
      }
      break;
    }
    case ChartType::Line: {
      double lo = 0, hi = 0;
      bool first = true;
      for (const auto& s : spec.series)
        for (const auto& p : s.points) {
          lo = first ? p.value : std::min(lo, p.value);
          hi = first ? p.value : std::max(hi, p.value);
          first = false;
        }
      for (const auto& s : spec.series)
        for (std::size_t i = 0; i < cats.size(); ++i) {
          const auto* p = s.find(cats[i]);
          if (!p) continue;
          double frac = hi > lo ? (p->value - lo) / (hi - lo) : 0.5;
          Point2 c{area.x + (i + 0.5) * band, area.bottom() - frac * area.h};
          out.push_back({s.name, cats[i], square_at(c, kVertexMark)});
        }
      break;
    }
    case ChartType::Radar: {
      double top = max_value(spec);
      Point2 c = area.center();
      double radius = std::min(area.w, area.h) / 2;
      for (const auto& s : spec.series)
        for (std::size_t i = 0; i < cats.size(); ++i) {
          const auto* p = s.find(cats[i]);
          if (!p) continue;
          double angle = -std::numbers::pi / 2 + 2 * std::numbers::pi * i / n;
          double r = top > 0 ? std::max(0.0, p->value) / top * radius : 0;
          out.push_back({s.name, cats[i],
                         square_at({c.x + r * std::cos(angle), c.y + r * std::sin(angle)},
                                   kVertexMark)});
        }
      break;
    }
    case ChartType::Pie:
    case ChartType::Donut: {
      Point2 c = area.center();
      double radius = std::min(area.w, area.h) / 2;
      double inner = spec.chartType == ChartType::Donut ? radius / 2 : 0;
      double ring = (radius - inner) / static_cast<double>(spec.series.size());
      for (std::size_t j = 0; j < spec.series.size(); ++j) {
        const auto& s = spec.series[j];
        double sum = 0;
        for (const auto& p : s.points) sum += std::max(0.0, p.value);
        double r = inner + ring * (j + 0.5);
        double start = -std::numbers::pi / 2;
        for (const auto& p : s.points) {
          double sweep = sum > 0 ? std::max(0.0, p.value) / sum * 2 * std::numbers::pi : 0;
          double mid = start + sweep / 2;
          start += sweep;
          out.push_back({s.name, p.category,
                         square_at({c.x + r * std::cos(mid), c.y + r * std::sin(mid)},
                                   kSectorMark)});
        }
      }
      break;
    }
  }
  return out;
}

}  // namespace tabletale::charts
