// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <istream>
#include <ostream>

#include "engine/io.hpp"
#include "engine/io_json.hpp"

namespace tabletale::io {

using namespace detail;

namespace {

template <class T>
std::optional<T> opt_enum(const Json& j, const char* key,
                          std::optional<T> (*lookup)(std::string_view), std::size_t line) {
  if (!j.contains(key)) return std::nullopt;
  return enum_at(j, key, lookup, line);
}

std::optional<ObjectId> opt_object(const Json& j, const char* key, std::size_t line) {
  if (auto v = opt_int_at(j, key, line)) return ObjectId{static_cast<int>(*v)};
  return std::nullopt;
}

std::optional<int> opt_small_int(const Json& j, const char* key, std::size_t line) {
  if (auto v = opt_int_at(j, key, line)) return static_cast<int>(*v);
  return std::nullopt;
}

void expect_header(std::istream& in, const char* schema) {
  std::string text;
  if (!std::getline(in, text)) throw Error(ErrorCode::SchemaMismatch, "missing log header");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw Error(ErrorCode::SchemaMismatch, "log header is not JSON", 1);
  }
  if (!j.is_object() || j.value("schema", std::string()) != schema ||
      j.value("schemaVersion", 0) != kSchemaVersion || j.value("type", std::string()) != "header")
    throw Error(ErrorCode::SchemaMismatch, std::string("not a ") + schema + " log", 1);
}

Json string_array(const auto& items) {
  Json a = Json::array();
  for (const auto& s : items) a.push_back(s);
  return a;
}

Json array_at(const Json& j, const char* key, std::size_t line) {
  const Json& a = required(j, key, line);
  if (!a.is_array()) malformed(std::string(key) + " must be an array", line);
  return a;
}

}  // namespace

// ---------------------------------------------------------------------------
// Events and effects
// ---------------------------------------------------------------------------

Json to_json(const events::ManipulationEvent& e) {
  Json j = {{"frameIndex", e.frameIndex}, {"kind", to_string(e.kind)}, {"t", e.timestamp}};
  if (e.object) j["object"] = e.object->value;
  if (e.other) j["other"] = e.other->value;
  if (e.orientation) j["orientation"] = to_string(*e.orientation);
  if (e.band) j["band"] = to_string(*e.band);
  put_opt(j, "visId", e.visId);
  put_opt(j, "series", e.seriesName);
  put_opt(j, "category", e.category);
  put_opt(j, "condition", e.conditionId);
  put_opt(j, "sceneIndex", e.sceneIndex);
  put_opt(j, "scene", e.sceneName);
  return j;
}

static events::ManipulationEvent event_from_json_at(const Json& j, std::size_t line) {
  events::ManipulationEvent e;
  e.kind = enum_at(j, "kind", events::event_kind_from_string, line);
  e.frameIndex = int_at(j, "frameIndex", line);
  e.timestamp = number_at(j, "t", line);
  e.object = opt_object(j, "object", line);
  e.other = opt_object(j, "other", line);
  e.orientation = opt_enum(j, "orientation", charts::orientation_from_string, line);
  e.band = opt_enum(j, "band", events::distance_band_from_string, line);
  e.visId = opt_small_int(j, "visId", line);
  e.seriesName = opt_string_at(j, "series", line);
  e.category = opt_string_at(j, "category", line);
  e.conditionId = opt_string_at(j, "condition", line);
  e.sceneIndex = opt_small_int(j, "sceneIndex", line);
  e.sceneName = opt_string_at(j, "scene", line);
  return e;
}

events::ManipulationEvent event_from_json(const Json& j) { return event_from_json_at(j, 0); }

Json to_json(const scene::VisEffect& e) {
  Json j = {{"kind", to_string(e.kind)}};
  put_opt(j, "visId", e.visId);
  if (e.object) j["object"] = e.object->value;
  put_opt(j, "title", e.title);
  if (e.chartType) j["chartType"] = to_string(*e.chartType);
  if (e.composition) j["composition"] = to_string(*e.composition);
  put_opt(j, "series", e.series);
  put_opt(j, "category", e.category);
  put_opt(j, "text", e.text);
  put_opt(j, "image", e.imageRef);
  return j;
}

static scene::VisEffect effect_from_json_at(const Json& j, std::size_t line) {
  check_keys(j,
             {"category", "chartType", "composition", "image", "kind", "object", "series", "text",
              "title", "visId"},
             "effect", line);
  scene::VisEffect e;
  e.kind = enum_at(j, "kind", scene::effect_kind_from_string, line);
  e.visId = opt_small_int(j, "visId", line);
  e.object = opt_object(j, "object", line);
  e.title = opt_string_at(j, "title", line);
  e.chartType = opt_enum(j, "chartType", chart_type_from_string, line);
  e.composition = opt_enum(j, "composition", charts::composition_kind_from_string, line);
  e.series = opt_string_at(j, "series", line);
  e.category = opt_string_at(j, "category", line);
  e.text = opt_string_at(j, "text", line);
  e.imageRef = opt_string_at(j, "image", line);
  return e;
}

scene::VisEffect effect_from_json(const Json& j) { return effect_from_json_at(j, 0); }

std::string event_log_header() {
  return canonical({{"schema", kEventSchema}, {"schemaVersion", kSchemaVersion},
                    {"type", "header"}});
}

std::string event_line(const EventRecord& r) {
  Json j = to_json(r.event);
  Json effects = Json::array();
  for (const auto& e : r.effects) effects.push_back(to_json(e));
  j["effects"] = effects;
  put_opt(j, "diagnostic", r.diagnostic);
  j["type"] = "event";
  return canonical(j);
}

EventRecord parse_event_line(const std::string& text, std::size_t line) {
  Json j = parse_line(text, line);
  check_keys(j,
             {"band", "category", "condition", "diagnostic", "effects", "frameIndex", "kind",
              "object", "orientation", "other", "scene", "sceneIndex", "series", "t", "type",
              "visId"},
             "event record", line);
  if (string_at(j, "type", line) != "event") malformed("expected an event record", line);
  EventRecord r;
  r.event = event_from_json_at(j, line);
  for (const auto& e : array_at(j, "effects", line)) r.effects.push_back(effect_from_json_at(e, line));
  r.diagnostic = opt_string_at(j, "diagnostic", line);
  return r;
}

void write_event_log(std::ostream& out, const std::vector<EventRecord>& records) {
  out << event_log_header() << '\n';
  for (const auto& r : records) out << event_line(r) << '\n';
  if (!out) throw Error(ErrorCode::Io, "event log write failed");
}

std::vector<EventRecord> read_event_log(std::istream& in) {
  expect_header(in, kEventSchema);
  std::vector<EventRecord> out;
  std::string text;
  std::size_t line = 1;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty()) out.push_back(parse_event_line(text, line));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Charts and panel
// ---------------------------------------------------------------------------

Json to_json(const ChartSpec& c) {
  Json series = Json::array();
  for (const auto& s : c.series) {
    Json points = Json::array();
    for (const auto& p : s.points) points.push_back({{"category", p.category}, {"value", p.value}});
    series.push_back({{"name", s.name}, {"points", points}});
  }
  return {{"chartType", to_string(c.chartType)},
          {"series", series},
          {"sourceTag", c.sourceTag},
          {"title", c.title}};
}

static ChartSpec chart_from_json_at(const Json& j, std::size_t line) {
  check_keys(j, {"chartType", "series", "sourceTag", "title"}, "chart", line);
  ChartSpec c;
  c.chartType = enum_at(j, "chartType", chart_type_from_string, line);
  c.title = string_at(j, "title", line);
  c.sourceTag = string_at(j, "sourceTag", line);
  for (const auto& s : array_at(j, "series", line)) {
    check_keys(s, {"name", "points"}, "series", line);
    DataSeries ds;
    ds.name = string_at(s, "name", line);
    for (const auto& p : array_at(s, "points", line)) {
      check_keys(p, {"category", "value"}, "point", line);
      ds.points.push_back({string_at(p, "category", line), number_at(p, "value", line)});
    }
    c.series.push_back(std::move(ds));
  }
  return c;
}

ChartSpec chart_from_json(const Json& j) { return chart_from_json_at(j, 0); }

Json to_json(const scene::PresenterPanel& p) {
  Json bindings = Json::array();
  for (const auto& b : p.objectToChart) bindings.push_back({{"chart", b.chartTitle}, {"object", b.object}});
  Json commands = Json::array();
  for (auto c : p.activeCommands) commands.push_back(to_string(c));
  Json swaps = Json::array();
  for (const auto& s : p.registeredSwaps)
    swaps.push_back({{"chart", s.chartTitle}, {"prompt", s.conditionPrompt}, {"target", s.target}});
  return {{"bindings", bindings},
          {"commands", commands},
          {"compositions", string_array(p.registeredCompositions)},
          {"scene", p.sceneName},
          {"sceneCount", p.sceneCount},
          {"sceneIndex", p.sceneIndex},
          {"swaps", swaps}};
}

static scene::PresenterPanel panel_from_json_at(const Json& j, std::size_t line) {
  check_keys(j, {"bindings", "commands", "compositions", "scene", "sceneCount", "sceneIndex", "swaps"},
             "panel", line);
  scene::PresenterPanel p;
  p.sceneName = string_at(j, "scene", line);
  p.sceneIndex = static_cast<int>(int_at(j, "sceneIndex", line));
  p.sceneCount = static_cast<int>(int_at(j, "sceneCount", line));
  for (const auto& b : array_at(j, "bindings", line)) {
    check_keys(b, {"chart", "object"}, "panel binding", line);
    p.objectToChart.push_back({string_at(b, "object", line), string_at(b, "chart", line)});
  }
  for (const auto& c : array_at(j, "commands", line)) {
    auto cmd = vis_command_from_string(as_string(c, "command", line));
    if (!cmd) malformed("unknown command", line);
    p.activeCommands.push_back(*cmd);
  }
  for (const auto& s : array_at(j, "swaps", line)) {
    check_keys(s, {"chart", "prompt", "target"}, "panel swap", line);
    p.registeredSwaps.push_back(
        {string_at(s, "prompt", line), string_at(s, "target", line), string_at(s, "chart", line)});
  }
  for (const auto& c : array_at(j, "compositions", line))
    p.registeredCompositions.push_back(as_string(c, "composition", line));
  return p;
}

scene::PresenterPanel panel_from_json(const Json& j) { return panel_from_json_at(j, 0); }

// ---------------------------------------------------------------------------
// Render frames
// ---------------------------------------------------------------------------

std::string render_log_header(FrameSize frameSize) {
  return canonical({{"frameSize", Json::array({frameSize.w, frameSize.h})},
                    {"schema", kRenderSchema},
                    {"schemaVersion", kSchemaVersion},
                    {"type", "header"}});
}

Json to_json(const render::RenderFrame& f) {
  Json placements = Json::array();
  for (const auto& p : f.placements) {
    Json objects = Json::array();
    for (auto id : p.objects) objects.push_back(id.value);
    Json points = Json::array();
    for (const auto& [s, c] : p.highlightPoints) points.push_back(Json::array({s, c}));
    Json marks = Json::array();
    for (const auto& m : p.marks)
      marks.push_back({{"category", m.category}, {"rect", rect_to(m.rect)}, {"series", m.series}});
    Json j = {{"chart", to_json(p.chart)},
              {"highlightPoints", points},
              {"highlightSeries", string_array(p.highlightSeries)},
              {"marks", marks},
              {"objects", objects},
              {"rect", rect_to(p.rect)},
              {"scale", p.scale},
              {"visId", p.visId}};
    if (p.composition) j["composition"] = to_string(*p.composition);
    placements.push_back(std::move(j));
  }
  Json annotations = Json::array();
  for (const auto& a : f.annotations)
    annotations.push_back({{"image", a.imageRef},
                           {"object", a.object.value},
                           {"rect", rect_to(a.rect)},
                           {"text", a.text}});
  const auto& d = f.diagnostics;
  Json diagnostics = {{"baselineCalibrated", d.baselineCalibrated},
                      {"droppedOracleTicks", d.droppedOracleTicks},
                      {"eventsEmitted", d.eventsEmitted},
                      {"framesProcessed", d.framesProcessed},
                      {"liveTracks", d.liveTracks},
                      {"maskedEvents", d.maskedEvents},
                      {"paused", d.paused},
                      {"protocolErrors", d.protocolErrors},
                      {"staleAnswers", d.staleAnswers}};
  return {{"annotations", annotations}, {"diagnostics", diagnostics},
          {"frameIndex", f.frameIndex}, {"panel", to_json(f.panel)},
          {"placements", placements},   {"t", f.timestamp},
          {"type", "render"}};
}

static render::RenderFrame render_frame_from_json_at(const Json& j, std::size_t line) {
  check_keys(j, {"annotations", "diagnostics", "frameIndex", "panel", "placements", "t", "type"},
             "render record", line);
  if (string_at(j, "type", line) != "render") malformed("expected a render record", line);
  render::RenderFrame f;
  f.frameIndex = int_at(j, "frameIndex", line);
  f.timestamp = number_at(j, "t", line);
  for (const auto& pj : array_at(j, "placements", line)) {
    check_keys(pj,
               {"chart", "composition", "highlightPoints", "highlightSeries", "marks", "objects",
                "rect", "scale", "visId"},
               "placement", line);
    render::Placement p;
    p.visId = static_cast<int>(int_at(pj, "visId", line));
    p.rect = rect_from(required(pj, "rect", line), line);
    p.scale = number_at(pj, "scale", line);
    for (const auto& o : array_at(pj, "objects", line))
      p.objects.push_back(ObjectId{static_cast<int>(as_int(o, "object", line))});
    p.chart = chart_from_json_at(required(pj, "chart", line), line);
    p.composition = opt_enum(pj, "composition", charts::composition_kind_from_string, line);
    for (const auto& s : array_at(pj, "highlightSeries", line))
      p.highlightSeries.insert(as_string(s, "series", line));
    for (const auto& k : array_at(pj, "highlightPoints", line)) {
      if (!k.is_array() || k.size() != 2) malformed("highlight point must be [series, category]", line);
      p.highlightPoints.insert({as_string(k[0], "series", line), as_string(k[1], "category", line)});
    }
    for (const auto& m : array_at(pj, "marks", line)) {
      check_keys(m, {"category", "rect", "series"}, "mark", line);
      p.marks.push_back({string_at(m, "series", line), string_at(m, "category", line),
                         rect_from(required(m, "rect", line), line)});
    }
    f.placements.push_back(std::move(p));
  }
  for (const auto& a : array_at(j, "annotations", line)) {
    check_keys(a, {"image", "object", "rect", "text"}, "annotation", line);
    f.annotations.push_back({ObjectId{static_cast<int>(int_at(a, "object", line))},
                             rect_from(required(a, "rect", line), line), string_at(a, "image", line),
                             string_at(a, "text", line)});
  }
  f.panel = panel_from_json_at(required(j, "panel", line), line);
  const Json& d = required(j, "diagnostics", line);
  check_keys(d,
             {"baselineCalibrated", "droppedOracleTicks", "eventsEmitted", "framesProcessed",
              "liveTracks", "maskedEvents", "paused", "protocolErrors", "staleAnswers"},
             "diagnostics", line);
  auto counter = [&](const char* key) { return static_cast<std::uint64_t>(int_at(d, key, line)); };
  f.diagnostics.framesProcessed = counter("framesProcessed");
  f.diagnostics.eventsEmitted = counter("eventsEmitted");
  f.diagnostics.maskedEvents = counter("maskedEvents");
  f.diagnostics.droppedOracleTicks = counter("droppedOracleTicks");
  f.diagnostics.staleAnswers = counter("staleAnswers");
  f.diagnostics.protocolErrors = counter("protocolErrors");
  f.diagnostics.liveTracks = counter("liveTracks");
  f.diagnostics.paused = as_bool(required(d, "paused", line), "paused", line);
  f.diagnostics.baselineCalibrated =
      as_bool(required(d, "baselineCalibrated", line), "baselineCalibrated", line);
  return f;
}

render::RenderFrame render_frame_from_json(const Json& j) { return render_frame_from_json_at(j, 0); }

std::string render_line(const render::RenderFrame& f) { return canonical(to_json(f)); }

render::RenderFrame parse_render_line(const std::string& text, std::size_t line) {
  return render_frame_from_json_at(parse_line(text, line), line);
}

void write_render_log(std::ostream& out, FrameSize frameSize,
                      const std::vector<render::RenderFrame>& frames) {
  out << render_log_header(frameSize) << '\n';
  for (const auto& f : frames) out << render_line(f) << '\n';
  if (!out) throw Error(ErrorCode::Io, "render log write failed");
}

std::vector<render::RenderFrame> read_render_log(std::istream& in) {
  expect_header(in, kRenderSchema);
  std::vector<render::RenderFrame> out;
  std::string text;
  std::size_t line = 1;
  while (std::getline(in, text)) {
    ++line;
    if (!text.empty()) out.push_back(parse_render_line(text, line));
  }
  return out;
}

}  // namespace tabletale::io
