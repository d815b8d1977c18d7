// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "engine/condition.hpp"
#include "engine/events.hpp"
#include "engine/render.hpp"
#include "engine/scene.hpp"
#include "engine/tracking.hpp"

namespace tabletale::io {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kStreamSchema = "tabletale.stream";
inline constexpr const char* kEventSchema = "tabletale.events";
inline constexpr const char* kRenderSchema = "tabletale.render";

// ---------------------------------------------------------------------------
// Track streams
// ---------------------------------------------------------------------------

enum class ControlKind { SceneNext, ScenePrev, Pause, Resume, SetPointingHand, Status };
std::string_view to_string(ControlKind k);

struct Control {
  ControlKind kind = ControlKind::SceneNext;
  std::optional<HandSide> hand;  // SetPointingHand only
  friend bool operator==(const Control&, const Control&) = default;
};

using StreamItem = std::variant<tracking::TrackFrame, Control>;

struct StreamHeader {
  int schemaVersion = kSchemaVersion;
  FrameSize frameSize;
  double fps = 30;
  std::string description;
  /// Generator ground truth, kept verbatim.
  std::optional<Json> annotations;
  std::optional<condition::OracleScript> oracleScript;
};

struct TrackStreamFile {
  StreamHeader header;
  std::vector<StreamItem> items;

  std::size_t frame_count() const;
};

StreamHeader parse_stream_header(const std::string& line);
/// Parses one body line. `line` is the 1-based number used in errors.
StreamItem parse_stream_item(const std::string& text, std::size_t line, FrameSize frameSize);

/// Reads a whole stream and checks frame ordering. Throws SchemaMismatch,
/// MalformedRecord(line) or NonMonotonicFrame(line).
TrackStreamFile read_stream(std::istream& in);
TrackStreamFile load_stream(const std::filesystem::path& path);

std::string header_line(const StreamHeader& h);
std::string item_line(const StreamItem& item);
void write_stream(std::ostream& out, const TrackStreamFile& file);
void save_stream(const std::filesystem::path& path, const TrackStreamFile& file);

Json oracle_script_to_json(const condition::OracleScript& s);
condition::OracleScript oracle_script_from_json(const Json& j);
condition::OracleScript load_oracle_script(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Presentation config
// ---------------------------------------------------------------------------

enum class Severity { Error, Warning };
std::string_view to_string(Severity s);

struct Issue {
  Severity severity = Severity::Error;
  std::string code;
  std::string path;  // dotted path into the config, e.g. scenes[0].bindings[1].chart
  std::string message;
  friend bool operator==(const Issue&, const Issue&) = default;
};

/// Reads a config and resolves `extends` chains (relative to the including
/// file; later files override earlier ones field by field).
Json load_config_json(const std::filesystem::path& path);

/// Every problem found in a merged config document.
std::vector<Issue> validate_config(const Json& cfg);
std::size_t error_count(const std::vector<Issue>& issues);

/// Builds the presentation. Throws Error{Validation} naming the first error.
scene::Presentation build_presentation(const Json& cfg);
scene::Presentation load_presentation(const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Event and render logs
// ---------------------------------------------------------------------------

struct EventRecord {
  events::ManipulationEvent event;
  std::vector<scene::VisEffect> effects;
  std::optional<std::string> diagnostic;
  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

std::string event_log_header();
std::string render_log_header(FrameSize frameSize);

Json to_json(const events::ManipulationEvent& e);
events::ManipulationEvent event_from_json(const Json& j);
Json to_json(const scene::VisEffect& e);
scene::VisEffect effect_from_json(const Json& j);
Json to_json(const ChartSpec& c);
ChartSpec chart_from_json(const Json& j);
Json to_json(const scene::PresenterPanel& p);
scene::PresenterPanel panel_from_json(const Json& j);
Json to_json(const render::RenderFrame& f);
render::RenderFrame render_frame_from_json(const Json& j);
Json to_json(const tracking::TrackFrame& f);
Json to_json(const Control& c);

std::string event_line(const EventRecord& r);
std::string render_line(const render::RenderFrame& f);
EventRecord parse_event_line(const std::string& text, std::size_t line = 0);
render::RenderFrame parse_render_line(const std::string& text, std::size_t line = 0);

void write_event_log(std::ostream& out, const std::vector<EventRecord>& records);
void write_render_log(std::ostream& out, FrameSize frameSize,
                      const std::vector<render::RenderFrame>& frames);
std::vector<EventRecord> read_event_log(std::istream& in);
std::vector<render::RenderFrame> read_render_log(std::istream& in);

/// Canonical single-line form: sorted keys, shortest round-trip numbers.
std::string canonical(const Json& j);

}  // namespace tabletale::io
