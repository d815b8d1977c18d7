// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include <array>
#include <fstream>
#include <istream>
#include <ostream>

#include "engine/io.hpp"
#include "engine/io_json.hpp"

namespace tabletale::io {

using namespace detail;

namespace {

constexpr std::array<std::string_view, 6> kControlNames{
    "SceneNext", "ScenePrev", "Pause", "Resume", "SetPointingHand", "Status"};

std::optional<ControlKind> control_from_string(std::string_view s) {
  for (std::size_t i = 0; i < kControlNames.size(); ++i)
    if (kControlNames[i] == s) return static_cast<ControlKind>(i);
  return std::nullopt;
}

tracking::Detection detection_from(const Json& j, std::size_t line, FrameSize frame) {
  check_keys(j, {"bbox", "class", "confidence", "position"}, "detection", line);
  tracking::Detection d;
  d.classLabel.label = string_at(j, "class", line);
  if (d.classLabel.label.empty()) malformed("detection class must be non-empty", line);
  d.bbox = clamp_to_frame(rect_from(required(j, "bbox", line), line), frame);
  d.position = vec3_from(required(j, "position", line), line);
  if (d.position.z < 0) malformed("detection depth must be >= 0", line);
  d.confidence = number_at(j, "confidence", line);
  if (d.confidence < 0 || d.confidence > 1) malformed("confidence must be in [0,1]", line);
  return d;
}

tracking::TrackFrame frame_from(const Json& j, std::size_t line, FrameSize frame) {
  check_keys(j, {"detections", "face", "frameIndex", "hands", "t"}, "frame", line);
  tracking::TrackFrame f;
  f.frameSize = frame;
  f.frameIndex = int_at(j, "frameIndex", line);
  f.timestamp = number_at(j, "t", line);
  const Json& dets = required(j, "detections", line);
  if (!dets.is_array()) malformed("detections must be an array", line);
  for (const auto& d : dets) f.detections.push_back(detection_from(d, line, frame));
  const Json& hands = required(j, "hands", line);
  if (!hands.is_array()) malformed("hands must be an array", line);
  for (const auto& h : hands) {
    check_keys(h, {"side", "tip"}, "hand", line);
    tracking::HandObservation obs;
    obs.side = enum_at(h, "side", hand_side_from_string, line);
    obs.indexTip = point_from(required(h, "tip", line), line);
    for (const auto& prev : f.hands)
      if (prev.side == obs.side) malformed("duplicate hand side", line);
    f.hands.push_back(obs);
  }
  if (auto it = j.find("face"); it != j.end()) f.faceBox = rect_from(*it, line);
  return f;
}

}  // namespace

std::string_view to_string(ControlKind k) { return kControlNames[static_cast<std::size_t>(k)]; }

std::size_t TrackStreamFile::frame_count() const {
  std::size_t n = 0;
  for (const auto& item : items) n += std::holds_alternative<tracking::TrackFrame>(item);
  return n;
}

Json oracle_script_to_json(const condition::OracleScript& s) {
  Json entries = Json::array();
  for (const auto& e : s.entries)
    entries.push_back(
        {{"answer", e.answer}, {"conditionId", e.conditionId}, {"from", e.from}, {"to", e.to}});
  return {{"entries", entries}, {"latencySeconds", s.latencySeconds}};
}

condition::OracleScript oracle_script_from_json(const Json& j) {
  check_keys(j, {"entries", "latencySeconds"}, "oracle script", 0);
  condition::OracleScript s;
  s.latencySeconds = number_at(j, "latencySeconds", 0);
  if (s.latencySeconds < 0) malformed("latencySeconds must be >= 0", 0);
  const Json& entries = required(j, "entries", 0);
  if (!entries.is_array()) malformed("entries must be an array", 0);
  for (const auto& e : entries) {
    check_keys(e, {"answer", "conditionId", "from", "to"}, "script entry", 0);
    condition::ScriptEntry entry;
    entry.conditionId = string_at(e, "conditionId", 0);
    entry.from = number_at(e, "from", 0);
    entry.to = number_at(e, "to", 0);
    entry.answer = static_cast<int>(int_at(e, "answer", 0));
    if (entry.to < entry.from) malformed("script entry ends before it starts", 0);
    for (const auto& prev : s.entries)
      if (prev.conditionId == entry.conditionId && entry.from < prev.to && prev.from < entry.to)
        malformed("overlapping script entries for '" + entry.conditionId + "'", 0);
    s.entries.push_back(entry);
  }
  return s;
}

condition::OracleScript load_oracle_script(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  try {
    return oracle_script_from_json(Json::parse(in));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::MalformedRecord, path.string() + ": " + e.what());
  }
}

StreamHeader parse_stream_header(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error&) {
    throw Error(ErrorCode::SchemaMismatch, "line 1: stream header is not JSON", 1);
  }
  if (!j.is_object() || j.value("schema", std::string()) != kStreamSchema)
    throw Error(ErrorCode::SchemaMismatch, "line 1: not a tabletale.stream file", 1);
  if (!j.contains("schemaVersion") || j["schemaVersion"] != kSchemaVersion)
    throw Error(ErrorCode::SchemaMismatch, "line 1: unsupported schemaVersion", 1);
  check_keys(j,
             {"annotations", "description", "fps", "frameSize", "oracleScript", "schema",
              "schemaVersion"},
             "stream header", 1);
  StreamHeader h;
  Point2 size = point_from(required(j, "frameSize", 1), 1);
  if (size.x <= 0 || size.y <= 0) malformed("frameSize must be positive", 1);
  h.frameSize = {size.x, size.y};
  h.fps = number_at(j, "fps", 1);
  if (h.fps <= 0) malformed("fps must be positive", 1);
  h.description = string_at(j, "description", 1);
  if (auto it = j.find("annotations"); it != j.end()) h.annotations = *it;
  if (auto it = j.find("oracleScript"); it != j.end()) {
    try {
      h.oracleScript = oracle_script_from_json(*it);
    } catch (const Error& e) {
      malformed(e.what(), 1);
    }
  }
  return h;
}

StreamItem parse_stream_item(const std::string& text, std::size_t line, FrameSize frameSize) {
  Json j = parse_line(text, line);
  if (j.contains("control")) {
    check_keys(j, {"control", "hand"}, "control", line);
    Control c;
    c.kind = enum_at(j, "control", control_from_string, line);
    if (c.kind == ControlKind::SetPointingHand)
      c.hand = enum_at(j, "hand", hand_side_from_string, line);
    else if (j.contains("hand"))
      malformed("hand is only valid for SetPointingHand", line);
    return c;
  }
  return frame_from(j, line, frameSize);
}

TrackStreamFile read_stream(std::istream& in) {
  TrackStreamFile file;
  std::string text;
  if (!std::getline(in, text)) throw Error(ErrorCode::SchemaMismatch, "empty stream: no header");
  file.header = parse_stream_header(text);
  std::size_t line = 1;
  std::optional<std::int64_t> lastIndex;
  std::optional<double> lastTime;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    StreamItem item = parse_stream_item(text, line, file.header.frameSize);
    if (const auto* f = std::get_if<tracking::TrackFrame>(&item)) {
      if ((lastIndex && f->frameIndex <= *lastIndex) || (lastTime && f->timestamp <= *lastTime))
        throw Error(ErrorCode::NonMonotonicFrame,
                    "line " + std::to_string(line) + ": frameIndex " +
                        std::to_string(f->frameIndex) + " does not increase",
                    line);
      lastIndex = f->frameIndex;
      lastTime = f->timestamp;
    }
    file.items.push_back(std::move(item));
  }
  return file;
}

TrackStreamFile load_stream(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  return read_stream(in);
}

Json to_json(const tracking::TrackFrame& f) {
  Json dets = Json::array();
  for (const auto& d : f.detections)
    dets.push_back({{"bbox", rect_to(d.bbox)},
                    {"class", d.classLabel.label},
                    {"confidence", d.confidence},
                    {"position", vec3_to(d.position)}});
  Json hands = Json::array();
  for (const auto& h : f.hands)
    hands.push_back({{"side", to_string(h.side)}, {"tip", point_to(h.indexTip)}});
  Json j = {{"detections", dets}, {"frameIndex", f.frameIndex}, {"hands", hands},
            {"t", f.timestamp}};
  if (f.faceBox) j["face"] = rect_to(*f.faceBox);
  return j;
}

Json to_json(const Control& c) {
  Json j = {{"control", to_string(c.kind)}};
  if (c.hand) j["hand"] = to_string(*c.hand);
  return j;
}

std::string header_line(const StreamHeader& h) {
  Json j = {{"description", h.description},
            {"fps", h.fps},
            {"frameSize", Json::array({h.frameSize.w, h.frameSize.h})},
            {"schema", kStreamSchema},
            {"schemaVersion", h.schemaVersion}};
  if (h.annotations) j["annotations"] = *h.annotations;
  if (h.oracleScript) j["oracleScript"] = oracle_script_to_json(*h.oracleScript);
  return canonical(j);
}

std::string item_line(const StreamItem& item) {
  return std::visit([](const auto& v) { return canonical(to_json(v)); }, item);
}

void write_stream(std::ostream& out, const TrackStreamFile& file) {
  out << header_line(file.header) << '\n';
  for (const auto& item : file.items) out << item_line(item) << '\n';
  if (!out) throw Error(ErrorCode::Io, "stream write failed");
}

void save_stream(const std::filesystem::path& path, const TrackStreamFile& file) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  write_stream(out, file);
}

}  // namespace tabletale::io
