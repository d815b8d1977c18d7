// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "engine/io.hpp"
#include "engine/replay.hpp"
#include "engine/synth.hpp"
#include "engine/tracking.hpp"

namespace tt_test {

using namespace tabletale;

inline std::filesystem::path source_dir() { return TT_SOURCE_DIR; }
inline std::filesystem::path fixture(const std::string& name) {
  return source_dir() / "fixtures" / name;
}
inline std::filesystem::path golden(const std::string& name) {
  return source_dir() / "tests" / "golden" / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Fresh scratch directory under the build tree.
inline std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("tabletale-test-" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

inline tracking::Detection det(const std::string& cls, Vec3 pos, Rect box = {600, 300, 60, 80},
                               double conf = 0.9) {
  return {ObjectClass{cls}, box, pos, conf};
}

inline tracking::TrackFrame frame(std::int64_t index, double fps = 30) {
  tracking::TrackFrame f;
  f.frameIndex = index;
  f.timestamp = static_cast<double>(index) / fps;
  return f;
}

inline tracking::TrackedObject track(int id, const std::string& cls, Vec3 pos,
                                     Rect box = {600, 300, 60, 80}) {
  tracking::TrackedObject t;
  t.id = ObjectId{id};
  t.classLabel = ObjectClass{cls};
  t.position = pos;
  t.previousPosition = pos;
  t.bbox = box;
  return t;
}

struct Logs {
  std::string events, render;
};

inline Logs replay_logs(const io::TrackStreamFile& stream, const scene::Presentation& p) {
  auto r = session::replay(stream, p, session::stream_oracle(stream, std::nullopt));
  std::ostringstream ev, rn;
  session::write_logs(r, ev, rn);
  return {ev.str(), rn.str()};
}

}  // namespace tt_test
