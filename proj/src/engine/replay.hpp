// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "engine/io.hpp"
#include "engine/session.hpp"

namespace tabletale::session {

struct ReplayResult {
  std::vector<io::EventRecord> events;
  std::vector<render::RenderFrame> frames;
  LatencyStats latency;
  FrameSize frameSize;

  std::map<events::EventKind, std::size_t> counts() const;
};

/// Scripted oracle from `override`, else from the stream header, else an
/// empty script (every answer 0).
std::unique_ptr<condition::Oracle> stream_oracle(
    const io::TrackStreamFile& stream, const std::optional<condition::OracleScript>& override);

/// Runs a whole stream through a fresh session.
ReplayResult replay(const io::TrackStreamFile& stream, scene::Presentation presentation,
                    std::unique_ptr<condition::Oracle> oracle);

struct BenchResult {
  int repeat = 0;
  std::size_t framesPerRun = 0;
  LatencyStats all;                 // every frame of every run
  std::vector<double> runMedians;   // ms
  std::vector<double> runP95s;      // ms
  /// Population variance of all samples (ms^2).
  double variance() const;
};

/// Replays the stream `repeat` times with fresh sessions. Each run gets its
/// own oracle from `make_oracle`.
BenchResult bench(const io::TrackStreamFile& stream, const scene::Presentation& presentation,
                  int repeat,
                  const std::function<std::unique_ptr<condition::Oracle>()>& make_oracle);

void write_logs(const ReplayResult& r, std::ostream& events, std::ostream& render);

/// Interleaved log in the live service's outbound order: both headers, then
/// per frame its event records followed by its render record.
void write_session_log(const ReplayResult& r, std::ostream& out);

}  // namespace tabletale::session
