// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/replay.hpp"

#include <ostream>

namespace tabletale::session {

std::map<events::EventKind, std::size_t> ReplayResult::counts() const {
  std::map<events::EventKind, std::size_t> out;
  for (const auto& r : events) ++out[r.event.kind];
  return out;
}

std::unique_ptr<condition::Oracle> stream_oracle(
    const io::TrackStreamFile& stream, const std::optional<condition::OracleScript>& override) {
  if (override) return condition::scripted_oracle(*override);
  return condition::scripted_oracle(stream.header.oracleScript.value_or(condition::OracleScript{}));
}

ReplayResult replay(const io::TrackStreamFile& stream, scene::Presentation presentation,
                    std::unique_ptr<condition::Oracle> oracle) {
  ReplayResult r;
  r.frameSize = stream.header.frameSize;
  Session s(std::move(presentation), stream.header.frameSize, std::move(oracle));
  for (const auto& item : stream.items) {
    if (const auto* c = std::get_if<io::Control>(&item)) {
      s.handle_control(*c);
      continue;
    }
    auto out = s.process_frame(std::get<tracking::TrackFrame>(item));
    r.events.insert(r.events.end(), std::make_move_iterator(out.records.begin()),
                    std::make_move_iterator(out.records.end()));
    r.frames.push_back(std::move(out.frame));
  }
  r.latency = s.latency();
  return r;
}

double BenchResult::variance() const {
  const auto& xs = all.samples();
  if (xs.empty()) return 0;
  const double m = all.mean();
  double acc = 0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size());
}

BenchResult bench(const io::TrackStreamFile& stream, const scene::Presentation& presentation,
                  int repeat,
                  const std::function<std::unique_ptr<condition::Oracle>()>& make_oracle) {
  if (repeat < 1) throw Error(ErrorCode::InvalidArgument, "repeat must be at least 1");
  BenchResult b;
  b.repeat = repeat;
  for (int i = 0; i < repeat; ++i) {
    auto r = replay(stream, presentation, make_oracle());
    b.framesPerRun = r.frames.size();
    for (double ms : r.latency.samples()) b.all.add(ms);
    b.runMedians.push_back(r.latency.median());
    b.runP95s.push_back(r.latency.p95());
  }
  return b;
}

void write_logs(const ReplayResult& r, std::ostream& events, std::ostream& render) {
  io::write_event_log(events, r.events);
  io::write_render_log(render, r.frameSize, r.frames);
}

void write_session_log(const ReplayResult& r, std::ostream& out) {
  out << io::event_log_header() << '\n' << io::render_log_header(r.frameSize) << '\n';
  std::size_t next = 0;
  for (const auto& f : r.frames) {
    while (next < r.events.size() && r.events[next].event.frameIndex == f.frameIndex)
      out << io::event_line(r.events[next++]) << '\n';
    out << io::render_line(f) << '\n';
  }
  if (!out) throw Error(ErrorCode::Io, "session log write failed");
}

}  // namespace tabletale::session
