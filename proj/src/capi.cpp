// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "tabletale/tabletale.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "engine/io.hpp"
#include "engine/net.hpp"
#include "engine/replay.hpp"
#include "engine/serve.hpp"
#include "engine/session.hpp"
#include "engine/synth.hpp"

using namespace tabletale;

struct tt_presentation {
  scene::Presentation value;
};
struct tt_stream {
  io::TrackStreamFile value;
};
struct tt_oracle_script {
  condition::OracleScript value;
};
struct tt_replay_result {
  session::ReplayResult value;
};
struct tt_session {
  scene::Presentation presentation;
  std::optional<io::StreamHeader> header;
  std::unique_ptr<session::Session> session;
  std::size_t line = 0;
  std::optional<std::int64_t> lastIndex;
  std::optional<double> lastTime;
};
struct tt_server {
  std::unique_ptr<session::Server> value;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_errorLine = 0;

tt_status status_of(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidArgument: return TT_ERR_INVALID_ARGUMENT;
    case ErrorCode::Io: return TT_ERR_IO;
    case ErrorCode::SchemaMismatch: return TT_ERR_SCHEMA_MISMATCH;
    case ErrorCode::MalformedRecord: return TT_ERR_MALFORMED_RECORD;
    case ErrorCode::NonMonotonicFrame: return TT_ERR_NON_MONOTONIC_FRAME;
    case ErrorCode::StreamOrder: return TT_ERR_STREAM_ORDER;
    case ErrorCode::InsufficientSamples: return TT_ERR_INSUFFICIENT_SAMPLES;
    case ErrorCode::BaselineNotCalibrated: return TT_ERR_BASELINE_NOT_CALIBRATED;
    case ErrorCode::IncompatibleCharts: return TT_ERR_INCOMPATIBLE_CHARTS;
    case ErrorCode::NotComposite: return TT_ERR_NOT_COMPOSITE;
    case ErrorCode::OracleUnavailable: return TT_ERR_ORACLE_UNAVAILABLE;
    case ErrorCode::ProtocolError: return TT_ERR_PROTOCOL;
    case ErrorCode::UnknownScenario: return TT_ERR_UNKNOWN_SCENARIO;
    case ErrorCode::Validation: return TT_ERR_VALIDATION;
    case ErrorCode::Network: return TT_ERR_NETWORK;
  }
  return TT_ERR_INTERNAL;
}

/// Runs `f`, translating exceptions into a status and the thread's error slot.
template <class F>
tt_status guard(F&& f) {
  g_error.clear();
  g_errorLine = 0;
  try {
    f();
    return TT_OK;
  } catch (const Error& e) {
    g_error = e.what();
    g_errorLine = e.line().value_or(0);
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_error = e.what();
    return TT_ERR_INTERNAL;
  }
}

tt_status invalid(const char* what) {
  g_error = what;
  g_errorLine = 0;
  return TT_ERR_INVALID_ARGUMENT;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::ofstream open_out(const char* path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
  return f;
}

double variance(const std::vector<double>& xs) {
  if (xs.empty()) return 0;
  double m = 0;
  for (double x : xs) m += x;
  m /= static_cast<double>(xs.size());
  double acc = 0;
  for (double x : xs) acc += (x - m) * (x - m);
  return acc / static_cast<double>(xs.size());
}

std::unique_ptr<condition::Oracle> make_oracle(const io::TrackStreamFile& stream,
                                               const tt_oracle_script* script,
                                               const char* remote) {
  if (remote) return std::make_unique<net::RemoteOracle>(net::parse_endpoint(remote));
  return session::stream_oracle(stream, script ? std::optional(script->value) : std::nullopt);
}

}  // namespace

extern "C" {

const char* tt_last_error(void) { return g_error.c_str(); }
size_t tt_last_error_line(void) { return g_errorLine; }
void tt_string_free(char* s) { std::free(s); }
const char* tt_version(void) { return "1.0.0"; }

const char* tt_status_name(tt_status status) {
  switch (status) {
    case TT_OK: return "Ok";
    case TT_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case TT_ERR_IO: return "Io";
    case TT_ERR_SCHEMA_MISMATCH: return "SchemaMismatch";
    case TT_ERR_MALFORMED_RECORD: return "MalformedRecord";
    case TT_ERR_NON_MONOTONIC_FRAME: return "NonMonotonicFrame";
    case TT_ERR_STREAM_ORDER: return "StreamOrder";
    case TT_ERR_INSUFFICIENT_SAMPLES: return "InsufficientSamples";
    case TT_ERR_BASELINE_NOT_CALIBRATED: return "BaselineNotCalibrated";
    case TT_ERR_INCOMPATIBLE_CHARTS: return "IncompatibleCharts";
    case TT_ERR_NOT_COMPOSITE: return "NotComposite";
    case TT_ERR_ORACLE_UNAVAILABLE: return "OracleUnavailable";
    case TT_ERR_PROTOCOL: return "ProtocolError";
    case TT_ERR_UNKNOWN_SCENARIO: return "UnknownScenario";
    case TT_ERR_VALIDATION: return "Validation";
    case TT_ERR_NETWORK: return "Network";
    case TT_ERR_INTERNAL: return "Internal";
  }
  return "Unknown";
}

tt_status tt_validate_config_file(const char* path, char** report, size_t* errors,
                                  size_t* warnings) {
  if (!path) return invalid("path is null");
  return guard([&] {
    const auto issues = io::validate_config(io::load_config_json(path));
    io::Json arr = io::Json::array();
    std::size_t nErr = 0, nWarn = 0;
    for (const auto& i : issues) {
      (i.severity == io::Severity::Error ? nErr : nWarn) += 1;
      arr.push_back({{"severity", std::string(to_string(i.severity))},
                     {"code", i.code},
                     {"path", i.path},
                     {"message", i.message}});
    }
    if (errors) *errors = nErr;
    if (warnings) *warnings = nWarn;
    if (report) *report = dup(io::canonical(arr));
  });
}

tt_status tt_presentation_load(const char* path, tt_presentation** out) {
  if (!path || !out) return invalid("null argument");
  return guard([&] { *out = new tt_presentation{io::load_presentation(path)}; });
}

void tt_presentation_free(tt_presentation* p) { delete p; }

tt_status tt_stream_load(const char* path, tt_stream** out) {
  if (!path || !out) return invalid("null argument");
  return guard([&] { *out = new tt_stream{io::load_stream(path)}; });
}

size_t tt_stream_frame_count(const tt_stream* s) { return s ? s->value.frame_count() : 0; }
void tt_stream_free(tt_stream* s) { delete s; }

tt_status tt_oracle_script_load(const char* path, tt_oracle_script** out) {
  if (!path || !out) return invalid("null argument");
  return guard([&] { *out = new tt_oracle_script{io::load_oracle_script(path)}; });
}

void tt_oracle_script_free(tt_oracle_script* s) { delete s; }

tt_status tt_synth(const char* scenario, uint64_t seed, const char* out_path) {
  if (!scenario || !out_path) return invalid("null argument");
  return guard([&] { io::save_stream(out_path, synth::generate(scenario, seed)); });
}

tt_status tt_synth_scenarios(char** names) {
  if (!names) return invalid("null argument");
  return guard([&] {
    std::string joined;
    for (const auto& n : synth::scenario_names()) joined += n + "\n";
    *names = dup(joined);
  });
}

tt_status tt_replay(const tt_stream* stream, const tt_presentation* presentation,
                    const tt_oracle_script* script, const char* remote_endpoint,
                    tt_replay_result** out) {
  if (!stream || !presentation || !out) return invalid("null argument");
  return guard([&] {
    auto oracle = make_oracle(stream->value, script, remote_endpoint);
    *out = new tt_replay_result{
        session::replay(stream->value, presentation->value, std::move(oracle))};
  });
}

tt_status tt_replay_write_logs(const tt_replay_result* r, const char* events_path,
                               const char* render_path) {
  if (!r || !events_path || !render_path) return invalid("null argument");
  return guard([&] {
    auto ev = open_out(events_path);
    auto rn = open_out(render_path);
    session::write_logs(r->value, ev, rn);
  });
}

tt_status tt_replay_write_session_log(const tt_replay_result* r, const char* path) {
  if (!r || !path) return invalid("null argument");
  return guard([&] {
    auto f = open_out(path);
    session::write_session_log(r->value, f);
  });
}

tt_status tt_replay_summary(const tt_replay_result* r, char** json) {
  if (!r || !json) return invalid("null argument");
  return guard([&] {
    const auto& v = r->value;
    io::Json counts = io::Json::object();
    for (const auto& [kind, n] : v.counts()) counts[std::string(events::to_string(kind))] = n;
    io::Json j;
    j["frames"] = v.frames.size();
    j["events"] = v.events.size();
    j["counts"] = counts;
    j["latencyMs"] = {{"median", v.latency.median()},
                      {"p95", v.latency.p95()},
                      {"mean", v.latency.mean()},
                      {"max", v.latency.max()}};
    if (!v.frames.empty()) {
      const auto& d = v.frames.back().diagnostics;
      j["maskedEvents"] = d.maskedEvents;
      j["droppedOracleTicks"] = d.droppedOracleTicks;
    }
    *json = dup(io::canonical(j));
  });
}

void tt_replay_free(tt_replay_result* r) { delete r; }

tt_status tt_bench(const tt_stream* stream, const tt_presentation* presentation,
                   const tt_oracle_script* script, int repeat, char** json) {
  if (!stream || !presentation || !json) return invalid("null argument");
  return guard([&] {
    auto b = session::bench(stream->value, presentation->value, repeat,
                            [&] { return make_oracle(stream->value, script, nullptr); });
    io::Json j;
    j["repeat"] = b.repeat;
    j["framesPerRun"] = b.framesPerRun;
    j["medianMs"] = b.all.median();
    j["p95Ms"] = b.all.p95();
    j["meanMs"] = b.all.mean();
    j["maxMs"] = b.all.max();
    j["varianceMs2"] = b.variance();
    j["runMediansMs"] = b.runMedians;
    j["runP95sMs"] = b.runP95s;
    j["runMedianVarianceMs2"] = variance(b.runMedians);
    *json = dup(io::canonical(j));
  });
}

tt_status tt_session_create(const tt_presentation* presentation, tt_session** out) {
  if (!presentation || !out) return invalid("null argument");
  return guard([&] {
    auto s = std::make_unique<tt_session>();
    s->presentation = presentation->value;
    *out = s.release();
  });
}

tt_status tt_session_push_line(tt_session* s, const char* line, char** output) {
  if (!s || !line || !output) return invalid("null argument");
  return guard([&] {
    const std::string text(line);
    ++s->line;
    std::ostringstream out;
    if (!s->header) {
      s->header = io::parse_stream_header(text);
      s->session = std::make_unique<session::Session>(
          s->presentation, s->header->frameSize,
          condition::scripted_oracle(s->header->oracleScript.value_or(condition::OracleScript{})));
      out << io::event_log_header() << '\n' << io::render_log_header(s->header->frameSize) << '\n';
      *output = dup(out.str());
      return;
    }
    auto item = io::parse_stream_item(text, s->line, s->header->frameSize);
    if (const auto* c = std::get_if<io::Control>(&item)) {
      s->session->handle_control(*c);
      *output = dup("");
      return;
    }
    const auto& f = std::get<tracking::TrackFrame>(item);
    if ((s->lastIndex && f.frameIndex <= *s->lastIndex) || (s->lastTime && f.timestamp <= *s->lastTime))
      throw Error(ErrorCode::StreamOrder,
                  "frame " + std::to_string(f.frameIndex) + " is not after the previous frame",
                  s->line);
    s->lastIndex = f.frameIndex;
    s->lastTime = f.timestamp;
    auto result = s->session->process_frame(f);
    for (const auto& r : result.records) out << io::event_line(r) << '\n';
    out << io::render_line(result.frame) << '\n';
    *output = dup(out.str());
  });
}

void tt_session_free(tt_session* s) { delete s; }

tt_status tt_server_create(const tt_presentation* presentation, const tt_server_options* options,
                           tt_server** out) {
  if (!presentation || !out) return invalid("null argument");
  return guard([&] {
    session::ServeOptions o;
    if (options) {
      if (options->host) o.listen.host = options->host;
      o.listen.port = options->port;
      o.maxSessions = options->max_sessions;
      if (options->oracle_endpoint) o.oracle = net::parse_endpoint(options->oracle_endpoint);
      if (options->record_prefix) o.recordPrefix = options->record_prefix;
    }
    *out = new tt_server{std::make_unique<session::Server>(presentation->value, std::move(o))};
  });
}

int tt_server_port(const tt_server* s) { return s ? s->value->port() : 0; }

tt_status tt_server_run(tt_server* s) {
  if (!s) return invalid("null argument");
  return guard([&] { s->value->run(); });
}

void tt_server_stop(tt_server* s) {
  if (s) s->value->stop();
}

void tt_server_free(tt_server* s) { delete s; }

}  // extern "C"
