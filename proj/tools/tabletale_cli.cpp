// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line front end. Talks to the engine only through the C API.

#include <csignal>
#include <cstdint>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tabletale/tabletale.h"

namespace {

enum Exit { kOk = 0, kRuntime = 1, kUsage = 2, kValidation = 3 };

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using PresentationPtr = std::unique_ptr<tt_presentation, Deleter<tt_presentation, tt_presentation_free>>;
using StreamPtr = std::unique_ptr<tt_stream, Deleter<tt_stream, tt_stream_free>>;
using ScriptPtr = std::unique_ptr<tt_oracle_script, Deleter<tt_oracle_script, tt_oracle_script_free>>;
using ResultPtr = std::unique_ptr<tt_replay_result, Deleter<tt_replay_result, tt_replay_free>>;
using ServerPtr = std::unique_ptr<tt_server, Deleter<tt_server, tt_server_free>>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { tt_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

/// Thrown to unwind with a specific exit code after the message is printed.
struct Failure {
  int code;
};

int exit_for(tt_status s) {
  if (s == TT_ERR_VALIDATION) return kValidation;
  if (s == TT_ERR_UNKNOWN_SCENARIO || s == TT_ERR_INVALID_ARGUMENT) return kUsage;
  return kRuntime;
}

void check(tt_status s, const std::string& context) {
  if (s == TT_OK) return;
  std::cerr << "error: " << context << ": " << tt_status_name(s);
  if (std::size_t line = tt_last_error_line()) std::cerr << " at line " << line;
  std::cerr << ": " << tt_last_error() << "\n";
  throw Failure{exit_for(s)};
}

void print_issues(const std::string& report) {
  for (const auto& i : nlohmann::json::parse(report))
    std::cerr << i.at("severity").get<std::string>() << " " << i.at("code").get<std::string>()
              << " " << i.at("path").get<std::string>() << ": "
              << i.at("message").get<std::string>() << "\n";
}

PresentationPtr load_presentation(const std::string& path) {
  tt_presentation* p = nullptr;
  tt_status s = tt_presentation_load(path.c_str(), &p);
  if (s == TT_ERR_VALIDATION) {
    OwnedString report;
    if (tt_validate_config_file(path.c_str(), &report.s, nullptr, nullptr) == TT_OK)
      print_issues(report.str());
  }
  check(s, path);
  return PresentationPtr(p);
}

StreamPtr load_stream(const std::string& path) {
  tt_stream* s = nullptr;
  check(tt_stream_load(path.c_str(), &s), path);
  return StreamPtr(s);
}

ScriptPtr load_script(const std::string& path) {
  if (path.empty()) return nullptr;
  tt_oracle_script* s = nullptr;
  check(tt_oracle_script_load(path.c_str(), &s), path);
  return ScriptPtr(s);
}

void print_summary(const std::string& json) {
  const auto j = nlohmann::json::parse(json);
  std::cout << "frames " << j.at("frames") << "\n";
  std::cout << "events " << j.at("events") << "\n";
  for (const auto& [kind, n] : j.at("counts").items()) std::cout << "  " << kind << " " << n << "\n";
  const auto& l = j.at("latencyMs");
  std::cout << "latency_ms median=" << l.at("median").get<double>()
            << " p95=" << l.at("p95").get<double>() << " mean=" << l.at("mean").get<double>()
            << " max=" << l.at("max").get<double>() << "\n";
}

struct ReplayArgs {
  std::string stream, config, oracleScript, oracle, outEvents, outRender, outSession;
  bool summary = false;
};

int run_replay(const ReplayArgs& a) {
  auto presentation = load_presentation(a.config);
  auto stream = load_stream(a.stream);
  auto script = load_script(a.oracleScript);
  tt_replay_result* raw = nullptr;
  check(tt_replay(stream.get(), presentation.get(), script.get(),
                  a.oracle.empty() ? nullptr : a.oracle.c_str(), &raw),
        a.stream);
  ResultPtr result(raw);
  check(tt_replay_write_logs(result.get(), a.outEvents.c_str(), a.outRender.c_str()), "writing logs");
  if (!a.outSession.empty())
    check(tt_replay_write_session_log(result.get(), a.outSession.c_str()), a.outSession);
  if (a.summary) {
    OwnedString json;
    check(tt_replay_summary(result.get(), &json.s), "summary");
    print_summary(json.str());
  }
  return kOk;
}

int run_validate(const std::string& config) {
  OwnedString report;
  std::size_t errors = 0, warnings = 0;
  check(tt_validate_config_file(config.c_str(), &report.s, &errors, &warnings), config);
  print_issues(report.str());
  std::cout << config << ": " << errors << " error(s), " << warnings << " warning(s)\n";
  return errors > 0 ? kValidation : kOk;
}

struct BenchArgs {
  std::string stream, config, oracleScript;
  int repeat = 5;
};

int run_bench(const BenchArgs& a) {
  auto presentation = load_presentation(a.config);
  auto stream = load_stream(a.stream);
  auto script = load_script(a.oracleScript);
  OwnedString json;
  check(tt_bench(stream.get(), presentation.get(), script.get(), a.repeat, &json.s), a.stream);
  std::cout << json.str() << "\n";
  return kOk;
}

struct SynthArgs {
  std::string scenario, out;
  std::uint64_t seed = 1;
  bool list = false;
};

int run_synth(const SynthArgs& a) {
  if (a.list) {
    OwnedString names;
    check(tt_synth_scenarios(&names.s), "synth");
    std::cout << names.str();
    return kOk;
  }
  if (a.scenario.empty() || a.out.empty()) {
    std::cerr << "error: synth needs --scenario and --out\n";
    return kUsage;
  }
  check(tt_synth(a.scenario.c_str(), a.seed, a.out.c_str()), "synth " + a.scenario);
  return kOk;
}

struct ServeArgs {
  std::string config, listen = "127.0.0.1:7878", oracle, record;
  int maxSessions = 0;
};

int run_serve(const ServeArgs& a) {
  auto presentation = load_presentation(a.config);
  const auto colon = a.listen.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "error: --listen must be host:port\n";
    return kUsage;
  }
  const std::string host = colon == 0 ? "127.0.0.1" : a.listen.substr(0, colon);
  int port = 0;
  try {
    port = std::stoi(a.listen.substr(colon + 1));
  } catch (const std::exception&) {
    std::cerr << "error: bad port in --listen\n";
    return kUsage;
  }

  // Signals are taken synchronously by a watcher thread, so block them
  // before any other thread starts.
  sigset_t sigs;
  sigemptyset(&sigs);
  sigaddset(&sigs, SIGINT);
  sigaddset(&sigs, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &sigs, nullptr);

  tt_server_options o{};
  o.host = host.c_str();
  o.port = port;
  o.max_sessions = a.maxSessions;
  o.oracle_endpoint = a.oracle.empty() ? nullptr : a.oracle.c_str();
  o.record_prefix = a.record.empty() ? nullptr : a.record.c_str();
  tt_server* raw = nullptr;
  check(tt_server_create(presentation.get(), &o, &raw), "serve");
  ServerPtr server(raw);

  std::thread([&sigs, s = server.get()] {
    int sig = 0;
    sigwait(&sigs, &sig);
    tt_server_stop(s);
  }).detach();

  std::cout << "listening on " << host << ":" << tt_server_port(server.get()) << std::endl;
  check(tt_server_run(server.get()), "serve");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tabletale: tabletop data-presentation engine"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tt_version()));

  ReplayArgs replay;
  auto* rep = app.add_subcommand("replay", "Run a recorded track stream through a session");
  rep->add_option("--stream", replay.stream, "Track stream file")->required()->check(CLI::ExistingFile);
  rep->add_option("--config", replay.config, "Presentation config")->required()->check(CLI::ExistingFile);
  rep->add_option("--oracle-script", replay.oracleScript, "Scripted oracle answers (overrides the stream's)")
      ->check(CLI::ExistingFile);
  rep->add_option("--oracle", replay.oracle, "Remote oracle host:port")->envname("TABLETALE_ORACLE");
  rep->add_option("--out-events", replay.outEvents, "Event log output")->required();
  rep->add_option("--out-render", replay.outRender, "Render log output")->required();
  rep->add_option("--out-session", replay.outSession, "Interleaved log in live-service order");
  rep->add_flag("--summary", replay.summary, "Print event counts and latency");

  std::string validateConfig;
  auto* val = app.add_subcommand("validate", "Check a presentation config");
  val->add_option("--config", validateConfig, "Presentation config")->required()->check(CLI::ExistingFile);

  ServeArgs serve;
  auto* srv = app.add_subcommand("serve", "Live session service over TCP");
  srv->add_option("--config", serve.config, "Presentation config")->required()->check(CLI::ExistingFile);
  srv->add_option("--listen", serve.listen, "host:port to bind (port 0 picks one)")
      ->envname("TABLETALE_LISTEN")
      ->capture_default_str();
  srv->add_option("--oracle", serve.oracle, "Remote oracle host:port")->envname("TABLETALE_ORACLE");
  srv->add_option("--max-sessions", serve.maxSessions, "Exit after this many sessions (0: never)")
      ->check(CLI::NonNegativeNumber);
  srv->add_option("--record", serve.record, "Record inbound/outbound logs as <prefix>-N.{in,out}.jsonl");

  BenchArgs bench;
  auto* ben = app.add_subcommand("bench", "Per-frame engine latency over repeated replays");
  ben->add_option("--stream", bench.stream, "Track stream file")->required()->check(CLI::ExistingFile);
  ben->add_option("--config", bench.config, "Presentation config")->required()->check(CLI::ExistingFile);
  ben->add_option("--oracle-script", bench.oracleScript, "Scripted oracle answers")->check(CLI::ExistingFile);
  ben->add_option("--repeat", bench.repeat, "Number of runs")->check(CLI::PositiveNumber)->capture_default_str();

  SynthArgs synth;
  auto* syn = app.add_subcommand("synth", "Generate a synthetic track stream");
  syn->add_option("--scenario", synth.scenario, "Scenario name (see --list)");
  syn->add_option("--seed", synth.seed, "Random seed")->capture_default_str();
  syn->add_option("--out", synth.out, "Output stream file");
  syn->add_flag("--list", synth.list, "List scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*rep) return run_replay(replay);
    if (*val) return run_validate(validateConfig);
    if (*srv) return run_serve(serve);
    if (*ben) return run_bench(bench);
    if (*syn) return run_synth(synth);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
  return kUsage;
}
