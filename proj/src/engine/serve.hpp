// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "engine/net.hpp"
#include "engine/scene.hpp"

namespace tabletale::session {

struct ServeOptions {
  net::Endpoint listen{"127.0.0.1", 0};
  /// Stop accepting after this many sessions; 0 means serve forever.
  int maxSessions = 0;
  /// Remote oracle for every session; otherwise the script in the client's
  /// header (or an empty script) is used.
  std::optional<net::Endpoint> oracle;
  /// When set, session N writes <prefix>-N.in.jsonl (accepted inbound
  /// records, replayable as a stream) and <prefix>-N.out.jsonl (outbound
  /// header, event and render records).
  std::optional<std::filesystem::path> recordPrefix;
};

/// TCP service hosting one Session per client connection.
class Server {
 public:
  Server(scene::Presentation presentation, ServeOptions options);
  ~Server();

  /// Port actually bound (useful with port 0).
  int port() const { return port_; }
  /// Accepts clients until stop() or maxSessions; returns after all sessions end.
  void run();
  void stop();
  int sessions_started() const { return started_.load(); }

 private:
  void serve_client(net::Socket client, int sessionNumber);

  scene::Presentation presentation_;
  ServeOptions options_;
  net::Socket listener_;
  int port_ = 0;
  std::atomic<bool> stopping_{false};
  std::atomic<int> started_{0};
  std::mutex threadsMutex_;
  std::list<std::thread> threads_;
};

}  // namespace tabletale::session
