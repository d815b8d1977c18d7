// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/serve.hpp"

#include <sys/socket.h>

#include <cerrno>
#include <condition_variable>
#include <deque>
#include <fstream>

#include "engine/io.hpp"
#include "engine/session.hpp"

namespace tabletale::session {

namespace {

std::string error_line(const Error& e, std::size_t line) {
  io::Json j;
  j["type"] = "error";
  j["code"] = std::string(to_string(e.code()));
  j["message"] = e.what();
  j["line"] = line;
  return io::canonical(j);
}

/// Outbound channel shared by the reader and processing threads.
class Outbox {
 public:
  Outbox(int fd, std::ofstream* record) : fd_(fd), record_(record) {}

  /// `recorded` lines also go to the outbound recording.
  bool send(const std::string& line, bool recorded) {
    std::lock_guard lock(mutex_);
    if (!ok_) return false;
    if (recorded && record_ && record_->is_open()) *record_ << line << '\n' << std::flush;
    ok_ = net::write_all(fd_, line + "\n");
    return ok_;
  }
  bool ok() {
    std::lock_guard lock(mutex_);
    return ok_;
  }

 private:
  int fd_;
  std::ofstream* record_;
  std::mutex mutex_;
  bool ok_ = true;
};

bool blank(const std::string& s) { return s.find_first_not_of(" \t\r") == std::string::npos; }

}  // namespace

Server::Server(scene::Presentation presentation, ServeOptions options)
    : presentation_(std::move(presentation)), options_(std::move(options)) {
  if (presentation_.scenes.empty())
    throw Error(ErrorCode::InvalidArgument, "presentation has no scenes");
  listener_ = net::listen_on(options_.listen);
  port_ = net::bound_port(listener_);
}

Server::~Server() {
  stop();
  std::lock_guard lock(threadsMutex_);
  for (auto& t : threads_)
    if (t.joinable()) t.join();
}

void Server::stop() {
  stopping_ = true;
  listener_.shutdown();
}

void Server::run() {
  while (!stopping_) {
    if (options_.maxSessions > 0 && started_ >= options_.maxSessions) break;
    int fd = ::accept(listener_.fd(), nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      break;
    }
    const int number = ++started_;
    std::lock_guard lock(threadsMutex_);
    threads_.emplace_back([this, fd, number] { serve_client(net::Socket(fd), number); });
  }
  std::list<std::thread> threads;
  {
    std::lock_guard lock(threadsMutex_);
    threads.swap(threads_);
  }
  for (auto& t : threads) t.join();
}

void Server::serve_client(net::Socket client, int sessionNumber) {
  std::ofstream inRecord, outRecord;
  if (options_.recordPrefix) {
    const std::string base = options_.recordPrefix->string() + "-" + std::to_string(sessionNumber);
    inRecord.open(base + ".in.jsonl", std::ios::binary);
    outRecord.open(base + ".out.jsonl", std::ios::binary);
  }
  Outbox out(client.fd(), &outRecord);
  net::LineReader reader(client.fd());
  std::size_t lineNo = 0;

  std::optional<io::StreamHeader> header;
  while (!header) {
    auto line = reader.next();
    if (!line) return;
    ++lineNo;
    if (blank(*line)) continue;
    try {
      header = io::parse_stream_header(*line);
    } catch (const Error& e) {
      if (!out.send(error_line(e, lineNo), false)) return;
    }
  }

  std::unique_ptr<condition::Oracle> oracle;
  if (options_.oracle)
    oracle = std::make_unique<net::RemoteOracle>(*options_.oracle);
  else
    oracle = condition::scripted_oracle(header->oracleScript.value_or(condition::OracleScript{}));
  Session session(presentation_, header->frameSize, std::move(oracle));

  if (inRecord.is_open()) inRecord << io::header_line(*header) << '\n' << std::flush;
  out.send(io::event_log_header(), true);
  out.send(io::render_log_header(header->frameSize), true);

  std::mutex queueMutex;
  std::condition_variable queueReady;
  std::deque<io::StreamItem> queue;
  bool closed = false;
  std::atomic<std::uint64_t> processed{0};

  std::thread worker([&] {
    for (;;) {
      io::StreamItem item;
      {
        std::unique_lock lock(queueMutex);
        queueReady.wait(lock, [&] { return closed || !queue.empty(); });
        if (queue.empty()) return;
        item = std::move(queue.front());
        queue.pop_front();
      }
      if (!out.ok()) continue;
      if (const auto* c = std::get_if<io::Control>(&item)) {
        session.handle_control(*c);
        continue;
      }
      try {
        auto result = session.process_frame(std::get<tracking::TrackFrame>(item));
        for (const auto& r : result.records) out.send(io::event_line(r), true);
        out.send(io::render_line(result.frame), true);
        ++processed;
      } catch (const Error& e) {
        out.send(error_line(e, 0), false);
        client.shutdown();
      }
    }
  });

  std::optional<std::int64_t> lastIndex;
  std::optional<double> lastTime;
  std::uint64_t received = 0;
  while (auto line = reader.next()) {
    ++lineNo;
    if (blank(*line)) continue;
    io::StreamItem item;
    try {
      item = io::parse_stream_item(*line, lineNo, header->frameSize);
    } catch (const Error& e) {
      if (!out.send(error_line(e, lineNo), false)) break;
      continue;
    }
    if (const auto* c = std::get_if<io::Control>(&item); c && c->kind == io::ControlKind::Status) {
      io::Json j;
      j["type"] = "status";
      j["session"] = sessionNumber;
      j["framesReceived"] = received;
      j["framesProcessed"] = processed.load();
      {
        std::lock_guard lock(queueMutex);
        j["queueDepth"] = queue.size();
      }
      if (!out.send(io::canonical(j), false)) break;
      continue;
    }
    if (const auto* f = std::get_if<tracking::TrackFrame>(&item)) {
      if ((lastIndex && f->frameIndex <= *lastIndex) || (lastTime && f->timestamp <= *lastTime)) {
        out.send(error_line(Error(ErrorCode::StreamOrder,
                                  "frame " + std::to_string(f->frameIndex) +
                                      " is not after the previous frame; session closed"),
                            lineNo),
                 false);
        break;
      }
      lastIndex = f->frameIndex;
      lastTime = f->timestamp;
      ++received;
    }
    if (inRecord.is_open()) inRecord << io::item_line(item) << '\n' << std::flush;
    {
      std::lock_guard lock(queueMutex);
      queue.push_back(std::move(item));
    }
    queueReady.notify_one();
  }
  {
    std::lock_guard lock(queueMutex);
    closed = true;
  }
  queueReady.notify_one();
  worker.join();
}

}  // namespace tabletale::session
