// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "engine/condition.hpp"

namespace tabletale::net {

struct Endpoint {
  std::string host = "127.0.0.1";
  int port = 0;
};

/// "host:port" or ":port". Throws Error{InvalidArgument}.
Endpoint parse_endpoint(const std::string& text);

/// Owning POSIX socket descriptor.
class Socket {
 public:
  Socket() = default;
  explicit Socket(int fd) : fd_(fd) {}
  Socket(Socket&& o) noexcept : fd_(o.release()) {}
  Socket& operator=(Socket&& o) noexcept;
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  ~Socket() { close(); }

  int fd() const { return fd_; }
  bool valid() const { return fd_ >= 0; }
  int release();
  void close();
  /// Unblocks a thread sitting in read/accept on this socket.
  void shutdown();

 private:
  int fd_ = -1;
};

/// Throws Error{Network}.
Socket connect_to(const Endpoint& ep, double timeoutSeconds = 5);
/// Port 0 picks a free port; see bound_port.
Socket listen_on(const Endpoint& ep, int backlog = 8);
int bound_port(const Socket& s);

/// Returns false on EOF or error.
bool read_exact(int fd, void* buf, std::size_t n);
bool write_all(int fd, const void* buf, std::size_t n);
bool write_all(int fd, const std::string& s);

/// Buffered reader splitting on '\n' (a trailing '\r' is stripped).
class LineReader {
 public:
  explicit LineReader(int fd) : fd_(fd) {}
  /// nullopt on EOF; a final unterminated line is still returned.
  std::optional<std::string> next();

 private:
  int fd_;
  std::string buffer_;
  bool eof_ = false;
};

/// Oracle request frame: u32 big-endian prompt length, prompt bytes,
/// u32 big-endian frameRef length, frameRef bytes (decimal ASCII).
std::string encode_request(const std::string& prompt, std::int64_t frameRef);

/// Remote yes/no oracle over a persistent TCP connection. Requests are sent
/// from a worker thread, so submit never blocks on the network. A reply
/// byte other than '0'/'1', or any transport failure, is delivered as an
/// invalid answer and counted as a protocol error by the caller.
class RemoteOracle final : public condition::Oracle {
 public:
  explicit RemoteOracle(Endpoint endpoint, double timeoutSeconds = 10,
                        std::size_t maxQueued = 16);
  ~RemoteOracle() override;

  void submit(const condition::OracleRequest& request) override;
  std::vector<condition::OracleAnswer> drain(double now) override;

 private:
  void run();
  int ask(const condition::OracleRequest& request);

  Endpoint endpoint_;
  double timeout_;
  std::size_t maxQueued_;
  Socket conn_;

  std::mutex mutex_;
  std::condition_variable wake_;
  std::deque<condition::OracleRequest> queue_;
  std::vector<condition::OracleAnswer> done_;
  bool stop_ = false;
  std::thread worker_;
};

}  // namespace tabletale::net
