// Copyright 2026 The tabletale Authors.
// SPDX-License-Identifier: Apache-2.0

#include "engine/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <sys/time.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <chrono>
#include <cstring>

#include "engine/types.hpp"

namespace tabletale::net {

Endpoint parse_endpoint(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos)
    throw Error(ErrorCode::InvalidArgument, "endpoint must be host:port, got '" + text + "'");
  Endpoint ep;
  if (colon > 0) ep.host = text.substr(0, colon);
  const std::string port = text.substr(colon + 1);
  auto [ptr, ec] = std::from_chars(port.data(), port.data() + port.size(), ep.port);
  if (ec != std::errc{} || ptr != port.data() + port.size() || ep.port < 0 || ep.port > 65535)
    throw Error(ErrorCode::InvalidArgument, "bad port in endpoint '" + text + "'");
  return ep;
}

Socket& Socket::operator=(Socket&& o) noexcept {
  if (this != &o) {
    close();
    fd_ = o.release();
  }
  return *this;
}

int Socket::release() {
  int fd = fd_;
  fd_ = -1;
  return fd;
}

void Socket::close() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
}

void Socket::shutdown() {
  if (fd_ >= 0) ::shutdown(fd_, SHUT_RDWR);
}

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw Error(ErrorCode::Network, what + ": " + std::strerror(errno));
}

sockaddr_in resolve(const Endpoint& ep) {
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(ep.port));
  if (ep.host.empty() || ep.host == "0.0.0.0") {
    addr.sin_addr.s_addr = htonl(INADDR_ANY);
    return addr;
  }
  if (::inet_pton(AF_INET, ep.host.c_str(), &addr.sin_addr) == 1) return addr;
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(ep.host.c_str(), nullptr, &hints, &res) != 0 || !res)
    throw Error(ErrorCode::Network, "cannot resolve host '" + ep.host + "'");
  addr.sin_addr = reinterpret_cast<sockaddr_in*>(res->ai_addr)->sin_addr;
  ::freeaddrinfo(res);
  return addr;
}

void set_timeout(int fd, double seconds) {
  timeval tv{};
  tv.tv_sec = static_cast<time_t>(seconds);
  tv.tv_usec = static_cast<suseconds_t>((seconds - static_cast<double>(tv.tv_sec)) * 1e6);
  ::setsockopt(fd, SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof tv);
  ::setsockopt(fd, SOL_SOCKET, SO_SNDTIMEO, &tv, sizeof tv);
}

void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>((v >> 24) & 0xff));
  out.push_back(static_cast<char>((v >> 16) & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
  out.push_back(static_cast<char>(v & 0xff));
}

}  // namespace

Socket connect_to(const Endpoint& ep, double timeoutSeconds) {
  const sockaddr_in addr = resolve(ep);
  Socket s(::socket(AF_INET, SOCK_STREAM, 0));
  if (!s.valid()) fail("socket");
  set_timeout(s.fd(), timeoutSeconds);
  if (::connect(s.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0)
    fail("connect to " + ep.host + ":" + std::to_string(ep.port));
  int one = 1;
  ::setsockopt(s.fd(), IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return s;
}

Socket listen_on(const Endpoint& ep, int backlog) {
  const sockaddr_in addr = resolve(ep);
  Socket s(::socket(AF_INET, SOCK_STREAM, 0));
  if (!s.valid()) fail("socket");
  int one = 1;
  ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  if (::bind(s.fd(), reinterpret_cast<const sockaddr*>(&addr), sizeof addr) != 0)
    fail("bind " + ep.host + ":" + std::to_string(ep.port));
  if (::listen(s.fd(), backlog) != 0) fail("listen");
  return s;
}

int bound_port(const Socket& s) {
  sockaddr_in addr{};
  socklen_t len = sizeof addr;
  if (::getsockname(s.fd(), reinterpret_cast<sockaddr*>(&addr), &len) != 0) fail("getsockname");
  return ntohs(addr.sin_port);
}

bool read_exact(int fd, void* buf, std::size_t n) {
  auto* p = static_cast<char*>(buf);
  while (n > 0) {
    ssize_t r = ::recv(fd, p, n, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    p += r;
    n -= static_cast<std::size_t>(r);
  }
  return true;
}

bool write_all(int fd, const void* buf, std::size_t n) {
  const auto* p = static_cast<const char*>(buf);
  while (n > 0) {
    ssize_t r = ::send(fd, p, n, MSG_NOSIGNAL);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0) return false;
    p += r;
    n -= static_cast<std::size_t>(r);
  }
  return true;
}

bool write_all(int fd, const std::string& s) { return write_all(fd, s.data(), s.size()); }

std::optional<std::string> LineReader::next() {
  for (;;) {
    if (auto nl = buffer_.find('\n'); nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return line;
    }
    if (eof_) {
      if (buffer_.empty()) return std::nullopt;
      std::string line = std::move(buffer_);
      buffer_.clear();
      return line;
    }
    char chunk[4096];
    ssize_t r = ::recv(fd_, chunk, sizeof chunk, 0);
    if (r < 0 && errno == EINTR) continue;
    if (r <= 0)
      eof_ = true;
    else
      buffer_.append(chunk, static_cast<std::size_t>(r));
  }
}

std::string encode_request(const std::string& prompt, std::int64_t frameRef) {
  const std::string ref = std::to_string(frameRef);
  std::string out;
  out.reserve(8 + prompt.size() + ref.size());
  put_u32(out, static_cast<std::uint32_t>(prompt.size()));
  out += prompt;
  put_u32(out, static_cast<std::uint32_t>(ref.size()));
  out += ref;
  return out;
}

RemoteOracle::RemoteOracle(Endpoint endpoint, double timeoutSeconds, std::size_t maxQueued)
    : endpoint_(std::move(endpoint)), timeout_(timeoutSeconds), maxQueued_(maxQueued) {
  worker_ = std::thread([this] { run(); });
}

RemoteOracle::~RemoteOracle() {
  {
    std::lock_guard lock(mutex_);
    stop_ = true;
    conn_.shutdown();
  }
  wake_.notify_all();
  worker_.join();
}

void RemoteOracle::submit(const condition::OracleRequest& request) {
  {
    std::lock_guard lock(mutex_);
    if (queue_.size() >= maxQueued_)
      throw Error(ErrorCode::OracleUnavailable, "remote oracle queue full");
    queue_.push_back(request);
  }
  wake_.notify_one();
}

std::vector<condition::OracleAnswer> RemoteOracle::drain(double) {
  std::lock_guard lock(mutex_);
  return std::exchange(done_, {});
}

int RemoteOracle::ask(const condition::OracleRequest& request) {
  if (!conn_.valid()) {
    Socket s = connect_to(endpoint_, timeout_);
    std::lock_guard lock(mutex_);
    if (stop_) return -1;
    conn_ = std::move(s);
  }
  const std::string frame = encode_request(request.prompt, request.frameRef);
  char reply = 0;
  if (!write_all(conn_.fd(), frame) || !read_exact(conn_.fd(), &reply, 1)) {
    std::lock_guard lock(mutex_);
    conn_.close();
    return -1;
  }
  if (reply == '0') return 0;
  if (reply == '1') return 1;
  return -1;
}

void RemoteOracle::run() {
  for (;;) {
    condition::OracleRequest req;
    {
      std::unique_lock lock(mutex_);
      wake_.wait(lock, [&] { return stop_ || !queue_.empty(); });
      if (stop_) return;
      req = queue_.front();
      queue_.pop_front();
    }
    const auto start = std::chrono::steady_clock::now();
    int answer = -1;
    try {
      answer = ask(req);
    } catch (const Error&) {
      answer = -1;
    }
    condition::OracleAnswer a;
    a.requestId = req.requestId;
    a.conditionId = req.conditionId;
    a.answer = answer;
    a.latencySeconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    a.frameIndexAsked = req.frameRef;
    std::lock_guard lock(mutex_);
    done_.push_back(std::move(a));
  }
}

}  // namespace tabletale::net
