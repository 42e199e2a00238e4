#include "gestura/frame_stream.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <utility>

#include "gestura/error.hpp"

namespace gestura {

SourceSpec SourceSpec::parse(std::string_view descriptor) {
  SourceSpec spec;
  if (descriptor == "-" || descriptor == "stdin") {
    spec.kind = SourceKind::Stdin;
    return spec;
  }
  if (descriptor.starts_with("tcp:")) {
    std::string_view rest = descriptor.substr(4);
    auto colon = rest.rfind(':');
    if (colon == std::string_view::npos || colon == 0) {
      throw Error(ErrorCode::SourceUnavailable,
                  "tcp source must be tcp:HOST:PORT, got " + std::string(descriptor));
    }
    std::string_view port_text = rest.substr(colon + 1);
    unsigned port = 0;
    auto [ptr, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc() || ptr != port_text.data() + port_text.size() || port > 65535) {
      throw Error(ErrorCode::SourceUnavailable, "bad port in " + std::string(descriptor));
    }
    spec.kind = SourceKind::Socket;
    spec.host = std::string(rest.substr(0, colon));
    spec.port = static_cast<std::uint16_t>(port);
    return spec;
  }
  if (descriptor.starts_with("file:")) {
    descriptor.remove_prefix(5);
  }
  spec.kind = SourceKind::File;
  spec.path = std::string(descriptor);
  return spec;
}

std::string SourceSpec::describe() const {
  switch (kind) {
    case SourceKind::Stdin: return "stdin";
    case SourceKind::Socket: return "tcp:" + host + ":" + std::to_string(port);
    case SourceKind::File: return "file:" + path;
  }
  return "?";
}

IstreamLineReader::IstreamLineReader(std::unique_ptr<std::istream> owned)
    : owned_(std::move(owned)), in_(owned_.get()) {}

std::optional<std::string> IstreamLineReader::read_line() {
  std::string line;
  if (!std::getline(*in_, line)) {
    return std::nullopt;
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  return line;
}

namespace {

std::optional<std::string> pop_line(std::string& buffer) {
  auto nl = buffer.find('\n');
  if (nl == std::string::npos) return std::nullopt;
  std::string line = buffer.substr(0, nl);
  buffer.erase(0, nl + 1);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

// Waits until fd is readable, giving up when the flag is raised.
bool wait_readable(int fd, const std::atomic<bool>& interrupted) {
  pollfd pfd{fd, POLLIN, 0};
  while (!interrupted) {
    int rc = ::poll(&pfd, 1, 100);
    if (rc > 0) return true;
    if (rc < 0 && errno != EINTR) return false;
  }
  return false;
}

}  // namespace

std::optional<std::string> FdLineReader::read_line() {
  while (!interrupted_) {
    if (auto line = pop_line(buffer_)) return line;
    if (eof_) break;
    if (!wait_readable(fd_, interrupted_)) return std::nullopt;
    char chunk[4096];
    ssize_t n = ::read(fd_, chunk, sizeof(chunk));
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) {
      eof_ = true;
      continue;
    }
    buffer_.append(chunk, static_cast<std::size_t>(n));
  }
  if (!interrupted_ && !buffer_.empty()) {
    return std::exchange(buffer_, std::string());
  }
  return std::nullopt;
}

TcpLineReader::TcpLineReader(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* found = nullptr;
  std::string service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &found); rc != 0) {
    throw Error(ErrorCode::SourceUnavailable,
                "cannot resolve " + host + ": " + ::gai_strerror(rc));
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(found, &::freeaddrinfo);

  listen_fd_ = ::socket(found->ai_family, found->ai_socktype, found->ai_protocol);
  if (listen_fd_ < 0) {
    throw Error(ErrorCode::SourceUnavailable, std::string("socket: ") + std::strerror(errno));
  }
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  if (::bind(listen_fd_, found->ai_addr, found->ai_addrlen) != 0 || ::listen(listen_fd_, 1) != 0) {
    std::string why = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw Error(ErrorCode::SourceUnavailable,
                "cannot listen on " + host + ":" + std::to_string(port) + ": " + why);
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpLineReader::~TcpLineReader() {
  if (conn_fd_ >= 0) ::close(conn_fd_);
  if (listen_fd_ >= 0) ::close(listen_fd_);
}

void TcpLineReader::interrupt() {
  interrupted_ = true;
}

bool TcpLineReader::fill() {
  if (conn_fd_ < 0) {
    if (!wait_readable(listen_fd_, interrupted_)) return false;
    conn_fd_ = ::accept(listen_fd_, nullptr, nullptr);
    if (conn_fd_ < 0) return false;
  }
  if (!wait_readable(conn_fd_, interrupted_)) return false;
  char chunk[4096];
  ssize_t n = 0;
  do {
    n = ::recv(conn_fd_, chunk, sizeof(chunk), 0);
  } while (n < 0 && errno == EINTR && !interrupted_);
  if (n <= 0) {
    return false;
  }
  buffer_.append(chunk, static_cast<std::size_t>(n));
  return true;
}

std::optional<std::string> TcpLineReader::read_line() {
  while (!interrupted_) {
    if (auto line = pop_line(buffer_)) return line;
    if (eof_ || !fill()) {
      eof_ = true;
      break;
    }
  }
  // Producer closed: hand out a final unterminated line, if any.
  if (!interrupted_ && !buffer_.empty()) {
    return std::exchange(buffer_, std::string());
  }
  return std::nullopt;
}

std::unique_ptr<LineReader> make_line_reader(const SourceSpec& spec) {
  switch (spec.kind) {
    case SourceKind::Stdin:
      return std::make_unique<FdLineReader>(STDIN_FILENO);
    case SourceKind::Socket:
      return std::make_unique<TcpLineReader>(spec.host, spec.port);
    case SourceKind::File: {
      auto file = std::make_unique<std::ifstream>(spec.path);
      if (!*file) {
        throw Error(ErrorCode::SourceUnavailable, "cannot open " + spec.path);
      }
      return std::make_unique<IstreamLineReader>(std::move(file));
    }
  }
  throw Error(ErrorCode::SourceUnavailable, "unknown source kind");
}

FrameStream::FrameStream(std::unique_ptr<LineReader> reader, SourceKind kind, GapPolicy policy)
    : reader_(std::move(reader)), kind_(kind), policy_(policy) {}

std::optional<HandFrame> FrameStream::next() {
  while (auto line = reader_->read_line()) {
    last_read_at_ = std::chrono::steady_clock::now();
    ++stats_.lines;
    if (line->find_first_not_of(" \t") == std::string::npos) {
      continue;
    }
    HandFrame frame;
    try {
      frame = parse_frame(*line);
    } catch (const Error& e) {
      if (policy_ == GapPolicy::Strict) {
        throw Error(e.code(), "line " + std::to_string(stats_.lines) + ": " + e.detail());
      }
      ++stats_.malformed;
      continue;
    }
    if (last_t_ && frame.t_ms < *last_t_) {
      ++stats_.out_of_order;
      continue;
    }
    last_t_ = frame.t_ms;
    ++stats_.emitted;
    return frame;
  }
  return std::nullopt;
}

FrameStream open_stream(const SourceSpec& spec, GapPolicy policy) {
  return FrameStream(make_line_reader(spec), spec.kind, policy);
}

FrameStream open_stream(std::string_view descriptor, GapPolicy policy) {
  return open_stream(SourceSpec::parse(descriptor), policy);
}

LatestFrameFeed::LatestFrameFeed(FrameStream stream)
    : stream_(std::move(stream)), producer_([this] { produce(); }) {}

LatestFrameFeed::~LatestFrameFeed() {
  stop();
  if (producer_.joinable()) producer_.join();
}

void LatestFrameFeed::produce() {
  try {
    while (auto frame = stream_.next()) {
      std::lock_guard lock(mu_);
      queue_.emplace_back(*frame, stream_.last_read_at());
      cv_.notify_one();
    }
  } catch (...) {
    std::lock_guard lock(mu_);
    error_ = std::current_exception();
  }
  std::lock_guard lock(mu_);
  final_stats_ = stream_.stats();
  done_ = true;
  cv_.notify_all();
}

std::optional<LatestFrameFeed::Taken> LatestFrameFeed::take_latest() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return !queue_.empty() || done_; });
  if (queue_.empty()) {
    if (error_) std::rethrow_exception(std::exchange(error_, nullptr));
    return std::nullopt;
  }
  Taken taken{queue_.back().first, queue_.size() - 1, queue_.back().second};
  queue_.clear();
  return taken;
}

void LatestFrameFeed::stop() {
  stream_.reader().interrupt();
}

StreamStats LatestFrameFeed::stream_stats() {
  std::unique_lock lock(mu_);
  cv_.wait(lock, [this] { return done_; });
  return final_stats_;
}

}  // namespace gestura
