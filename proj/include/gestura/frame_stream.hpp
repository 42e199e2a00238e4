#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>

#include "gestura/landmark.hpp"

namespace gestura {

enum class SourceKind : std::uint8_t { File, Stdin, Socket };

// Source descriptor accepted by open_stream:
//   "-" or "stdin"        standard input
//   "tcp:HOST:PORT"       listen on HOST:PORT and read one producer connection
//   "file:PATH" or PATH   a JSONL frame file
struct SourceSpec {
  SourceKind kind = SourceKind::File;
  std::string path;
  std::string host;
  std::uint16_t port = 0;

  static SourceSpec parse(std::string_view descriptor);
  std::string describe() const;
};

// Line-oriented byte source. read_line() returns std::nullopt at end of input.
class LineReader {
 public:
  virtual ~LineReader() = default;
  virtual std::optional<std::string> read_line() = 0;
  // Unblocks a pending read_line() from another thread. Subsequent reads
  // return std::nullopt.
  virtual void interrupt() {}
};

class IstreamLineReader final : public LineReader {
 public:
  // Non-owning: the stream must outlive the reader.
  explicit IstreamLineReader(std::istream& in) : in_(&in) {}
  explicit IstreamLineReader(std::unique_ptr<std::istream> owned);

  std::optional<std::string> read_line() override;

 private:
  std::unique_ptr<std::istream> owned_;
  std::istream* in_;
};

// Reads newline-delimited text from a file descriptor (stdin in live mode).
// Polls so that interrupt() can stop a blocked reader.
class FdLineReader final : public LineReader {
 public:
  explicit FdLineReader(int fd) : fd_(fd) {}

  std::optional<std::string> read_line() override;
  void interrupt() override { interrupted_ = true; }

 private:
  int fd_;
  std::string buffer_;
  std::atomic<bool> interrupted_{false};
  bool eof_ = false;
};

// Newline-delimited TCP listener. Binds in the constructor (bind failure is
// SourceUnavailable) and accepts a single producer on the first read.
class TcpLineReader final : public LineReader {
 public:
  TcpLineReader(const std::string& host, std::uint16_t port);
  ~TcpLineReader() override;

  TcpLineReader(const TcpLineReader&) = delete;
  TcpLineReader& operator=(const TcpLineReader&) = delete;

  std::optional<std::string> read_line() override;
  void interrupt() override;

  // Actual bound port; differs from the requested one when binding port 0.
  std::uint16_t port() const { return port_; }

 private:
  bool fill();

  int listen_fd_ = -1;
  int conn_fd_ = -1;
  std::uint16_t port_ = 0;
  std::string buffer_;
  std::atomic<bool> interrupted_{false};
  bool eof_ = false;
};

std::unique_ptr<LineReader> make_line_reader(const SourceSpec& spec);

enum class GapPolicy : std::uint8_t {
  // Malformed records are counted and skipped; live capture survives glitches.
  SkipAndCount,
  // Malformed records throw, naming the offending line number.
  Strict,
};

struct StreamStats {
  std::uint64_t lines = 0;
  std::uint64_t emitted = 0;
  std::uint64_t out_of_order = 0;
  std::uint64_t malformed = 0;

  std::uint64_t dropped() const { return out_of_order + malformed; }
};

// Validated frames in non-decreasing t_ms order. A frame older than the last
// emitted one is dropped and counted. Single consumer.
class FrameStream {
 public:
  FrameStream(std::unique_ptr<LineReader> reader, SourceKind kind,
              GapPolicy policy = GapPolicy::SkipAndCount);

  std::optional<HandFrame> next();

  SourceKind kind() const { return kind_; }
  GapPolicy policy() const { return policy_; }
  const StreamStats& stats() const { return stats_; }
  LineReader& reader() { return *reader_; }
  // When the line behind the last returned frame was read, before parsing.
  std::chrono::steady_clock::time_point last_read_at() const { return last_read_at_; }

 private:
  std::unique_ptr<LineReader> reader_;
  std::chrono::steady_clock::time_point last_read_at_{};
  SourceKind kind_;
  GapPolicy policy_;
  StreamStats stats_;
  std::optional<std::int64_t> last_t_;
};

// Throws SourceUnavailable when the file is missing or the socket cannot bind.
FrameStream open_stream(const SourceSpec& spec, GapPolicy policy = GapPolicy::SkipAndCount);
FrameStream open_stream(std::string_view descriptor, GapPolicy policy = GapPolicy::SkipAndCount);

// Runs a FrameStream on a producer thread and hands frames to the consumer
// through an ordered queue. take_latest() implements latest-frame-wins: it
// returns the newest queued frame and reports how many older ones it skipped.
class LatestFrameFeed {
 public:
  explicit LatestFrameFeed(FrameStream stream);
  ~LatestFrameFeed();

  LatestFrameFeed(const LatestFrameFeed&) = delete;
  LatestFrameFeed& operator=(const LatestFrameFeed&) = delete;

  struct Taken {
    HandFrame frame;
    std::uint64_t skipped = 0;
    std::chrono::steady_clock::time_point read_at;
  };

  // Blocks until a frame is available or the source ends. Rethrows a
  // producer-side error (Strict policy) once the queue is drained.
  std::optional<Taken> take_latest();

  // Stops the producer; pending and future take_latest() calls drain the
  // queue and then return std::nullopt.
  void stop();

  // Waits for the producer to finish, then returns its final counters.
  StreamStats stream_stats();

 private:
  void produce();

  FrameStream stream_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::pair<HandFrame, std::chrono::steady_clock::time_point>> queue_;
  bool done_ = false;
  StreamStats final_stats_;
  std::exception_ptr error_;
  std::thread producer_;
};

}  // namespace gestura
