#pragma once

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gestura/backend.hpp"
#include "gestura/config.hpp"
#include "gestura/frame_stream.hpp"
#include "gestura/gesture_engine.hpp"
#include "gestura/intent_parser.hpp"
#include "gestura/planner.hpp"
#include "gestura/pointer_mapping.hpp"
#include "gestura/weather.hpp"

namespace gestura {

// One transcribed voice command: {"t": <ms>, "text": "<utterance>"}.
struct Utterance {
  std::int64_t t_ms = 0;
  std::string text;

  friend bool operator==(const Utterance&, const Utterance&) = default;
};

// Throws MalformedRecord or BadTimestamp.
Utterance parse_utterance(std::string_view line);
std::string serialize_utterance(const Utterance& u);

// Loads and stably sorts by t. A bad record throws naming its line number;
// a missing file is SourceUnavailable.
std::vector<Utterance> load_utterances(const std::filesystem::path& path);

struct SessionMetrics {
  std::uint64_t frames = 0;
  std::uint64_t utterances = 0;
  std::uint64_t events = 0;          // non-None gesture events
  std::uint64_t actions = 0;         // actions the backend accepted
  std::uint64_t errors = 0;          // rejected or failed actions
  std::uint64_t lag_drops = 0;       // live mode: stale frames skipped
  std::uint64_t out_of_order = 0;
  std::uint64_t malformed = 0;
  double latency_total_us = 0.0;
  double latency_max_us = 0.0;

  std::uint64_t drops() const { return lag_drops + out_of_order + malformed; }
  double mean_latency_ms() const;
  std::string summary() const;
  std::string to_json() const;
};

// The sequential event loop state: one gesture engine, one pointer, one
// backend. Every accepted action is appended to the log as one JSONL line.
class Session {
 public:
  Session(const SessionConfig& cfg, InjectionBackend& backend, const WeatherProvider* weather,
          const RuleTable& rules, std::ostream* log, std::ostream* diagnostics = nullptr);

  void on_frame(const HandFrame& frame);
  void on_utterance(const Utterance& utterance);

  void record_latency(std::chrono::steady_clock::duration d);
  void set_flush_each(bool flush) { flush_each_ = flush; }

  SessionMetrics& metrics() { return metrics_; }
  const SessionMetrics& metrics() const { return metrics_; }
  const PointerState& pointer() const { return pointer_; }
  const GestureEngine& engine() const { return engine_; }

 private:
  void execute(const std::vector<Action>& plan);

  SessionConfig cfg_;
  InjectionBackend& backend_;
  const RuleTable& rules_;
  std::ostream* log_;
  std::ostream* diag_;
  GestureEngine engine_;
  PointerState pointer_;
  PlanContext plan_ctx_;
  SessionMetrics metrics_;
  bool flush_each_ = false;
};

// Replay: every frame is processed; utterances interleave by timestamp with
// frames winning ties.
SessionMetrics run_replay(FrameStream& frames, std::span<const Utterance> utterances,
                          Session& session);

// Live: latest-frame-wins. Stale frames are skipped and counted as lag drops.
// Returns when the source ends or stop becomes true.
SessionMetrics run_live(LatestFrameFeed& feed, std::span<const Utterance> utterances,
                        Session& session, const std::atomic<bool>* stop = nullptr);

}  // namespace gestura
