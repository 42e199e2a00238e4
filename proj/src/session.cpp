#include "gestura/session.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

using Clock = std::chrono::steady_clock;

Utterance parse_utterance(std::string_view line) {
  auto doc = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::MalformedRecord, "utterance is not a JSON object");
  }
  auto t = doc.find("t");
  auto text = doc.find("text");
  if (t == doc.end() || !t->is_number_integer()) {
    throw Error(ErrorCode::MalformedRecord, "missing or non-integer \"t\"");
  }
  if (text == doc.end() || !text->is_string()) {
    throw Error(ErrorCode::MalformedRecord, "missing \"text\"");
  }
  Utterance u{t->get<std::int64_t>(), text->get<std::string>()};
  if (u.t_ms <= 0) throw Error(ErrorCode::BadTimestamp, "t must be > 0");
  return u;
}

std::string serialize_utterance(const Utterance& u) {
  nlohmann::ordered_json doc;
  doc["t"] = u.t_ms;
  doc["text"] = u.text;
  return doc.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

std::vector<Utterance> load_utterances(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot open " + path.string());
  std::vector<Utterance> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_utterance(line));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + " line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Utterance& a, const Utterance& b) { return a.t_ms < b.t_ms; });
  return out;
}

double SessionMetrics::mean_latency_ms() const {
  return frames == 0 ? 0.0 : latency_total_us / static_cast<double>(frames) / 1000.0;
}

std::string SessionMetrics::summary() const {
  char line[512];
  std::snprintf(line, sizeof(line),
                "frames=%llu drops=%llu (lag=%llu out_of_order=%llu malformed=%llu) "
                "utterances=%llu events=%llu actions=%llu errors=%llu "
                "mean_latency_ms=%.4f max_latency_ms=%.4f",
                static_cast<unsigned long long>(frames), static_cast<unsigned long long>(drops()),
                static_cast<unsigned long long>(lag_drops),
                static_cast<unsigned long long>(out_of_order),
                static_cast<unsigned long long>(malformed),
                static_cast<unsigned long long>(utterances),
                static_cast<unsigned long long>(events), static_cast<unsigned long long>(actions),
                static_cast<unsigned long long>(errors), mean_latency_ms(),
                latency_max_us / 1000.0);
  return line;
}

std::string SessionMetrics::to_json() const {
  nlohmann::ordered_json doc;
  doc["frames"] = frames;
  doc["drops"] = drops();
  doc["lag_drops"] = lag_drops;
  doc["out_of_order"] = out_of_order;
  doc["malformed"] = malformed;
  doc["utterances"] = utterances;
  doc["events"] = events;
  doc["actions"] = actions;
  doc["errors"] = errors;
  doc["mean_latency_ms"] = mean_latency_ms();
  doc["max_latency_ms"] = latency_max_us / 1000.0;
  return doc.dump();
}

Session::Session(const SessionConfig& cfg, InjectionBackend& backend,
                 const WeatherProvider* weather, const RuleTable& rules, std::ostream* log,
                 std::ostream* diagnostics)
    : cfg_(cfg),
      backend_(backend),
      rules_(rules),
      log_(log),
      diag_(diagnostics),
      engine_(cfg.fsm) {
  cfg_.validate();
  plan_ctx_.weather = weather;
  plan_ctx_.backend = &backend_;
  plan_ctx_.screenshot_dir = cfg_.screenshot_dir;
  if (!cfg_.default_city.empty()) plan_ctx_.default_city = cfg_.default_city;
}

void Session::execute(const std::vector<Action>& plan) {
  for (const Action& action : plan) {
    try {
      backend_.execute(action);
    } catch (const Error& e) {
      ++metrics_.errors;
      if (diag_ != nullptr) *diag_ << "action failed at t=" << action.t_ms << ": " << e.what() << '\n';
      continue;
    }
    ++metrics_.actions;
    if (log_ != nullptr) {
      *log_ << action_to_json(action) << '\n';
      if (flush_each_) log_->flush();
    }
  }
}

void Session::on_frame(const HandFrame& frame) {
  ++metrics_.frames;
  const GestureEvent event = engine_.push(frame);
  if (event.kind == GestureKind::None) return;
  ++metrics_.events;
  execute(gesture_to_actions(event, pointer_, cfg_.map));
}

void Session::on_utterance(const Utterance& utterance) {
  ++metrics_.utterances;
  const Intent intent = rules_.match(utterance.text);
  execute(intent_to_actions(intent, utterance.t_ms, plan_ctx_));
}

void Session::record_latency(Clock::duration d) {
  const double us = std::chrono::duration<double, std::micro>(d).count();
  metrics_.latency_total_us += us;
  metrics_.latency_max_us = std::max(metrics_.latency_max_us, us);
}

SessionMetrics run_replay(FrameStream& frames, std::span<const Utterance> utterances,
                          Session& session) {
  std::size_t next_u = 0;
  while (auto frame = frames.next()) {
    const auto read_at = frames.last_read_at();
    while (next_u < utterances.size() && utterances[next_u].t_ms < frame->t_ms) {
      session.on_utterance(utterances[next_u++]);
    }
    session.on_frame(*frame);
    session.record_latency(Clock::now() - read_at);
  }
  for (; next_u < utterances.size(); ++next_u) session.on_utterance(utterances[next_u]);

  auto& m = session.metrics();
  m.out_of_order = frames.stats().out_of_order;
  m.malformed = frames.stats().malformed;
  return m;
}

SessionMetrics run_live(LatestFrameFeed& feed, std::span<const Utterance> utterances,
                        Session& session, const std::atomic<bool>* stop) {
  auto stopped = [&] { return stop != nullptr && stop->load(); };
  std::size_t next_u = 0;
  while (!stopped()) {
    auto taken = feed.take_latest();
    if (!taken) break;
    session.metrics().lag_drops += taken->skipped;
    while (next_u < utterances.size() && utterances[next_u].t_ms < taken->frame.t_ms) {
      session.on_utterance(utterances[next_u++]);
    }
    session.on_frame(taken->frame);
    session.record_latency(Clock::now() - taken->read_at);
  }
  if (!stopped()) {
    for (; next_u < utterances.size(); ++next_u) session.on_utterance(utterances[next_u]);
  }
  feed.stop();

  auto& m = session.metrics();
  const StreamStats stats = feed.stream_stats();
  m.out_of_order = stats.out_of_order;
  m.malformed = stats.malformed;
  return m;
}

}  // namespace gestura
