#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gestura/backend.hpp"
#include "gestura/config.hpp"
#include "gestura/error.hpp"
#include "gestura/eval.hpp"
#include "gestura/frame_stream.hpp"
#include "gestura/intent_parser.hpp"
#include "gestura/landmark.hpp"
#include "gestura/session.hpp"
#include "gestura/weather.hpp"

namespace {

using namespace gestura;

std::atomic<bool> g_interrupted{false};

extern "C" void on_signal(int) { g_interrupted.store(true); }

void install_signal_handlers() {
  struct sigaction sa {};
  sa.sa_handler = on_signal;
  sigemptyset(&sa.sa_mask);
  sigaction(SIGINT, &sa, nullptr);
  sigaction(SIGTERM, &sa, nullptr);
}

struct CommonOptions {
  std::string config;
  std::vector<std::string> sets;
  std::string backend;
  std::string screen;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--config", o.config, "JSON config file");
  cmd->add_option("--set", o.sets, "Override a config key: KEY=VALUE (repeatable)");
  cmd->add_option("--backend", o.backend, "Injection backend")->check(CLI::IsMember({"mock", "os"}));
  cmd->add_option("--screen", o.screen, "Screen size WxH; overrides detection");
}

// defaults < config file < environment < --set < dedicated flags
SessionConfig resolve_config(const CommonOptions& o) {
  SessionConfig cfg;
  if (!o.config.empty()) apply_config_file(cfg, o.config);
  apply_environment(cfg);
  for (const auto& kv : o.sets) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "--set expects KEY=VALUE, got '" + kv + "'");
    }
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!o.backend.empty()) cfg.set("backend", o.backend);
  if (!o.screen.empty()) apply_screen(cfg, o.screen);
  cfg.validate();
  return cfg;
}

RuleTable load_rules(const SessionConfig& cfg) {
  return cfg.rules.empty() ? RuleTable::defaults() : RuleTable::load(cfg.rules);
}

std::unique_ptr<WeatherProvider> load_weather(const SessionConfig& cfg) {
  return make_weather_provider(cfg.weather, cfg.weather_fixtures, cfg.weather_url,
                               std::chrono::milliseconds(cfg.weather_timeout_ms));
}

// Opens --out; "-" is stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path == "-") return;
    file_.open(path, std::ios::out | std::ios::trunc | std::ios::binary);
    if (!file_) throw Error(ErrorCode::SourceUnavailable, "cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<Utterance> maybe_utterances(const std::string& path) {
  return path.empty() ? std::vector<Utterance>{} : load_utterances(path);
}

int cmd_run(const CommonOptions& common, const std::string& source, const std::string& out,
            const std::string& utterances_path) {
  SessionConfig cfg = resolve_config(common);
  auto backend = make_backend(cfg.backend, {cfg.mock_battery_percent, cfg.mock_battery_charging});
  if (!cfg.screen_explicit) {
    if (auto size = backend->screen_size()) {
      cfg.map.screen_w = size->w;
      cfg.map.screen_h = size->h;
    }
  }
  std::cerr << "effective config:\n" << cfg.to_json() << '\n';

  const auto utterances = maybe_utterances(utterances_path);
  auto rules = load_rules(cfg);
  auto weather = load_weather(cfg);
  Output log(out);
  Session session(cfg, *backend, weather.get(), rules, &log.stream(), &std::cerr);
  session.set_flush_each(true);

  LatestFrameFeed feed(open_stream(source, GapPolicy::SkipAndCount));
  std::cerr << "listening on " << SourceSpec::parse(source).describe() << '\n';

  std::atomic<bool> finished{false};
  std::thread watcher([&] {
    while (!finished.load()) {
      if (g_interrupted.load()) {
        feed.stop();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  SessionMetrics metrics;
  try {
    metrics = run_live(feed, utterances, session, &g_interrupted);
  } catch (...) {
    finished = true;
    watcher.join();
    throw;
  }
  finished = true;
  watcher.join();
  log.stream().flush();
  std::cerr << metrics.summary() << '\n';
  return 0;
}

int cmd_record(const std::string& source, const std::string& out) {
  FrameStream stream = open_stream(source, GapPolicy::SkipAndCount);
  Output file(out);
  std::atomic<bool> finished{false};
  std::thread watcher([&] {
    while (!finished.load()) {
      if (g_interrupted.load()) {
        stream.reader().interrupt();
        return;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(50));
    }
  });
  try {
    while (auto frame = stream.next()) {
      file.stream() << serialize_frame(*frame) << '\n';
    }
  } catch (...) {
    finished = true;
    watcher.join();
    throw;
  }
  finished = true;
  watcher.join();
  file.stream().flush();
  const auto& s = stream.stats();
  std::cerr << "recorded=" << s.emitted << " out_of_order=" << s.out_of_order
            << " malformed=" << s.malformed << '\n';
  return 0;
}

int cmd_replay(const CommonOptions& common, const std::string& frames, const std::string& out,
               const std::string& utterances_path) {
  SessionConfig cfg = resolve_config(common);
  std::cerr << "effective config:\n" << cfg.to_json() << '\n';
  auto backend = make_backend(cfg.backend, {cfg.mock_battery_percent, cfg.mock_battery_charging});
  const auto utterances = maybe_utterances(utterances_path);
  auto rules = load_rules(cfg);
  auto weather = load_weather(cfg);
  FrameStream stream = open_stream(SourceSpec{SourceKind::File, frames, {}, 0}, GapPolicy::Strict);
  Output log(out);
  Session session(cfg, *backend, weather.get(), rules, &log.stream(), &std::cerr);
  const SessionMetrics metrics = run_replay(stream, utterances, session);
  log.stream().flush();
  std::cerr << metrics.summary() << '\n';
  return 0;
}

struct EvalOptions {
  std::string frames;
  std::string labels;
  bool synthetic = false;
  double sigma = 0.0;
  std::uint64_t seed = 1;
  int reps = 4;
  int fps = 30;
  bool json = false;
  std::string write_frames;
  std::string write_labels;
};

void write_lines(const std::string& path, const auto& items, auto serialize) {
  std::ofstream f(path, std::ios::trunc | std::ios::binary);
  if (!f) throw Error(ErrorCode::SourceUnavailable, "cannot write " + path);
  for (const auto& item : items) f << serialize(item) << '\n';
}

int cmd_eval(const CommonOptions& common, const EvalOptions& o) {
  SessionConfig cfg = resolve_config(common);
  std::vector<HandFrame> frames;
  std::vector<LabeledSegment> labels;
  if (o.synthetic) {
    SuiteParams p;
    p.sigma = o.sigma;
    p.seed = o.seed;
    p.reps = o.reps;
    p.fps = o.fps;
    Suite suite = synthesize_suite(p);
    frames = std::move(suite.frames);
    labels = std::move(suite.labels);
  } else {
    if (o.frames.empty() || o.labels.empty()) {
      throw CLI::ValidationError("eval needs --frames and --labels, or --synthetic");
    }
    labels = load_labels(o.labels);
    FrameStream stream = open_stream(SourceSpec{SourceKind::File, o.frames, {}, 0}, GapPolicy::Strict);
    while (auto f = stream.next()) frames.push_back(*f);
  }
  if (!o.write_frames.empty()) write_lines(o.write_frames, frames, serialize_frame);
  if (!o.write_labels.empty()) write_lines(o.write_labels, labels, serialize_label);

  const AccuracyReport report = evaluate(frames, labels, cfg.fsm);
  if (o.json) {
    std::cout << report.to_json() << '\n';
  } else {
    std::cout << report.table();
  }
  return 0;
}

int cmd_parse(const CommonOptions& common, const std::string& text) {
  SessionConfig cfg = resolve_config(common);
  const RuleTable rules = load_rules(cfg);
  std::cout << intent_to_json(rules.match(text)) << '\n';
  return 0;
}

// Help and version exit 0; every other parse failure is a usage error.
int usage_exit(const CLI::App& app, const CLI::ParseError& e) {
  return app.exit(e) == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gesture and voice input control engine"};
  app.require_subcommand(1);
  app.footer(
      "Config precedence: flags > --set > GESTURA_<KEY> environment > --config file > defaults.\n"
      "Exit codes: 0 ok, 1 internal, 2 usage, 3 source unavailable, 4 malformed input,\n"
      "5 invalid config, 6 bad labels, 7 non-monotonic time, 8 action failed, 9 weather.");

  CommonOptions common;

  std::string source = "tcp:127.0.0.1:7878";
  std::string out = "-";
  std::string utterances;
  auto* run = app.add_subcommand("run", "Live session on a landmark source");
  run->add_option("--source", source, "-, tcp:HOST:PORT or a frame file")->capture_default_str();
  run->add_option("--out", out, "Action log (- for stdout)")->capture_default_str();
  run->add_option("--utterances", utterances, "Transcribed utterances JSONL");
  add_common(run, common);

  std::string record_source = "tcp:127.0.0.1:7878";
  std::string record_out;
  auto* record = app.add_subcommand("record", "Save a landmark stream to a frame file");
  record->add_option("--source", record_source, "-, tcp:HOST:PORT or a frame file")
      ->capture_default_str();
  record->add_option("--out", record_out, "Frame file (- for stdout)")->required();

  std::string replay_frames;
  std::string replay_out = "-";
  std::string replay_utterances;
  auto* replay = app.add_subcommand("replay", "Deterministically replay a frame file");
  replay->add_option("--frames", replay_frames, "Frame file")->required();
  replay->add_option("--utterances", replay_utterances, "Transcribed utterances JSONL");
  replay->add_option("--out", replay_out, "Action log (- for stdout)")->capture_default_str();
  add_common(replay, common);

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Score gesture recognition against labels");
  eval->add_option("--frames", eval_opts.frames, "Frame file");
  eval->add_option("--labels", eval_opts.labels, "Label file");
  eval->add_flag("--synthetic", eval_opts.synthetic, "Generate a synthetic suite instead");
  eval->add_option("--sigma", eval_opts.sigma, "Synthetic noise std dev")->capture_default_str();
  eval->add_option("--seed", eval_opts.seed, "Synthetic seed")->capture_default_str();
  eval->add_option("--reps", eval_opts.reps, "Synthetic repetitions per gesture")->capture_default_str();
  eval->add_option("--fps", eval_opts.fps, "Synthetic frame rate")->capture_default_str();
  eval->add_option("--write-frames", eval_opts.write_frames, "Also save the frames used");
  eval->add_option("--write-labels", eval_opts.write_labels, "Also save the labels used");
  eval->add_flag("--json", eval_opts.json, "Print JSON instead of a table");
  add_common(eval, common);

  std::string text;
  auto* parse = app.add_subcommand("parse", "Print the intent for one utterance");
  parse->add_option("text", text, "Utterance text")->required();
  add_common(parse, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return usage_exit(app, e);
  }

  install_signal_handlers();
  try {
    if (*run) return cmd_run(common, source, out, utterances);
    if (*record) return cmd_record(record_source, record_out);
    if (*replay) return cmd_replay(common, replay_frames, replay_out, replay_utterances);
    if (*eval) return cmd_eval(common, eval_opts);
    if (*parse) return cmd_parse(common, text);
  } catch (const CLI::ParseError& e) {
    return usage_exit(app, e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
