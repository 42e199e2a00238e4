#include "gestura/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

namespace {

constexpr std::pair<EvalGesture, const char*> kGestureNames[] = {
    {EvalGesture::Move, "move"},
    {EvalGesture::LeftClick, "left_click"},
    {EvalGesture::RightClick, "right_click"},
    {EvalGesture::ScrollUp, "scroll_up"},
    {EvalGesture::ScrollDown, "scroll_down"},
};

// Hand geometry, offsets from the palm centre in normalized units. The thumb
// sits on the -x side of a right hand, the pinky MCP at +0.06.
struct FingerColumn {
  std::size_t mcp;
  double dx;
};
constexpr FingerColumn kFingers[] = {{5, -0.03}, {9, 0.0}, {13, 0.03}, {17, 0.06}};

void place_finger(HandFrame& f, const FingerColumn& col, bool extended, double cx, double cy,
                  double tip_dx) {
  const double x = cx + col.dx;
  f.lm[col.mcp] = {x, cy, 0.0};
  if (extended) {
    f.lm[col.mcp + 1] = {x, cy - 0.05, 0.0};
    f.lm[col.mcp + 2] = {(x + cx + tip_dx) / 2, cy - 0.08, 0.0};
    f.lm[col.mcp + 3] = {cx + tip_dx, cy - 0.11, 0.0};
  } else {
    f.lm[col.mcp + 1] = {x, cy - 0.04, 0.0};
    f.lm[col.mcp + 2] = {x, cy - 0.01, 0.0};
    f.lm[col.mcp + 3] = {x, cy + 0.01, 0.0};
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

void add_noise(HandFrame& frame, double sigma, SeededNoise& noise) {
  for (auto& p : frame.lm) {
    p.x += sigma * noise.gaussian();
    p.y += sigma * noise.gaussian();
    p.z += sigma * noise.gaussian();
  }
}

std::int64_t frame_time(std::int64_t start_ms, std::int64_t k, int fps) {
  return start_ms + std::llround(static_cast<double>(k) * 1000.0 / fps);
}

std::int64_t frame_count(std::int64_t duration_ms, int fps) {
  return std::llround(static_cast<double>(duration_ms) * fps / 1000.0);
}

// Noiseless pose and palm centre of `gesture` at progress s in [0, 1].
HandFrame gesture_frame(EvalGesture gesture, double s, std::int64_t t) {
  switch (gesture) {
    case EvalGesture::Move:
      return synth_pose(SynthPose::Point, 0.35 + 0.30 * s, 0.40 + 0.20 * s, t);
    case EvalGesture::LeftClick:
      return synth_pose(SynthPose::Pinch, 0.5, 0.5, t);
    case EvalGesture::RightClick:
      return synth_pose(SynthPose::MiddleOnly, 0.5, 0.5, t);
    case EvalGesture::ScrollUp:
    case EvalGesture::ScrollDown: {
      const double travel = s < 1.0 / 3.0 ? 0.0 : 0.2 * (s - 1.0 / 3.0) / (2.0 / 3.0);
      const double dir = gesture == EvalGesture::ScrollUp ? -1.0 : 1.0;
      return synth_pose(SynthPose::OpenPalm, 0.5, 0.5 + dir * travel, t);
    }
  }
  return synth_pose(SynthPose::Fist, 0.5, 0.5, t);
}

void append_gesture(std::vector<HandFrame>& out, EvalGesture gesture, std::int64_t n,
                    std::int64_t first_k, std::int64_t start_ms, int fps, double sigma,
                    SeededNoise& noise) {
  for (std::int64_t k = 0; k < n; ++k) {
    const double s = n > 1 ? static_cast<double>(k) / static_cast<double>(n - 1) : 0.0;
    HandFrame f = gesture_frame(gesture, s, frame_time(start_ms, first_k + k, fps));
    add_noise(f, sigma, noise);
    out.push_back(f);
  }
}

bool expected_seen(EvalGesture g, const GestureEvent& e) {
  switch (g) {
    case EvalGesture::Move: return e.kind == GestureKind::Move;
    case EvalGesture::LeftClick: return e.kind == GestureKind::LeftClick;
    case EvalGesture::RightClick: return e.kind == GestureKind::RightClick;
    case EvalGesture::ScrollUp: return e.kind == GestureKind::Scroll && e.dy > 0;
    case EvalGesture::ScrollDown: return e.kind == GestureKind::Scroll && e.dy < 0;
  }
  return false;
}

bool contradicts(EvalGesture g, const GestureEvent& e) {
  switch (g) {
    case EvalGesture::LeftClick: return e.kind == GestureKind::RightClick;
    case EvalGesture::RightClick: return e.kind == GestureKind::LeftClick;
    default: return e.kind == GestureKind::LeftClick || e.kind == GestureKind::RightClick;
  }
}

}  // namespace

const char* eval_gesture_name(EvalGesture g) {
  for (const auto& [k, name] : kGestureNames) {
    if (k == g) return name;
  }
  return "?";
}

std::optional<EvalGesture> eval_gesture_from_name(std::string_view name) {
  for (const auto& [k, n] : kGestureNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

LabeledSegment parse_label(std::string_view line) {
  auto doc = nlohmann::json::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::MalformedRecord, "label is not a JSON object");
  }
  auto start = doc.find("start");
  auto end = doc.find("end");
  auto expect = doc.find("expect");
  if (start == doc.end() || !start->is_number_integer() || end == doc.end() ||
      !end->is_number_integer()) {
    throw Error(ErrorCode::MalformedRecord, "label needs integer start and end");
  }
  if (expect == doc.end() || !expect->is_string()) {
    throw Error(ErrorCode::MalformedRecord, "label needs \"expect\"");
  }
  auto gesture = eval_gesture_from_name(expect->get<std::string>());
  if (!gesture) {
    throw Error(ErrorCode::MalformedRecord, "unknown gesture '" + expect->get<std::string>() + "'");
  }
  return {start->get<std::int64_t>(), end->get<std::int64_t>(), *gesture};
}

std::string serialize_label(const LabeledSegment& label) {
  nlohmann::ordered_json doc;
  doc["start"] = label.start_ms;
  doc["end"] = label.end_ms;
  doc["expect"] = eval_gesture_name(label.expect);
  return doc.dump();
}

std::vector<LabeledSegment> load_labels(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::SourceUnavailable, "cannot open " + path.string());
  std::vector<LabeledSegment> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_label(line));
    } catch (const Error& e) {
      throw Error(e.code(), path.string() + " line " + std::to_string(line_no) + ": " + e.detail());
    }
  }
  return out;
}

const GestureScore* AccuracyReport::find(EvalGesture g) const {
  for (const auto& row : rows) {
    if (row.gesture == g) return &row;
  }
  return nullptr;
}

std::string AccuracyReport::table() const {
  std::string out;
  char line[128];
  std::snprintf(line, sizeof(line), "%-12s %9s %8s %9s\n", "gesture", "attempts", "correct",
                "accuracy");
  out += line;
  for (const auto& row : rows) {
    std::snprintf(line, sizeof(line), "%-12s %9llu %8llu %8.2f%%\n", eval_gesture_name(row.gesture),
                  static_cast<unsigned long long>(row.attempts),
                  static_cast<unsigned long long>(row.correct), row.accuracy());
    out += line;
  }
  std::snprintf(line, sizeof(line), "%-12s %9s %8s %8.2f%%\n", "overall", "", "", overall);
  out += line;
  return out;
}

std::string AccuracyReport::to_json() const {
  nlohmann::ordered_json doc;
  auto gestures = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json r;
    r["gesture"] = eval_gesture_name(row.gesture);
    r["attempts"] = row.attempts;
    r["correct"] = row.correct;
    r["accuracy"] = row.accuracy();
    gestures.push_back(std::move(r));
  }
  doc["gestures"] = std::move(gestures);
  doc["overall"] = overall;
  return doc.dump();
}

AccuracyReport evaluate(std::span<const HandFrame> frames, std::span<const LabeledSegment> labels,
                        const FsmConfig& cfg) {
  if (labels.empty()) throw Error(ErrorCode::NoLabels, "no labeled segments");
  if (frames.empty()) throw Error(ErrorCode::LabelOutOfRange, "labels given but no frames");

  std::vector<LabeledSegment> sorted(labels.begin(), labels.end());
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.start_ms != b.start_ms ? a.start_ms < b.start_ms : a.end_ms < b.end_ms;
  });
  const std::int64_t first_t = frames.front().t_ms;
  const std::int64_t last_t = frames.back().t_ms;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& s = sorted[i];
    auto where = [&] {
      return "[" + std::to_string(s.start_ms) + ", " + std::to_string(s.end_ms) + ")";
    };
    if (s.start_ms >= s.end_ms) throw Error(ErrorCode::LabelOutOfRange, where() + " is empty");
    if (s.start_ms < first_t || s.end_ms > last_t + 1) {
      throw Error(ErrorCode::LabelOutOfRange, where() + " lies outside the frames' time range");
    }
    if (i > 0 && s.start_ms < sorted[i - 1].end_ms) {
      throw Error(ErrorCode::LabelOutOfRange, where() + " overlaps the previous segment");
    }
  }

  GestureEngine engine(cfg);
  std::vector<GestureEvent> events;
  for (const auto& f : frames) {
    auto e = engine.push(f);
    if (e.kind != GestureKind::None) events.push_back(e);
  }

  AccuracyReport report;
  std::vector<GestureScore> scores;
  for (EvalGesture g : kAllEvalGestures) scores.push_back({g, 0, 0});

  for (const auto& seg : sorted) {
    auto lo = std::lower_bound(events.begin(), events.end(), seg.start_ms,
                               [](const GestureEvent& e, std::int64_t t) { return e.t_ms < t; });
    bool seen = false;
    bool contradicted = false;
    for (auto it = lo; it != events.end() && it->t_ms < seg.end_ms; ++it) {
      seen = seen || expected_seen(seg.expect, *it);
      contradicted = contradicted || contradicts(seg.expect, *it);
    }
    auto& score = scores[static_cast<std::size_t>(seg.expect)];
    ++score.attempts;
    if (seen && !contradicted) ++score.correct;
  }

  double sum = 0.0;
  for (const auto& s : scores) {
    if (s.attempts == 0) continue;
    report.rows.push_back(s);
    sum += s.accuracy();
  }
  report.overall = sum / static_cast<double>(report.rows.size());
  return report;
}

double SeededNoise::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double SeededNoise::gaussian() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

HandFrame synth_pose(SynthPose pose, double cx, double cy, std::int64_t t_ms, Handedness hand) {
  HandFrame f;
  f.t_ms = t_ms;
  f.hand = hand;

  const bool thumb_up = pose == SynthPose::OpenPalm;
  const bool index_up = pose == SynthPose::Point || pose == SynthPose::Pinch || pose == SynthPose::OpenPalm;
  const bool middle_up =
      pose == SynthPose::Pinch || pose == SynthPose::MiddleOnly || pose == SynthPose::OpenPalm;
  const bool outer_up = pose == SynthPose::OpenPalm;

  f.lm[lm::kWrist] = {cx, cy + 0.12, 0.0};
  f.lm[1] = {cx - 0.04, cy + 0.09, 0.0};
  f.lm[2] = {cx - 0.07, cy + 0.06, 0.0};
  if (thumb_up) {
    f.lm[lm::kThumbIp] = {cx - 0.10, cy + 0.02, 0.0};
    f.lm[lm::kThumbTip] = {cx - 0.15, cy - 0.01, 0.0};
  } else {
    f.lm[lm::kThumbIp] = {cx - 0.07, cy + 0.03, 0.0};
    f.lm[lm::kThumbTip] = {cx - 0.01, cy + 0.02, 0.0};
  }

  const bool pinch = pose == SynthPose::Pinch;
  place_finger(f, kFingers[0], index_up, cx, cy, pinch ? -0.015 : kFingers[0].dx);
  place_finger(f, kFingers[1], middle_up, cx, cy, pinch ? -0.015 : kFingers[1].dx);
  place_finger(f, kFingers[2], outer_up, cx, cy, kFingers[2].dx);
  place_finger(f, kFingers[3], outer_up, cx, cy, kFingers[3].dx);

  if (hand == Handedness::Left) {
    for (auto& p : f.lm) p.x = 2 * cx - p.x;
  }
  return f;
}

std::vector<HandFrame> synthesize(EvalGesture gesture, std::int64_t duration_ms, int fps,
                                  double sigma, std::uint64_t seed, std::int64_t start_ms) {
  if (fps < 1 || duration_ms < 0 || sigma < 0.0 || start_ms < 1) {
    throw Error(ErrorCode::InvalidConfig, "synthesize needs fps >= 1, sigma >= 0, start_ms >= 1");
  }
  SeededNoise noise(seed);
  std::vector<HandFrame> out;
  append_gesture(out, gesture, frame_count(duration_ms, fps), 0, start_ms, fps, sigma, noise);
  return out;
}

Suite synthesize_suite(const SuiteParams& p) {
  if (p.fps < 1 || p.reps < 1 || p.segment_ms <= 0 || p.gap_ms < 0 || p.sigma < 0.0) {
    throw Error(ErrorCode::InvalidConfig, "bad suite parameters");
  }
  Suite suite;
  const std::int64_t start_ms = 1;
  const std::int64_t gap_n = frame_count(p.gap_ms, p.fps);
  const std::int64_t seg_n = frame_count(p.segment_ms, p.fps);
  std::int64_t k = 0;
  std::uint64_t index = 0;
  for (int rep = 0; rep < p.reps; ++rep) {
    for (EvalGesture g : p.gestures) {
      SeededNoise noise(splitmix64(p.seed ^ splitmix64(index++)));
      for (std::int64_t i = 0; i < gap_n; ++i, ++k) {
        HandFrame f = synth_pose(SynthPose::Fist, 0.5, 0.5, frame_time(start_ms, k, p.fps));
        add_noise(f, p.sigma, noise);
        suite.frames.push_back(f);
      }
      append_gesture(suite.frames, g, seg_n, k, start_ms, p.fps, p.sigma, noise);
      const std::int64_t first = frame_time(start_ms, k, p.fps);
      k += seg_n;
      const std::int64_t last = frame_time(start_ms, k - 1, p.fps);
      suite.labels.push_back({first, last + 1, g});
    }
  }
  // Trailing rest so the last segment's pose can settle.
  for (std::int64_t i = 0; i < gap_n; ++i, ++k) {
    suite.frames.push_back(synth_pose(SynthPose::Fist, 0.5, 0.5, frame_time(start_ms, k, p.fps)));
  }
  return suite;
}

}  // namespace gestura
