#include <doctest.h>

#include "gestura/error.hpp"
#include "gestura/eval.hpp"
#include "gestura/finger_state.hpp"
#include "helpers.hpp"

using namespace gestura;

namespace {

// Appends `n` frames of a pose at 30 fps and returns [first, last + 1).
std::pair<std::int64_t, std::int64_t> append(std::vector<HandFrame>& frames, SynthPose pose, int n,
                                             std::int64_t& t, double cy = 0.5) {
  const std::int64_t first = t;
  for (int i = 0; i < n; ++i, t += 33) frames.push_back(synth_pose(pose, 0.5, cy, t));
  return {first, t - 33 + 1};
}

ErrorCode eval_code(const std::vector<HandFrame>& f, const std::vector<LabeledSegment>& l) {
  try {
    evaluate(f, l, {});
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::MalformedRecord;
}

}  // namespace

TEST_CASE("label records") {
  LabeledSegment s = parse_label(R"({"start": 1, "end": 100, "expect": "scroll_up"})");
  CHECK(s == LabeledSegment{1, 100, EvalGesture::ScrollUp});
  CHECK(parse_label(serialize_label(s)) == s);
  CHECK_THROWS_AS(parse_label(R"({"start": 1, "end": 100, "expect": "wave"})"), Error);
  CHECK_THROWS_AS(parse_label(R"({"start": 1, "expect": "move"})"), Error);
  CHECK_THROWS_AS(load_labels("/nonexistent/labels.jsonl"), Error);
}

TEST_CASE("scoring: four of five clicks and every move") {
  std::vector<HandFrame> frames;
  std::vector<LabeledSegment> labels;
  std::int64_t t = 1;
  for (int i = 0; i < 5; ++i) {
    append(frames, SynthPose::Fist, 5, t);
    // The fifth click segment is too short to be accepted.
    auto [a, b] = append(frames, SynthPose::Pinch, i == 4 ? 2 : 6, t);
    labels.push_back({a, b, EvalGesture::LeftClick});
    append(frames, SynthPose::Fist, 5, t);
    auto [c, d] = append(frames, SynthPose::Point, 6, t);
    labels.push_back({c, d, EvalGesture::Move});
  }
  AccuracyReport r = evaluate(frames, labels, {});
  REQUIRE(r.rows.size() == 2);
  CHECK(r.find(EvalGesture::LeftClick)->correct == 4);
  CHECK(r.find(EvalGesture::LeftClick)->accuracy() == 80.0);
  CHECK(r.find(EvalGesture::Move)->accuracy() == 100.0);
  CHECK(r.overall == 90.0);
  CHECK(r.find(EvalGesture::ScrollUp) == nullptr);
  CHECK(r.table().find("overall") != std::string::npos);
  CHECK(r.to_json().find("\"overall\":90.0") != std::string::npos);
}

TEST_CASE("a stray click fails a move segment") {
  std::vector<HandFrame> frames;
  std::int64_t t = 1;
  auto [a, ignore] = append(frames, SynthPose::Point, 6, t);
  append(frames, SynthPose::Pinch, 4, t);
  auto [ignore2, b] = append(frames, SynthPose::Point, 6, t);
  AccuracyReport r = evaluate(frames, std::vector<LabeledSegment>{{a, b, EvalGesture::Move}}, {});
  CHECK(r.overall == 0.0);
}

TEST_CASE("label errors") {
  std::vector<HandFrame> frames;
  std::int64_t t = 1;
  append(frames, SynthPose::Fist, 10, t);
  CHECK(eval_code(frames, {}) == ErrorCode::NoLabels);
  CHECK(eval_code(frames, {{0, 50, EvalGesture::Move}}) == ErrorCode::LabelOutOfRange);
  CHECK(eval_code(frames, {{1, 100000, EvalGesture::Move}}) == ErrorCode::LabelOutOfRange);
  CHECK(eval_code(frames, {{50, 50, EvalGesture::Move}}) == ErrorCode::LabelOutOfRange);
  CHECK(eval_code(frames, {{1, 100, EvalGesture::Move}, {50, 150, EvalGesture::Move}}) ==
        ErrorCode::LabelOutOfRange);
  CHECK(eval_code({}, {{1, 2, EvalGesture::Move}}) == ErrorCode::LabelOutOfRange);
}

TEST_CASE("synthesized move: 30 frames, every one classified as a move") {
  auto frames = synthesize(EvalGesture::Move, 1000, 30, 0.0, 1);
  REQUIRE(frames.size() == 30);
  CHECK(frames.front().t_ms == 1);
  CHECK(frames.back().t_ms == 1 + 967);
  for (const auto& f : frames) CHECK(fingers_up(f).bits() == "01000");
}

TEST_CASE("synthesis is seeded") {
  CHECK(synthesize(EvalGesture::Move, 1000, 30, 0.0, 1) == synthesize(EvalGesture::Move, 1000, 30, 0.0, 1));
  CHECK(synthesize(EvalGesture::LeftClick, 500, 30, 0.01, 7) ==
        synthesize(EvalGesture::LeftClick, 500, 30, 0.01, 7));
  CHECK(synthesize(EvalGesture::LeftClick, 500, 30, 0.01, 7) !=
        synthesize(EvalGesture::LeftClick, 500, 30, 0.01, 8));
}

TEST_CASE("noisy left click: recognized events frozen from a seeded run") {
  auto frames = synthesize(EvalGesture::LeftClick, 1000, 30, 0.01, 7);
  GestureEngine engine;
  std::vector<GestureEvent> events;
  for (const auto& f : frames) {
    auto e = engine.push(f);
    if (e.kind != GestureKind::None) events.push_back(e);
  }
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == GestureKind::LeftClick);
  CHECK(events[0].t_ms == 68);
}

TEST_CASE("seeded noise is reproducible and roughly standard normal") {
  SeededNoise a(3);
  SeededNoise b(3);
  double sum = 0;
  double sq = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double x = a.gaussian();
    CHECK(x == b.gaussian());
    sum += x;
    sq += x * x;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
}

TEST_CASE("suite layout") {
  Suite s = synthesize_suite({});
  CHECK(s.labels.size() == 20);
  for (std::size_t i = 1; i < s.frames.size(); ++i) CHECK(s.frames[i].t_ms > s.frames[i - 1].t_ms);
  CHECK(evaluate(s.frames, s.labels, {}).overall == 100.0);
}
