#include <doctest.h>

#include <vector>

#include "gestura/error.hpp"
#include "gestura/eval.hpp"
#include "gestura/finger_state.hpp"
#include "gestura/gesture_engine.hpp"

using namespace gestura;

namespace {

Pose classify(const HandFrame& f, const FsmConfig& cfg = {}) {
  return classify_pose(fingers_up(f), f, cfg);
}

// Runs frames of one pose at 30 fps starting at t0 and returns the events.
std::vector<GestureEvent> feed(GestureEngine& engine, SynthPose pose, int frames, std::int64_t& t) {
  std::vector<GestureEvent> out;
  for (int i = 0; i < frames; ++i, t += 33) {
    auto e = engine.push(synth_pose(pose, 0.5, 0.5, t));
    if (e.kind != GestureKind::None) out.push_back(e);
  }
  return out;
}

int count(const std::vector<GestureEvent>& events, GestureKind kind) {
  int n = 0;
  for (const auto& e : events) n += e.kind == kind;
  return n;
}

}  // namespace

TEST_CASE("pose table") {
  CHECK(classify(synth_pose(SynthPose::Point, 0.5, 0.5, 1)) == Pose::Move);
  CHECK(classify(synth_pose(SynthPose::MiddleOnly, 0.5, 0.5, 1)) == Pose::RightArm);
  CHECK(classify(synth_pose(SynthPose::OpenPalm, 0.5, 0.5, 1)) == Pose::Scroll);
  CHECK(classify(synth_pose(SynthPose::Fist, 0.5, 0.5, 1)) == Pose::Idle);
}

TEST_CASE("index+middle: pinch distance decides between click arm and idle") {
  HandFrame f = synth_pose(SynthPose::Pinch, 0.5, 0.5, 1);
  f.lm[lm::kIndexTip].x = 0.49;
  f.lm[lm::kMiddleTip].x = 0.51;  // dist 0.02
  CHECK(classify(f) == Pose::ClickArm);
  f.lm[lm::kIndexTip].x = 0.45;
  f.lm[lm::kMiddleTip].x = 0.55;  // dist 0.10
  CHECK(classify(f) == Pose::Idle);
}

TEST_CASE("ring or pinky up is idle unless the whole hand is open") {
  HandFrame f = synth_pose(SynthPose::Point, 0.5, 0.5, 1);
  f.lm[lm::kPinkyTip].y = f.lm[lm::kPinkyPip].y - 0.05;
  CHECK(classify(f) == Pose::Idle);
}

TEST_CASE("a new pose takes effect after stable_frames frames") {
  GestureEngine engine;
  std::int64_t t = 1;
  CHECK(engine.push(synth_pose(SynthPose::Point, 0.5, 0.5, t++)).kind == GestureKind::None);
  CHECK(engine.push(synth_pose(SynthPose::Point, 0.5, 0.5, t++)).kind == GestureKind::None);
  auto e = engine.push(synth_pose(SynthPose::Point, 0.5, 0.5, t++));
  CHECK(e.kind == GestureKind::Move);
  CHECK(e.x == doctest::Approx(0.47));
  CHECK(e.y == doctest::Approx(0.39));
  CHECK(engine.state().pose == Pose::Move);
}

TEST_CASE("alternating poses never switch the accepted pose") {
  GestureEngine engine;
  std::int64_t t = 1;
  feed(engine, SynthPose::Point, 3, t);
  REQUIRE(engine.state().pose == Pose::Move);
  for (int i = 0; i < 30; ++i) {
    auto e = engine.push(synth_pose(i % 2 ? SynthPose::Point : SynthPose::Fist, 0.5, 0.5, t));
    t += 33;
    CHECK(engine.state().pose == Pose::Move);
    CHECK(e.kind == GestureKind::Move);
  }
}

TEST_CASE("pinch held for 2 s at 30 fps clicks once") {
  GestureEngine engine;
  std::int64_t t = 1;
  auto events = feed(engine, SynthPose::Pinch, 60, t);
  CHECK(count(events, GestureKind::LeftClick) == 1);
  CHECK(events.size() == 1);
}

TEST_CASE("pinch toggling faster than stable_frames never clicks") {
  GestureEngine engine;
  std::int64_t t = 1;
  std::vector<GestureEvent> events;
  for (int i = 0; i < 60; ++i) {
    auto more = feed(engine, i % 2 ? SynthPose::Fist : SynthPose::Pinch, 2, t);
    events.insert(events.end(), more.begin(), more.end());
  }
  CHECK(count(events, GestureKind::LeftClick) == 0);
}

TEST_CASE("refractory period suppresses a quick re-click of either button") {
  FsmConfig cfg;
  cfg.click_refractory_ms = 300;
  GestureEngine engine(cfg);
  std::int64_t t = 1;
  CHECK(count(feed(engine, SynthPose::Pinch, 3, t), GestureKind::LeftClick) == 1);  // click at t=67
  feed(engine, SynthPose::Fist, 3, t);
  // Right arm accepted at t=265: inside the window.
  CHECK(count(feed(engine, SynthPose::MiddleOnly, 3, t), GestureKind::RightClick) == 0);
  feed(engine, SynthPose::Fist, 3, t);
  // Accepted at t=463: 396 ms after the last click.
  CHECK(count(feed(engine, SynthPose::MiddleOnly, 3, t), GestureKind::RightClick) == 1);
}

TEST_CASE("scroll accumulates and differences against the anchor") {
  // Open palm, index tip rising 0.05 per frame. Accepted on the third frame,
  // which becomes the anchor; the last frame is 0.35 above it.
  GestureEngine engine;
  std::vector<int> dys;
  for (int k = 0; k < 10; ++k) {
    auto e = engine.push(synth_pose(SynthPose::OpenPalm, 0.5, 0.8 - 0.05 * k, 1 + 33 * k));
    if (e.kind == GestureKind::Scroll) dys.push_back(e.dy);
  }
  CHECK(dys == std::vector<int>{1, 2, 2, 2, 2, 2, 2});
  int total = 0;
  for (int d : dys) total += d;
  CHECK(total == 13);  // round(40 * (0.35 - 0.03))
}

TEST_CASE("scroll down is negative and returning to the anchor unwinds") {
  GestureEngine engine;
  std::int64_t t = 1;
  int total = 0;
  auto push = [&](double cy) {
    auto e = engine.push(synth_pose(SynthPose::OpenPalm, 0.5, cy, t));
    t += 33;
    if (e.kind == GestureKind::Scroll) {
      CHECK(e.dy != 0);
      total += e.dy;
    }
  };
  for (int i = 0; i < 3; ++i) push(0.5);
  push(0.6);
  CHECK(total == -3);  // round(40 * (-0.1 + 0.03)) = -2.8
  push(0.52);          // inside the deadzone again
  CHECK(total == 0);
}

TEST_CASE("closing the hand after a scroll emits no steps") {
  GestureEngine engine;
  std::int64_t t = 1;
  for (int i = 0; i < 3; ++i, t += 33) engine.push(synth_pose(SynthPose::OpenPalm, 0.5, 0.5, t));
  for (int i = 0; i < 6; ++i, t += 33) {
    auto e = engine.push(synth_pose(SynthPose::Fist, 0.5, 0.5, t));
    CHECK(e.kind == GestureKind::None);
  }
  CHECK(engine.state().pose == Pose::Idle);
}

TEST_CASE("step is pure and rejects time going backwards") {
  const FsmConfig cfg;
  FsmState s;
  auto [s1, e1] = step(s, synth_pose(SynthPose::Point, 0.5, 0.5, 10), cfg);
  auto [s2, e2] = step(s, synth_pose(SynthPose::Point, 0.5, 0.5, 10), cfg);
  CHECK(s1 == s2);
  CHECK(e1 == e2);
  try {
    step(s1, synth_pose(SynthPose::Point, 0.5, 0.5, 9), cfg);
    FAIL("expected NonMonotonicTime");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonMonotonicTime);
  }
}

TEST_CASE("config validation") {
  FsmConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.stable_frames = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.click_dist = -1;
  CHECK_THROWS_AS(GestureEngine{cfg}, Error);
}
