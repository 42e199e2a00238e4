#include <doctest.h>

#include "gestura/eval.hpp"
#include "gestura/finger_state.hpp"
#include "helpers.hpp"

using namespace gestura;

namespace {

// Tips 0.1 above (extended) or below (folded) their PIPs, thumb placed
// relative to the pinky MCP at x = 0.6.
HandFrame constructed(bool thumb, bool index, bool middle, bool ring, bool pinky) {
  HandFrame f = testing::flat_frame(1);
  const std::pair<std::size_t, bool> fingers[] = {
      {lm::kIndexPip, index}, {lm::kMiddlePip, middle}, {lm::kRingPip, ring}, {lm::kPinkyPip, pinky}};
  for (auto [pip, up] : fingers) {
    f.lm[pip].y = 0.5;
    f.lm[pip + 2].y = up ? 0.4 : 0.6;
  }
  f.lm[lm::kPinkyMcp].x = 0.6;
  f.lm[lm::kThumbIp].x = 0.4;
  f.lm[lm::kThumbTip].x = thumb ? 0.3 : 0.5;
  return f;
}

}  // namespace

TEST_CASE("open palm and fist") {
  CHECK(fingers_up(constructed(true, true, true, true, true)) == FingerState{true, true, true, true, true});
  CHECK(fingers_up(constructed(false, false, false, false, false)) == FingerState{});
}

TEST_CASE("single index finger") {
  HandFrame f = testing::flat_frame(1);
  f.lm[lm::kIndexTip].y = 0.3;
  f.lm[lm::kIndexPip].y = 0.5;
  for (auto [pip, tip] : {std::pair{lm::kMiddlePip, lm::kMiddleTip}, {lm::kRingPip, lm::kRingTip},
                          {lm::kPinkyPip, lm::kPinkyTip}}) {
    f.lm[tip].y = 0.7;
    f.lm[pip].y = 0.5;
  }
  f.lm[lm::kPinkyMcp].x = 0.6;
  f.lm[lm::kThumbIp].x = 0.45;
  f.lm[lm::kThumbTip].x = 0.55;
  const FingerState fs = fingers_up(f);
  CHECK(fs == FingerState{false, true, false, false, false});
  CHECK(fs.bits() == "01000");
}

TEST_CASE("ties are not extended") {
  HandFrame f = testing::flat_frame(1);
  CHECK(fingers_up(f) == FingerState{});
}

TEST_CASE("thumb rule holds for either hand") {
  for (Handedness hand : {Handedness::Right, Handedness::Left}) {
    CHECK(fingers_up(synth_pose(SynthPose::OpenPalm, 0.5, 0.5, 1, hand)).thumb);
    CHECK_FALSE(fingers_up(synth_pose(SynthPose::Fist, 0.5, 0.5, 1, hand)).thumb);
  }
}

TEST_CASE("synthetic poses carry their intended finger states") {
  CHECK(fingers_up(synth_pose(SynthPose::Fist, 0.5, 0.5, 1)).bits() == "00000");
  CHECK(fingers_up(synth_pose(SynthPose::Point, 0.5, 0.5, 1)).bits() == "01000");
  CHECK(fingers_up(synth_pose(SynthPose::Pinch, 0.5, 0.5, 1)).bits() == "01100");
  CHECK(fingers_up(synth_pose(SynthPose::MiddleOnly, 0.5, 0.5, 1)).bits() == "00100");
  CHECK(fingers_up(synth_pose(SynthPose::OpenPalm, 0.5, 0.5, 1)).bits() == "11111");
}
