#include "gestura/finger_state.hpp"

#include <cmath>

namespace gestura {

std::string FingerState::bits() const {
  std::string out;
  for (bool up : {thumb, index, middle, ring, pinky}) {
    out.push_back(up ? '1' : '0');
  }
  return out;
}

FingerState fingers_up(const HandFrame& frame) {
  const auto& p = frame.lm;
  auto above = [&](std::size_t tip, std::size_t pip) { return p[tip].y < p[pip].y; };

  const double palm_x = p[lm::kPinkyMcp].x;
  FingerState fs;
  fs.thumb = std::abs(p[lm::kThumbTip].x - palm_x) > std::abs(p[lm::kThumbIp].x - palm_x);
  fs.index = above(lm::kIndexTip, lm::kIndexPip);
  fs.middle = above(lm::kMiddleTip, lm::kMiddlePip);
  fs.ring = above(lm::kRingTip, lm::kRingPip);
  fs.pinky = above(lm::kPinkyTip, lm::kPinkyPip);
  return fs;
}

}  // namespace gestura
