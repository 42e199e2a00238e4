#pragma once

#include <string>

#include "gestura/landmark.hpp"

namespace gestura {

struct FingerState {
  bool thumb = false;
  bool index = false;
  bool middle = false;
  bool ring = false;
  bool pinky = false;

  friend bool operator==(const FingerState&, const FingerState&) = default;

  // "01000"-style rendering, thumb first.
  std::string bits() const;
};

// Which fingers are extended.
//
// Index..pinky are extended when the tip sits strictly above its PIP joint
// (smaller y). The thumb is extended when its tip is strictly farther from
// the pinky MCP along x than the thumb IP joint is; measuring against the
// palm's far side makes the rule independent of handedness and mirroring.
// Exact ties classify as not extended.
FingerState fingers_up(const HandFrame& frame);

}  // namespace gestura
