#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include "gestura/finger_state.hpp"
#include "gestura/landmark.hpp"

namespace gestura {

enum class Pose : std::uint8_t { Idle, Move, ClickArm, RightArm, Scroll };

const char* pose_name(Pose pose);

struct FsmConfig {
  double click_dist = 0.04;           // pinch threshold, normalized x-y distance
  int stable_frames = 3;              // frames a new pose must persist
  std::int64_t click_refractory_ms = 300;
  double scroll_deadzone = 0.03;      // normalized, measured from the anchor
  double scroll_gain = 40.0;          // steps per normalized unit past the deadzone

  // Throws InvalidConfig.
  void validate() const;
};

enum class GestureKind : std::uint8_t { None, Move, LeftClick, RightClick, Scroll };

const char* gesture_kind_name(GestureKind kind);

struct GestureEvent {
  GestureKind kind = GestureKind::None;
  std::int64_t t_ms = 0;
  // Move: raw normalized index-tip position.
  double x = 0.0;
  double y = 0.0;
  // Scroll: signed step count, positive scrolls up. Never 0 for Scroll.
  int dy = 0;

  static GestureEvent none(std::int64_t t) { return {GestureKind::None, t}; }
  static GestureEvent move(std::int64_t t, double x, double y) {
    return {GestureKind::Move, t, x, y};
  }
  static GestureEvent left_click(std::int64_t t) { return {GestureKind::LeftClick, t}; }
  static GestureEvent right_click(std::int64_t t) { return {GestureKind::RightClick, t}; }
  static GestureEvent scroll(std::int64_t t, int dy) {
    return {GestureKind::Scroll, t, 0.0, 0.0, dy};
  }

  friend bool operator==(const GestureEvent&, const GestureEvent&) = default;
};

struct FsmState {
  Pose pose = Pose::Idle;        // accepted pose
  Pose candidate = Pose::Idle;   // pose waiting out the stability window
  int stable_count = 0;          // consecutive frames of candidate, in [0, stable_frames]
  std::optional<std::int64_t> last_click_ms;
  double scroll_anchor_y = 0.0;
  int scroll_emitted = 0;        // steps already emitted in the current scroll
  FingerState last_fingers;
  std::optional<std::int64_t> last_t_ms;

  friend bool operator==(const FsmState&, const FsmState&) = default;
};

// Pose table (thumb ignored unless stated):
//   Move      index up; middle, ring, pinky down
//   ClickArm  index and middle up, ring and pinky down, tips 8/12 pinched
//   RightArm  middle up; index, ring, pinky down
//   Scroll    all five up
//   Idle      everything else, including index+middle up without a pinch
Pose classify_pose(const FingerState& fs, const HandFrame& frame, const FsmConfig& cfg);

// One FSM transition. The accepted pose governs output until a new pose has
// persisted stable_frames frames, except that scroll steps are only taken
// from frames that themselves show the open palm. Throws NonMonotonicTime
// when t_ms decreases.
std::pair<FsmState, GestureEvent> step(const FsmState& state, const HandFrame& frame,
                                       const FsmConfig& cfg);

// Owns one FsmState for a single frame stream.
class GestureEngine {
 public:
  explicit GestureEngine(FsmConfig cfg = {});

  GestureEvent push(const HandFrame& frame);
  void reset() { state_ = FsmState{}; }

  const FsmState& state() const { return state_; }
  const FsmConfig& config() const { return cfg_; }

 private:
  FsmConfig cfg_;
  FsmState state_;
};

}  // namespace gestura
