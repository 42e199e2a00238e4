#include "gestura/gesture_engine.hpp"

#include <cmath>

#include "gestura/error.hpp"

namespace gestura {

const char* pose_name(Pose pose) {
  switch (pose) {
    case Pose::Idle: return "IDLE";
    case Pose::Move: return "MOVE";
    case Pose::ClickArm: return "CLICK_ARM";
    case Pose::RightArm: return "RIGHT_ARM";
    case Pose::Scroll: return "SCROLL";
  }
  return "?";
}

const char* gesture_kind_name(GestureKind kind) {
  switch (kind) {
    case GestureKind::None: return "None";
    case GestureKind::Move: return "Move";
    case GestureKind::LeftClick: return "LeftClick";
    case GestureKind::RightClick: return "RightClick";
    case GestureKind::Scroll: return "Scroll";
  }
  return "?";
}

void FsmConfig::validate() const {
  if (!(click_dist > 0.0)) throw Error(ErrorCode::InvalidConfig, "click_dist must be > 0");
  if (stable_frames < 1) throw Error(ErrorCode::InvalidConfig, "stable_frames must be >= 1");
  if (click_refractory_ms <= 0) {
    throw Error(ErrorCode::InvalidConfig, "click_refractory_ms must be > 0");
  }
  if (!(scroll_deadzone > 0.0)) {
    throw Error(ErrorCode::InvalidConfig, "scroll_deadzone must be > 0");
  }
  if (!(scroll_gain > 0.0)) throw Error(ErrorCode::InvalidConfig, "scroll_gain must be > 0");
}

Pose classify_pose(const FingerState& fs, const HandFrame& frame, const FsmConfig& cfg) {
  if (fs.thumb && fs.index && fs.middle && fs.ring && fs.pinky) {
    return Pose::Scroll;
  }
  if (fs.ring || fs.pinky) {
    return Pose::Idle;
  }
  if (fs.index && !fs.middle) {
    return Pose::Move;
  }
  if (!fs.index && fs.middle) {
    return Pose::RightArm;
  }
  if (fs.index && fs.middle) {
    const Landmark& a = frame.lm[lm::kIndexTip];
    const Landmark& b = frame.lm[lm::kMiddleTip];
    return std::hypot(a.x - b.x, a.y - b.y) < cfg.click_dist ? Pose::ClickArm : Pose::Idle;
  }
  return Pose::Idle;
}

namespace {

// Total scroll steps for an anchor-relative displacement. Positive when the
// fingertip is above the anchor.
int scroll_target(double anchor_y, double y, const FsmConfig& cfg) {
  const double d = anchor_y - y;
  if (std::abs(d) <= cfg.scroll_deadzone) {
    return 0;
  }
  const double past = d > 0 ? d - cfg.scroll_deadzone : d + cfg.scroll_deadzone;
  return static_cast<int>(std::lround(cfg.scroll_gain * past));
}

bool click_allowed(const FsmState& s, std::int64_t t, const FsmConfig& cfg) {
  return !s.last_click_ms || t - *s.last_click_ms >= cfg.click_refractory_ms;
}

}  // namespace

std::pair<FsmState, GestureEvent> step(const FsmState& state, const HandFrame& frame,
                                       const FsmConfig& cfg) {
  const std::int64_t t = frame.t_ms;
  if (state.last_t_ms && t < *state.last_t_ms) {
    throw Error(ErrorCode::NonMonotonicTime, "t went from " + std::to_string(*state.last_t_ms) +
                                                 " to " + std::to_string(t));
  }

  FsmState next = state;
  next.last_t_ms = t;
  next.last_fingers = fingers_up(frame);
  const Pose raw = classify_pose(next.last_fingers, frame, cfg);

  bool entered = false;
  if (raw == next.pose) {
    next.candidate = raw;
    next.stable_count = 0;
  } else {
    if (raw == next.candidate) {
      ++next.stable_count;
    } else {
      next.candidate = raw;
      next.stable_count = 1;
    }
    if (next.stable_count >= cfg.stable_frames) {
      next.pose = raw;
      next.stable_count = 0;
      entered = true;
    }
  }

  const Landmark& tip = frame.lm[lm::kIndexTip];
  switch (next.pose) {
    case Pose::Move:
      return {next, GestureEvent::move(t, tip.x, tip.y)};

    case Pose::ClickArm:
    case Pose::RightArm:
      if (entered && click_allowed(next, t, cfg)) {
        next.last_click_ms = t;
        return {next, next.pose == Pose::ClickArm ? GestureEvent::left_click(t)
                                                  : GestureEvent::right_click(t)};
      }
      return {next, GestureEvent::none(t)};

    case Pose::Scroll: {
      if (entered) {
        next.scroll_anchor_y = tip.y;
        next.scroll_emitted = 0;
        return {next, GestureEvent::none(t)};
      }
      // A hand mid-transition out of the open palm has a folding index
      // finger whose tip is no displacement signal; skip those frames.
      if (raw != Pose::Scroll) return {next, GestureEvent::none(t)};
      // Emitting the difference to a displacement-determined total keeps the
      // summed steps independent of how many frames sampled the motion.
      const int target = scroll_target(next.scroll_anchor_y, tip.y, cfg);
      const int dy = target - next.scroll_emitted;
      if (dy == 0) {
        return {next, GestureEvent::none(t)};
      }
      next.scroll_emitted = target;
      return {next, GestureEvent::scroll(t, dy)};
    }

    case Pose::Idle:
      break;
  }
  return {next, GestureEvent::none(t)};
}

GestureEngine::GestureEngine(FsmConfig cfg) : cfg_(cfg) {
  cfg_.validate();
}

GestureEvent GestureEngine::push(const HandFrame& frame) {
  auto [next, event] = step(state_, frame, cfg_);
  state_ = next;
  return event;
}

}  // namespace gestura
