#include "gestura/pointer_mapping.hpp"

#include <algorithm>
#include <cmath>

#include "gestura/error.hpp"

namespace gestura {

void MapConfig::validate() const {
  if (!(margin >= 0.0 && margin < 0.5)) {
    throw Error(ErrorCode::InvalidConfig, "margin must be in [0, 0.5)");
  }
  if (screen_w < 1 || screen_h < 1) {
    throw Error(ErrorCode::InvalidConfig, "screen size must be at least 1x1");
  }
  if (!(smooth >= 1.0)) throw Error(ErrorCode::InvalidConfig, "smooth must be >= 1");
  if (!(deadzone_px >= 0.0)) throw Error(ErrorCode::InvalidConfig, "deadzone_px must be >= 0");
}

int round_half_up(double v) {
  return static_cast<int>(std::floor(v + 0.5));
}

PixelPoint map_to_screen(double x, double y, const MapConfig& cfg) {
  const double span = 1.0 - 2.0 * cfg.margin;
  const double u = std::clamp((x - cfg.margin) / span, 0.0, 1.0);
  const double v = std::clamp((y - cfg.margin) / span, 0.0, 1.0);
  const double h = cfg.mirror ? 1.0 - u : u;
  return {round_half_up(h * (cfg.screen_w - 1)), round_half_up(v * (cfg.screen_h - 1))};
}

PointerState::PointerState(double x, double y)
    : x_(x), y_(y), last_{round_half_up(x), round_half_up(y)} {}

std::optional<PixelPoint> PointerState::smooth(PixelPoint target, const MapConfig& cfg) {
  x_ += (target.x - x_) / cfg.smooth;
  y_ += (target.y - y_) / cfg.smooth;
  x_ = std::clamp(x_, 0.0, static_cast<double>(cfg.screen_w - 1));
  y_ = std::clamp(y_, 0.0, static_cast<double>(cfg.screen_h - 1));

  const PixelPoint out{round_half_up(x_), round_half_up(y_)};
  if (std::hypot(out.x - last_.x, out.y - last_.y) < cfg.deadzone_px) {
    return std::nullopt;
  }
  last_ = out;
  return out;
}

}  // namespace gestura
