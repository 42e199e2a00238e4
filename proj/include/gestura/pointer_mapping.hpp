#pragma once

#include <optional>

namespace gestura {

struct MapConfig {
  double margin = 0.1;     // normalized inset of the active region per side
  int screen_w = 1920;
  int screen_h = 1080;
  double smooth = 5.0;     // s >= 1; 1 disables smoothing
  double deadzone_px = 2.0;
  bool mirror = true;

  // Throws InvalidConfig.
  void validate() const;
};

struct PixelPoint {
  int x = 0;
  int y = 0;

  friend bool operator==(const PixelPoint&, const PixelPoint&) = default;
};

// Half-up rounding, used for every pixel output.
int round_half_up(double v);

// Maps a normalized camera position through the active region onto the
// screen. Positions outside the region clamp to its edge; x is mirrored so a
// user-facing camera moves the cursor with the hand.
PixelPoint map_to_screen(double x, double y, const MapConfig& cfg);

// Smoothed cursor position. Internal coordinates stay real-valued; output is
// rounded and compared against the last emitted pixel for the deadzone.
class PointerState {
 public:
  PointerState() = default;
  // Starts at (x, y) as if that position had just been emitted.
  PointerState(double x, double y);

  double x() const { return x_; }
  double y() const { return y_; }
  PixelPoint last_output() const { return last_; }

  // Moves 1/s of the way toward target. Returns the rounded new position, or
  // std::nullopt (no motion) when it lies within deadzone_px of the last
  // emitted output. Internal state advances either way.
  std::optional<PixelPoint> smooth(PixelPoint target, const MapConfig& cfg);

 private:
  double x_ = 0.0;
  double y_ = 0.0;
  PixelPoint last_{};
};

}  // namespace gestura
