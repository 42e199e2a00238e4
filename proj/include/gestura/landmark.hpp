#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace gestura {

// Normalized image coordinates: x grows to the right, y grows downward.
// z is relative depth and carries no unit.
struct Landmark {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Landmark&, const Landmark&) = default;
};

enum class Handedness : std::uint8_t { Left, Right };

const char* handedness_name(Handedness hand);
Handedness flipped(Handedness hand);

// Indices into the 21-point hand topology.
namespace lm {
inline constexpr std::size_t kWrist = 0;
inline constexpr std::size_t kThumbIp = 3;
inline constexpr std::size_t kThumbTip = 4;
inline constexpr std::size_t kIndexPip = 6;
inline constexpr std::size_t kIndexTip = 8;
inline constexpr std::size_t kMiddlePip = 10;
inline constexpr std::size_t kMiddleTip = 12;
inline constexpr std::size_t kRingPip = 14;
inline constexpr std::size_t kRingTip = 16;
inline constexpr std::size_t kPinkyMcp = 17;
inline constexpr std::size_t kPinkyPip = 18;
inline constexpr std::size_t kPinkyTip = 20;
inline constexpr std::size_t kCount = 21;
}  // namespace lm

// Detectors overshoot the frame slightly, so x and y are accepted within
// this band. Clamping to the visible frame happens in pointer mapping.
inline constexpr double kCoordMin = -0.5;
inline constexpr double kCoordMax = 1.5;

struct HandFrame {
  std::int64_t t_ms = 0;
  Handedness hand = Handedness::Right;
  std::array<Landmark, lm::kCount> lm{};

  friend bool operator==(const HandFrame&, const HandFrame&) = default;
};

// Parses one JSONL frame record:
//   {"t": <int ms>, "hand": "Left"|"Right", "lm": [[x,y,z], x21]}
// Throws gestura::Error with MalformedRecord, WrongArity, OutOfRange or
// BadTimestamp.
HandFrame parse_frame(std::string_view line);

// Checks the HandFrame invariants, throwing the same error classes as
// parse_frame.
void validate_frame(const HandFrame& frame);

// Single-line JSON encoding of a frame. Coordinates are written with
// round-trip precision, so parse_frame(serialize_frame(f)) == f.
std::string serialize_frame(const HandFrame& frame);

}  // namespace gestura
