#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>

namespace gestura {

enum class MouseButton : std::uint8_t { Left, Right };

// Backend-level commands. Each payload serializes to the "args" object of an
// action log line.
namespace act {

struct MoveTo {
  int x = 0;
  int y = 0;
  friend bool operator==(const MoveTo&, const MoveTo&) = default;
};
struct Click {
  MouseButton button = MouseButton::Left;
  friend bool operator==(const Click&, const Click&) = default;
};
struct Scroll {
  int dy = 0;  // positive scrolls up; never 0
  friend bool operator==(const Scroll&, const Scroll&) = default;
};
struct KeyTap {
  std::string key;
  friend bool operator==(const KeyTap&, const KeyTap&) = default;
};
struct BrightnessDelta {
  int percent = 0;
  friend bool operator==(const BrightnessDelta&, const BrightnessDelta&) = default;
};
struct Screenshot {
  std::string path;
  friend bool operator==(const Screenshot&, const Screenshot&) = default;
};
struct OpenUrl {
  std::string url;
  friend bool operator==(const OpenUrl&, const OpenUrl&) = default;
};
struct Say {
  std::string text;
  friend bool operator==(const Say&, const Say&) = default;
};
struct QueryWeather {
  std::string city;
  friend bool operator==(const QueryWeather&, const QueryWeather&) = default;
};

}  // namespace act

using ActionPayload = std::variant<act::MoveTo, act::Click, act::Scroll, act::KeyTap,
                                   act::BrightnessDelta, act::Screenshot, act::OpenUrl, act::Say,
                                   act::QueryWeather>;

// Matches the ActionPayload alternative order.
enum class ActionKind : std::uint8_t {
  MoveTo,
  Click,
  Scroll,
  KeyTap,
  BrightnessDelta,
  Screenshot,
  OpenUrl,
  Say,
  QueryWeather,
};

inline constexpr std::size_t kActionKindCount = std::variant_size_v<ActionPayload>;

const char* action_kind_name(ActionKind kind);

struct Action {
  std::int64_t t_ms = 0;
  ActionPayload payload;

  ActionKind kind() const { return static_cast<ActionKind>(payload.index()); }

  friend bool operator==(const Action&, const Action&) = default;
};

// {"t": <ms>, "action": "<kind>", "args": {...}} on one line, no newline.
std::string action_to_json(const Action& action);
// Inverse of action_to_json. Throws MalformedRecord.
Action action_from_json(std::string_view line);

}  // namespace gestura
