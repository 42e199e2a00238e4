#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gestura/action.hpp"
#include "gestura/gesture_engine.hpp"
#include "gestura/intent_parser.hpp"
#include "gestura/pointer_mapping.hpp"

namespace gestura {

class InjectionBackend;
class WeatherProvider;

// Move runs through map_to_screen and the smoother (nothing inside the
// deadzone); clicks and scrolls translate one-to-one; None yields nothing.
std::vector<Action> gesture_to_actions(const GestureEvent& event, PointerState& pointer,
                                       const MapConfig& cfg);

// What intent planning may consult. Both pointers are optional; without a
// weather provider temperature queries answer that the service is missing,
// without a backend battery status is reported unavailable.
struct PlanContext {
  const WeatherProvider* weather = nullptr;
  InjectionBackend* backend = nullptr;
  std::string screenshot_dir = "screenshots";
  std::optional<std::string> default_city;
};

inline constexpr const char* kUnrecognizedReply = "command not recognized";

std::string youtube_search_url(std::string_view query);
std::string google_search_url(std::string_view query);
// "youtube" -> https://www.youtube.com, "example.org" -> https://example.org
std::string site_url(std::string_view site);

// Media intents become YouTube shortcut key taps (k, l, j, >, <, f).
// Weather and battery lookups run here so the spoken reply is part of the
// plan; lookup failures turn into an explanatory Say.
std::vector<Action> intent_to_actions(const Intent& intent, std::int64_t t_ms,
                                      const PlanContext& ctx);

}  // namespace gestura
