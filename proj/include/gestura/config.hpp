#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gestura/gesture_engine.hpp"
#include "gestura/pointer_mapping.hpp"

namespace gestura {

// Everything a session needs. Keys (config file, --set, environment):
//   FSM:      click_dist stable_frames click_refractory_ms scroll_deadzone scroll_gain
//   mapping:  margin screen_w screen_h smooth deadzone_px mirror
//   runtime:  rules backend weather weather_fixtures weather_url weather_timeout_ms
//             screenshot_dir default_city mock_battery_percent mock_battery_charging
struct SessionConfig {
  FsmConfig fsm;
  MapConfig map;
  bool screen_explicit = false;  // screen_w/screen_h given by some source

  std::string rules;             // rule table file; empty = built-in table
  std::string backend = "mock";
  std::string weather = "stub";
  std::string weather_fixtures;  // empty = built-in fixtures
  std::string weather_url;
  int weather_timeout_ms = 2000;
  std::string screenshot_dir = "screenshots";
  std::string default_city;
  int mock_battery_percent = 80;
  bool mock_battery_charging = false;

  // Sets one key from its text form. Throws InvalidConfig for an unknown key
  // or a value that does not parse.
  void set(std::string_view key, std::string_view value);

  // Throws InvalidConfig.
  void validate() const;

  // Pretty JSON of every key, for echoing the effective configuration.
  std::string to_json() const;
};

inline constexpr std::string_view kEnvPrefix = "GESTURA_";

const std::vector<std::string>& config_keys();

// Applies a JSON object of key/value pairs from a file.
void apply_config_file(SessionConfig& cfg, const std::filesystem::path& path);
// Applies GESTURA_<KEY> variables (upper-cased key names).
void apply_environment(SessionConfig& cfg);
// Parses "1920x1080".
void apply_screen(SessionConfig& cfg, std::string_view wxh);

}  // namespace gestura
