#include "gestura/config.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>

#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

namespace {

template <class T>
T parse_number(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw Error(ErrorCode::InvalidConfig,
                std::string(key) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw Error(ErrorCode::InvalidConfig, std::string(key) + ": expected a boolean");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "click_dist",   "stable_frames", "click_refractory_ms", "scroll_deadzone",
      "scroll_gain",  "margin",        "screen_w",            "screen_h",
      "smooth",       "deadzone_px",   "mirror",              "rules",
      "backend",      "weather",       "weather_fixtures",    "weather_url",
      "weather_timeout_ms", "screenshot_dir", "default_city", "mock_battery_percent",
      "mock_battery_charging"};
  return keys;
}

void SessionConfig::set(std::string_view key, std::string_view value) {
  if (key == "click_dist") fsm.click_dist = parse_number<double>(key, value);
  else if (key == "stable_frames") fsm.stable_frames = parse_number<int>(key, value);
  else if (key == "click_refractory_ms") fsm.click_refractory_ms = parse_number<std::int64_t>(key, value);
  else if (key == "scroll_deadzone") fsm.scroll_deadzone = parse_number<double>(key, value);
  else if (key == "scroll_gain") fsm.scroll_gain = parse_number<double>(key, value);
  else if (key == "margin") map.margin = parse_number<double>(key, value);
  else if (key == "screen_w") {
    map.screen_w = parse_number<int>(key, value);
    screen_explicit = true;
  } else if (key == "screen_h") {
    map.screen_h = parse_number<int>(key, value);
    screen_explicit = true;
  } else if (key == "smooth") map.smooth = parse_number<double>(key, value);
  else if (key == "deadzone_px") map.deadzone_px = parse_number<double>(key, value);
  else if (key == "mirror") map.mirror = parse_bool(key, value);
  else if (key == "rules") rules = value;
  else if (key == "backend") backend = value;
  else if (key == "weather") weather = value;
  else if (key == "weather_fixtures") weather_fixtures = value;
  else if (key == "weather_url") weather_url = value;
  else if (key == "weather_timeout_ms") weather_timeout_ms = parse_number<int>(key, value);
  else if (key == "screenshot_dir") screenshot_dir = value;
  else if (key == "default_city") default_city = value;
  else if (key == "mock_battery_percent") mock_battery_percent = parse_number<int>(key, value);
  else if (key == "mock_battery_charging") mock_battery_charging = parse_bool(key, value);
  else throw Error(ErrorCode::InvalidConfig, "unknown config key '" + std::string(key) + "'");
}

void SessionConfig::validate() const {
  fsm.validate();
  map.validate();
  if (backend != "mock" && backend != "os") {
    throw Error(ErrorCode::InvalidConfig, "backend must be mock or os");
  }
  if (weather != "stub" && weather != "http") {
    throw Error(ErrorCode::InvalidConfig, "weather must be stub or http");
  }
  if (weather_timeout_ms <= 0) throw Error(ErrorCode::InvalidConfig, "weather_timeout_ms must be > 0");
  if (mock_battery_percent < 0 || mock_battery_percent > 100) {
    throw Error(ErrorCode::InvalidConfig, "mock_battery_percent must be in [0, 100]");
  }
}

std::string SessionConfig::to_json() const {
  nlohmann::ordered_json doc;
  doc["click_dist"] = fsm.click_dist;
  doc["stable_frames"] = fsm.stable_frames;
  doc["click_refractory_ms"] = fsm.click_refractory_ms;
  doc["scroll_deadzone"] = fsm.scroll_deadzone;
  doc["scroll_gain"] = fsm.scroll_gain;
  doc["margin"] = map.margin;
  doc["screen_w"] = map.screen_w;
  doc["screen_h"] = map.screen_h;
  doc["smooth"] = map.smooth;
  doc["deadzone_px"] = map.deadzone_px;
  doc["mirror"] = map.mirror;
  doc["rules"] = rules;
  doc["backend"] = backend;
  doc["weather"] = weather;
  doc["weather_fixtures"] = weather_fixtures;
  doc["weather_url"] = weather_url;
  doc["weather_timeout_ms"] = weather_timeout_ms;
  doc["screenshot_dir"] = screenshot_dir;
  doc["default_city"] = default_city;
  doc["mock_battery_percent"] = mock_battery_percent;
  doc["mock_battery_charging"] = mock_battery_charging;
  return doc.dump(2);
}

void apply_config_file(SessionConfig& cfg, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open config " + path.string());
  nlohmann::json doc = nlohmann::json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::InvalidConfig, path.string() + " must contain a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (value.is_string()) {
      cfg.set(key, value.get<std::string>());
    } else if (value.is_boolean() || value.is_number()) {
      cfg.set(key, value.dump());
    } else {
      throw Error(ErrorCode::InvalidConfig, key + ": expected a string, number or boolean");
    }
  }
}

void apply_environment(SessionConfig& cfg) {
  for (const auto& key : config_keys()) {
    std::string var(kEnvPrefix);
    for (char c : key) var.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (const char* value = std::getenv(var.c_str())) {
      cfg.set(key, value);
    }
  }
}

void apply_screen(SessionConfig& cfg, std::string_view wxh) {
  auto x = wxh.find('x');
  if (x == std::string_view::npos) {
    throw Error(ErrorCode::InvalidConfig, "screen must be WxH, got '" + std::string(wxh) + "'");
  }
  cfg.set("screen_w", wxh.substr(0, x));
  cfg.set("screen_h", wxh.substr(x + 1));
}

}  // namespace gestura
