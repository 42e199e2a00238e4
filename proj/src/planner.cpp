#include "gestura/planner.hpp"

#include <cctype>
#include <cstdio>

#include "gestura/backend.hpp"
#include "gestura/error.hpp"
#include "gestura/weather.hpp"

namespace gestura {

std::vector<Action> gesture_to_actions(const GestureEvent& event, PointerState& pointer,
                                       const MapConfig& cfg) {
  const std::int64_t t = event.t_ms;
  switch (event.kind) {
    case GestureKind::Move: {
      const PixelPoint target = map_to_screen(event.x, event.y, cfg);
      if (auto out = pointer.smooth(target, cfg)) {
        return {Action{t, act::MoveTo{out->x, out->y}}};
      }
      return {};
    }
    case GestureKind::LeftClick:
      return {Action{t, act::Click{MouseButton::Left}}};
    case GestureKind::RightClick:
      return {Action{t, act::Click{MouseButton::Right}}};
    case GestureKind::Scroll:
      return {Action{t, act::Scroll{event.dy}}};
    case GestureKind::None:
      break;
  }
  return {};
}

std::string youtube_search_url(std::string_view query) {
  return "https://www.youtube.com/results?search_query=" + percent_encode(query);
}

std::string google_search_url(std::string_view query) {
  return "https://www.google.com/search?q=" + percent_encode(query);
}

std::string site_url(std::string_view site) {
  std::string host;
  for (char c : site) {
    if (c != ' ') host.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (host.starts_with("http://") || host.starts_with("https://")) return host;
  if (host.find('.') != std::string::npos) return "https://" + host;
  return "https://www." + host + ".com";
}

namespace {

std::string format_temperature(const WeatherReport& r) {
  char number[32];
  std::snprintf(number, sizeof(number), "%.1f", r.temperature);
  std::string reply = "The temperature in " + r.city + " is " + number + " degrees " +
                      (r.unit == "C" ? "Celsius" : r.unit);
  if (!r.condition.empty()) reply += " with " + r.condition;
  return reply;
}

std::vector<Action> plan_weather(const Intent& intent, std::int64_t t, const PlanContext& ctx) {
  std::optional<std::string> city = intent.text ? intent.text : ctx.default_city;
  if (!city) {
    return {Action{t, act::Say{"Which city should I check the temperature for?"}}};
  }
  std::vector<Action> plan{Action{t, act::QueryWeather{*city}}};
  if (ctx.weather == nullptr) {
    plan.push_back(Action{t, act::Say{"No weather service is configured"}});
    return plan;
  }
  try {
    plan.push_back(Action{t, act::Say{format_temperature(query_weather(*city, *ctx.weather))}});
  } catch (const Error& e) {
    const std::string reply = e.code() == ErrorCode::CityUnknown
                                  ? "I don't know the weather for " + *city
                                  : "The weather service is unreachable";
    plan.push_back(Action{t, act::Say{reply}});
  }
  return plan;
}

std::vector<Action> plan_battery(std::int64_t t, const PlanContext& ctx) {
  if (ctx.backend != nullptr) {
    try {
      const BatteryInfo b = ctx.backend->battery();
      return {Action{t, act::Say{"Battery is at " + std::to_string(b.percent) + " percent and " +
                                 (b.charging ? "charging" : "not charging")}}};
    } catch (const Error&) {
    }
  }
  return {Action{t, act::Say{"Battery status is unavailable"}}};
}

}  // namespace

std::vector<Action> intent_to_actions(const Intent& intent, std::int64_t t_ms,
                                      const PlanContext& ctx) {
  const std::int64_t t = t_ms;
  switch (intent.kind) {
    case IntentKind::MediaPlayPause: return {Action{t, act::KeyTap{"k"}}};
    case IntentKind::SeekForward: return {Action{t, act::KeyTap{"l"}}};
    case IntentKind::SeekBackward: return {Action{t, act::KeyTap{"j"}}};
    case IntentKind::SpeedUp: return {Action{t, act::KeyTap{">"}}};
    case IntentKind::SlowDown: return {Action{t, act::KeyTap{"<"}}};
    case IntentKind::Fullscreen: return {Action{t, act::KeyTap{"f"}}};
    case IntentKind::YoutubeSearch:
      return {Action{t, act::OpenUrl{youtube_search_url(intent.text.value_or(""))}}};
    case IntentKind::GoogleSearch:
      return {Action{t, act::OpenUrl{google_search_url(intent.text.value_or(""))}}};
    case IntentKind::OpenUrl:
      return {Action{t, act::OpenUrl{site_url(intent.text.value_or(""))}}};
    case IntentKind::BrightnessDelta:
      return {Action{t, act::BrightnessDelta{intent.amount}}};
    case IntentKind::Screenshot: {
      std::string path = "screenshot_" + std::to_string(t) + ".png";
      if (!ctx.screenshot_dir.empty()) path = ctx.screenshot_dir + "/" + path;
      return {Action{t, act::Screenshot{std::move(path)}}};
    }
    case IntentKind::TemperatureQuery: return plan_weather(intent, t, ctx);
    case IntentKind::BatteryStatus: return plan_battery(t, ctx);
    case IntentKind::Unknown: return {Action{t, act::Say{kUnrecognizedReply}}};
  }
  return {};
}

}  // namespace gestura
