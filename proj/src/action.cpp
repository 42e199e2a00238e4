#include "gestura/action.hpp"

#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

using ojson = nlohmann::ordered_json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const char* button_name(MouseButton b) {
  return b == MouseButton::Left ? "left" : "right";
}

}  // namespace

const char* action_kind_name(ActionKind kind) {
  switch (kind) {
    case ActionKind::MoveTo: return "MoveTo";
    case ActionKind::Click: return "Click";
    case ActionKind::Scroll: return "Scroll";
    case ActionKind::KeyTap: return "KeyTap";
    case ActionKind::BrightnessDelta: return "BrightnessDelta";
    case ActionKind::Screenshot: return "Screenshot";
    case ActionKind::OpenUrl: return "OpenUrl";
    case ActionKind::Say: return "Say";
    case ActionKind::QueryWeather: return "QueryWeather";
  }
  return "?";
}

std::string action_to_json(const Action& action) {
  ojson args = std::visit(
      overloaded{
          [](const act::MoveTo& a) { return ojson{{"x", a.x}, {"y", a.y}}; },
          [](const act::Click& a) { return ojson{{"button", button_name(a.button)}}; },
          [](const act::Scroll& a) { return ojson{{"dy", a.dy}}; },
          [](const act::KeyTap& a) { return ojson{{"key", a.key}}; },
          [](const act::BrightnessDelta& a) { return ojson{{"percent", a.percent}}; },
          [](const act::Screenshot& a) { return ojson{{"path", a.path}}; },
          [](const act::OpenUrl& a) { return ojson{{"url", a.url}}; },
          [](const act::Say& a) { return ojson{{"text", a.text}}; },
          [](const act::QueryWeather& a) { return ojson{{"city", a.city}}; },
      },
      action.payload);

  ojson doc;
  doc["t"] = action.t_ms;
  doc["action"] = action_kind_name(action.kind());
  doc["args"] = std::move(args);
  return doc.dump(-1, ' ', false, ojson::error_handler_t::replace);
}

Action action_from_json(std::string_view line) {
  auto doc = ojson::parse(line.begin(), line.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::MalformedRecord, "action line is not a JSON object");
  }
  try {
    Action action;
    action.t_ms = doc.at("t").get<std::int64_t>();
    const auto kind = doc.at("action").get<std::string>();
    const auto& args = doc.at("args");
    if (kind == "MoveTo") {
      action.payload = act::MoveTo{args.at("x").get<int>(), args.at("y").get<int>()};
    } else if (kind == "Click") {
      const auto b = args.at("button").get<std::string>();
      if (b != "left" && b != "right") throw Error(ErrorCode::MalformedRecord, "bad button");
      action.payload = act::Click{b == "left" ? MouseButton::Left : MouseButton::Right};
    } else if (kind == "Scroll") {
      action.payload = act::Scroll{args.at("dy").get<int>()};
    } else if (kind == "KeyTap") {
      action.payload = act::KeyTap{args.at("key").get<std::string>()};
    } else if (kind == "BrightnessDelta") {
      action.payload = act::BrightnessDelta{args.at("percent").get<int>()};
    } else if (kind == "Screenshot") {
      action.payload = act::Screenshot{args.at("path").get<std::string>()};
    } else if (kind == "OpenUrl") {
      action.payload = act::OpenUrl{args.at("url").get<std::string>()};
    } else if (kind == "Say") {
      action.payload = act::Say{args.at("text").get<std::string>()};
    } else if (kind == "QueryWeather") {
      action.payload = act::QueryWeather{args.at("city").get<std::string>()};
    } else {
      throw Error(ErrorCode::MalformedRecord, "unknown action '" + kind + "'");
    }
    return action;
  } catch (const ojson::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

}  // namespace gestura
