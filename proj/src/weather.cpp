#include "gestura/weather.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

using nlohmann::json;

namespace {

constexpr std::string_view kBuiltinFixtures = R"({
  "Meerut":    {"temp_c": 31.0, "condition": "clear sky"},
  "New Delhi": {"temp_c": 33.5, "condition": "haze"},
  "London":    {"temp_c": 14.0, "condition": "light rain"},
  "Tokyo":     {"temp_c": 22.0, "condition": "partly cloudy"},
  "New York":  {"temp_c": 18.5, "condition": "overcast"}
})";

std::string fold(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  std::string out;
  bool space = false;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = true;
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

std::string percent_encode(std::string_view text) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : text) {
    const bool alnum = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9');
    if (alnum || c == '-' || c == '.' || c == '_' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(kHex[c >> 4]);
      out.push_back(kHex[c & 0xF]);
    }
  }
  return out;
}

FixtureWeatherProvider::FixtureWeatherProvider() : FixtureWeatherProvider(from_json(kBuiltinFixtures)) {}

FixtureWeatherProvider FixtureWeatherProvider::from_json(std::string_view text) {
  json doc = json::parse(text.begin(), text.end(), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::InvalidConfig, "weather fixtures must be a JSON object");
  }
  FixtureWeatherProvider provider{EmptyTag{}};
  for (const auto& [city, record] : doc.items()) {
    if (!record.is_object() || !record.contains("temp_c") || !record["temp_c"].is_number()) {
      throw Error(ErrorCode::InvalidConfig, "fixture for '" + city + "' needs numeric temp_c");
    }
    Entry entry{city, record["temp_c"].get<double>(), record.value("condition", std::string())};
    provider.table_[fold(city)] = std::move(entry);
  }
  return provider;
}

FixtureWeatherProvider FixtureWeatherProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open weather fixtures " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json(buf.str());
}

WeatherReport FixtureWeatherProvider::query(std::string_view city) const {
  auto it = table_.find(fold(city));
  if (it == table_.end()) {
    throw Error(ErrorCode::CityUnknown, "no weather fixture for '" + std::string(city) + "'");
  }
  return WeatherReport{it->second.display_name, it->second.temp_c, "C", it->second.condition};
}

HttpWeatherProvider::HttpWeatherProvider(std::string base_url, std::chrono::milliseconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {}

WeatherReport HttpWeatherProvider::query(std::string_view city) const {
  httplib::Client client(base_url_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  auto res = client.Get("/" + percent_encode(city) + "?format=j1");
  if (!res) {
    throw Error(ErrorCode::ProviderUnreachable,
                base_url_ + ": " + httplib::to_string(res.error()));
  }
  if (res->status == 404) {
    throw Error(ErrorCode::CityUnknown, "provider does not know '" + std::string(city) + "'");
  }
  if (res->status != 200) {
    throw Error(ErrorCode::ProviderUnreachable, "HTTP status " + std::to_string(res->status));
  }
  json doc = json::parse(res->body, nullptr, false);
  try {
    const auto& current = doc.at("current_condition").at(0);
    WeatherReport report;
    report.city = std::string(city);
    report.temperature = std::stod(current.at("temp_C").get<std::string>());
    report.condition = current.at("weatherDesc").at(0).at("value").get<std::string>();
    return report;
  } catch (const std::exception&) {
    throw Error(ErrorCode::CityUnknown, "unusable provider response for '" + std::string(city) + "'");
  }
}

std::unique_ptr<WeatherProvider> make_weather_provider(std::string_view kind,
                                                       const std::string& fixtures_path,
                                                       const std::string& url,
                                                       std::chrono::milliseconds timeout) {
  if (kind == "stub") {
    if (fixtures_path.empty()) return std::make_unique<FixtureWeatherProvider>();
    return std::make_unique<FixtureWeatherProvider>(FixtureWeatherProvider::load(fixtures_path));
  }
  if (kind == "http") {
    return std::make_unique<HttpWeatherProvider>(url.empty() ? "http://wttr.in" : url, timeout);
  }
  throw Error(ErrorCode::InvalidConfig, "unknown weather provider '" + std::string(kind) + "'");
}

}  // namespace gestura
