#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>

namespace gestura {

struct WeatherReport {
  std::string city;
  double temperature = 0.0;
  std::string unit = "C";
  std::string condition;

  friend bool operator==(const WeatherReport&, const WeatherReport&) = default;
};

class WeatherProvider {
 public:
  virtual ~WeatherProvider() = default;
  // Throws CityUnknown, or ProviderUnreachable for network providers.
  virtual WeatherReport query(std::string_view city) const = 0;
};

// Offline provider backed by a fixtures map: {"city": {"temp_c": 31, "condition": "clear"}}.
// Lookup ignores case and surrounding whitespace.
class FixtureWeatherProvider final : public WeatherProvider {
 public:
  // Built-in fixtures, so tests and replays work without any file.
  FixtureWeatherProvider();
  static FixtureWeatherProvider from_json(std::string_view text);
  // Throws InvalidConfig when the file is missing or malformed.
  static FixtureWeatherProvider load(const std::filesystem::path& path);

  WeatherReport query(std::string_view city) const override;

  std::size_t size() const { return table_.size(); }

 private:
  struct EmptyTag {};
  explicit FixtureWeatherProvider(EmptyTag) {}

  struct Entry {
    std::string display_name;
    double temp_c;
    std::string condition;
  };
  std::map<std::string, Entry> table_;
};

// wttr.in-compatible HTTP provider ("<base>/<city>?format=j1"). Plain HTTP only.
class HttpWeatherProvider final : public WeatherProvider {
 public:
  explicit HttpWeatherProvider(std::string base_url = "http://wttr.in",
                               std::chrono::milliseconds timeout = std::chrono::milliseconds(2000));

  WeatherReport query(std::string_view city) const override;

 private:
  std::string base_url_;
  std::chrono::milliseconds timeout_;
};

inline WeatherReport query_weather(std::string_view city, const WeatherProvider& provider) {
  return provider.query(city);
}

// "stub" (fixtures; empty path means built-in) or "http".
std::unique_ptr<WeatherProvider> make_weather_provider(std::string_view kind,
                                                       const std::string& fixtures_path,
                                                       const std::string& url,
                                                       std::chrono::milliseconds timeout);

std::string percent_encode(std::string_view text);

}  // namespace gestura
