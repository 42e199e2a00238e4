#pragma once

#include <bitset>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gestura/action.hpp"

namespace gestura {

struct BatteryInfo {
  int percent = 0;
  bool charging = false;

  friend bool operator==(const BatteryInfo&, const BatteryInfo&) = default;
};

struct ScreenSize {
  int w = 0;
  int h = 0;
};

using Capabilities = std::bitset<kActionKindCount>;

Capabilities all_capabilities();

// Executes actions against some target. Kinds outside capabilities() are
// rejected with UnsupportedAction, never silently dropped.
class InjectionBackend {
 public:
  virtual ~InjectionBackend() = default;

  virtual std::string name() const = 0;
  virtual Capabilities capabilities() const = 0;
  bool supports(ActionKind kind) const {
    return capabilities().test(static_cast<std::size_t>(kind));
  }

  // Throws UnsupportedAction or BackendFailure.
  virtual void execute(const Action& action) = 0;

  // Throws UnsupportedAction when the platform cannot report it.
  virtual BatteryInfo battery() = 0;

  virtual std::optional<ScreenSize> screen_size() const { return std::nullopt; }
};

// Reference backend: records every accepted action in order. Failures can be
// injected per kind for tests.
class MockBackend final : public InjectionBackend {
 public:
  explicit MockBackend(Capabilities caps = all_capabilities(), BatteryInfo battery = {80, false});

  std::string name() const override { return "mock"; }
  Capabilities capabilities() const override { return caps_; }
  void execute(const Action& action) override;
  BatteryInfo battery() override { return battery_; }

  void fail_on(ActionKind kind) { failing_.set(static_cast<std::size_t>(kind)); }

  const std::vector<Action>& executed() const { return executed_; }

 private:
  Capabilities caps_;
  Capabilities failing_;
  BatteryInfo battery_;
  std::vector<Action> executed_;
};

// Thin desktop adapter (X11 / Linux). Delegates to command-line tools found
// on PATH at construction: xdotool (pointer, keys, screen size),
// brightnessctl, import or gnome-screenshot, xdg-open, espeak or spd-say.
// Capabilities reflect which tools are present.
class OsBackend final : public InjectionBackend {
 public:
  OsBackend();

  std::string name() const override { return "os"; }
  Capabilities capabilities() const override { return caps_; }
  void execute(const Action& action) override;
  BatteryInfo battery() override;
  std::optional<ScreenSize> screen_size() const override;

 private:
  Capabilities caps_;
  std::string screenshot_tool_;
  std::string speech_tool_;
};

// "mock" or "os". Throws InvalidConfig for anything else.
std::unique_ptr<InjectionBackend> make_backend(std::string_view name,
                                               BatteryInfo mock_battery = {80, false});

// Runs argv[0] from PATH without a shell. Returns the exit status, or -1 if
// it could not start. When out is set, stdout is captured into it.
int run_program(const std::vector<std::string>& argv, std::string* out = nullptr);
bool on_path(std::string_view program);

// Reads the first battery under /sys/class/power_supply (or root_dir).
std::optional<BatteryInfo> read_sysfs_battery(const std::string& root_dir = "/sys/class/power_supply");

}  // namespace gestura
