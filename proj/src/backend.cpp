#include "gestura/backend.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gestura/error.hpp"

extern char** environ;

namespace gestura {

Capabilities all_capabilities() {
  Capabilities caps;
  caps.set();
  return caps;
}

MockBackend::MockBackend(Capabilities caps, BatteryInfo battery) : caps_(caps), battery_(battery) {}

void MockBackend::execute(const Action& action) {
  const auto kind = action.kind();
  if (!supports(kind)) {
    throw Error(ErrorCode::UnsupportedAction, std::string("mock backend: ") + action_kind_name(kind));
  }
  if (failing_.test(static_cast<std::size_t>(kind))) {
    throw Error(ErrorCode::BackendFailure,
                std::string("injected failure for ") + action_kind_name(kind));
  }
  executed_.push_back(action);
}

bool on_path(std::string_view program) {
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  std::stringstream dirs(path);
  std::string dir;
  while (std::getline(dirs, dir, ':')) {
    if (dir.empty()) continue;
    auto candidate = std::filesystem::path(dir) / program;
    if (::access(candidate.c_str(), X_OK) == 0) return true;
  }
  return false;
}

int run_program(const std::vector<std::string>& argv, std::string* out) {
  if (argv.empty()) return -1;
  std::vector<char*> args;
  for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
  args.push_back(nullptr);

  int pipe_fd[2] = {-1, -1};
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  if (out != nullptr) {
    if (::pipe(pipe_fd) != 0) return -1;
    posix_spawn_file_actions_adddup2(&actions, pipe_fd[1], STDOUT_FILENO);
    posix_spawn_file_actions_addclose(&actions, pipe_fd[0]);
  }
  pid_t pid = 0;
  int rc = ::posix_spawnp(&pid, args[0], &actions, nullptr, args.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  if (out != nullptr) ::close(pipe_fd[1]);
  if (rc != 0) {
    if (out != nullptr) ::close(pipe_fd[0]);
    return -1;
  }
  if (out != nullptr) {
    char buf[1024];
    ssize_t n = 0;
    while ((n = ::read(pipe_fd[0], buf, sizeof(buf))) > 0) out->append(buf, static_cast<std::size_t>(n));
    ::close(pipe_fd[0]);
  }
  int status = 0;
  if (::waitpid(pid, &status, 0) < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::optional<BatteryInfo> read_sysfs_battery(const std::string& root_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(root_dir, ec)) {
    std::ifstream type_file(entry.path() / "type");
    std::string type;
    if (!(type_file >> type) || type != "Battery") continue;

    std::ifstream capacity_file(entry.path() / "capacity");
    int percent = 0;
    if (!(capacity_file >> percent)) continue;
    std::ifstream status_file(entry.path() / "status");
    std::string status;
    status_file >> status;
    return BatteryInfo{percent, status == "Charging" || status == "Full"};
  }
  return std::nullopt;
}

namespace {

// xdotool key names for the YouTube shortcut symbols.
std::string xdotool_key(const std::string& key) {
  if (key == "<") return "less";
  if (key == ">") return "greater";
  return key;
}

}  // namespace

OsBackend::OsBackend() {
  auto set = [&](ActionKind k) { caps_.set(static_cast<std::size_t>(k)); };
  if (on_path("xdotool")) {
    set(ActionKind::MoveTo);
    set(ActionKind::Click);
    set(ActionKind::Scroll);
    set(ActionKind::KeyTap);
  }
  if (on_path("brightnessctl")) set(ActionKind::BrightnessDelta);
  for (const char* tool : {"import", "gnome-screenshot"}) {
    if (on_path(tool)) {
      screenshot_tool_ = tool;
      set(ActionKind::Screenshot);
      break;
    }
  }
  if (on_path("xdg-open")) set(ActionKind::OpenUrl);
  for (const char* tool : {"espeak", "spd-say"}) {
    if (on_path(tool)) {
      speech_tool_ = tool;
      set(ActionKind::Say);
      break;
    }
  }
  // Weather lookups happen in the planner; the backend only acknowledges them.
  set(ActionKind::QueryWeather);
}

void OsBackend::execute(const Action& action) {
  const auto kind = action.kind();
  if (!supports(kind)) {
    throw Error(ErrorCode::UnsupportedAction,
                std::string("os backend has no tool for ") + action_kind_name(kind));
  }

  std::vector<std::vector<std::string>> commands;
  if (auto* a = std::get_if<act::MoveTo>(&action.payload)) {
    commands.push_back({"xdotool", "mousemove", std::to_string(a->x), std::to_string(a->y)});
  } else if (auto* a = std::get_if<act::Click>(&action.payload)) {
    commands.push_back({"xdotool", "click", a->button == MouseButton::Left ? "1" : "3"});
  } else if (auto* a = std::get_if<act::Scroll>(&action.payload)) {
    const int steps = a->dy < 0 ? -a->dy : a->dy;
    commands.push_back({"xdotool", "click", "--repeat", std::to_string(steps),
                        a->dy > 0 ? "4" : "5"});
  } else if (auto* a = std::get_if<act::KeyTap>(&action.payload)) {
    commands.push_back({"xdotool", "key", xdotool_key(a->key)});
  } else if (auto* a = std::get_if<act::BrightnessDelta>(&action.payload)) {
    const int p = a->percent;
    commands.push_back({"brightnessctl", "set",
                        p > 0 ? "+" + std::to_string(p) + "%" : std::to_string(-p) + "%-"});
  } else if (auto* a = std::get_if<act::Screenshot>(&action.payload)) {
    auto parent = std::filesystem::path(a->path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    if (screenshot_tool_ == "import") {
      commands.push_back({"import", "-window", "root", a->path});
    } else {
      commands.push_back({"gnome-screenshot", "-f", a->path});
    }
  } else if (auto* a = std::get_if<act::OpenUrl>(&action.payload)) {
    commands.push_back({"xdg-open", a->url});
  } else if (auto* a = std::get_if<act::Say>(&action.payload)) {
    commands.push_back({speech_tool_, a->text});
  }

  for (const auto& argv : commands) {
    if (int rc = run_program(argv); rc != 0) {
      throw Error(ErrorCode::BackendFailure,
                  argv[0] + " exited with status " + std::to_string(rc));
    }
  }
}

BatteryInfo OsBackend::battery() {
  if (auto info = read_sysfs_battery()) return *info;
  throw Error(ErrorCode::UnsupportedAction, "no battery found");
}

std::optional<ScreenSize> OsBackend::screen_size() const {
  if (!supports(ActionKind::MoveTo)) return std::nullopt;
  std::string out;
  if (run_program({"xdotool", "getdisplaygeometry"}, &out) != 0) return std::nullopt;
  std::istringstream in(out);
  ScreenSize size;
  if (!(in >> size.w >> size.h) || size.w < 1 || size.h < 1) return std::nullopt;
  return size;
}

std::unique_ptr<InjectionBackend> make_backend(std::string_view name, BatteryInfo mock_battery) {
  if (name == "mock") return std::make_unique<MockBackend>(all_capabilities(), mock_battery);
  if (name == "os") return std::make_unique<OsBackend>();
  throw Error(ErrorCode::InvalidConfig, "unknown backend '" + std::string(name) + "'");
}

}  // namespace gestura
