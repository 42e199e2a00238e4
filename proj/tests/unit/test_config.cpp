#include <doctest.h>

#include <cstdlib>

#include "gestura/config.hpp"
#include "gestura/error.hpp"
#include "helpers.hpp"

using namespace gestura;

TEST_CASE("set parses typed values") {
  SessionConfig cfg;
  cfg.set("stable_frames", "5");
  cfg.set("scroll_gain", "12.5");
  cfg.set("mirror", "false");
  cfg.set("default_city", "Meerut");
  CHECK(cfg.fsm.stable_frames == 5);
  CHECK(cfg.fsm.scroll_gain == 12.5);
  CHECK_FALSE(cfg.map.mirror);
  CHECK(cfg.default_city == "Meerut");
  CHECK_FALSE(cfg.screen_explicit);
}

TEST_CASE("bad keys and values are InvalidConfig") {
  SessionConfig cfg;
  auto code = [&](const char* k, const char* v) {
    try {
      cfg.set(k, v);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::MalformedRecord;
  };
  CHECK(code("no_such_key", "1") == ErrorCode::InvalidConfig);
  CHECK(code("stable_frames", "three") == ErrorCode::InvalidConfig);
  CHECK(code("stable_frames", "3x") == ErrorCode::InvalidConfig);
  CHECK(code("mirror", "maybe") == ErrorCode::InvalidConfig);
  cfg = {};
  cfg.backend = "x11";
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("screen override") {
  SessionConfig cfg;
  apply_screen(cfg, "2560x1440");
  CHECK(cfg.map.screen_w == 2560);
  CHECK(cfg.map.screen_h == 1440);
  CHECK(cfg.screen_explicit);
  CHECK_THROWS_AS(apply_screen(cfg, "2560"), Error);
}

TEST_CASE("config file, then environment") {
  testing::TempDir dir;
  auto path = dir.file("cfg.json", R"({"stable_frames": 4, "mirror": false, "backend": "mock"})");
  SessionConfig cfg;
  apply_config_file(cfg, path);
  CHECK(cfg.fsm.stable_frames == 4);
  CHECK_FALSE(cfg.map.mirror);

  setenv("GESTURA_STABLE_FRAMES", "6", 1);
  apply_environment(cfg);
  unsetenv("GESTURA_STABLE_FRAMES");
  CHECK(cfg.fsm.stable_frames == 6);

  CHECK_THROWS_AS(apply_config_file(cfg, dir.file("bad.json", "[1, 2]")), Error);
  CHECK_THROWS_AS(apply_config_file(cfg, dir.file("nested.json", R"({"margin": [1]})")), Error);
  CHECK_THROWS_AS(apply_config_file(cfg, dir.path() / "missing.json"), Error);
}

TEST_CASE("echoed config lists every key") {
  const std::string json = SessionConfig{}.to_json();
  for (const auto& key : config_keys()) {
    CHECK(json.find("\"" + key + "\"") != std::string::npos);
  }
}
