#include <doctest.h>

#include <string>
#include <vector>

#include "gestura/error.hpp"
#include "gestura/intent_parser.hpp"

using namespace gestura;
using Tokens = std::vector<std::string>;

TEST_CASE("normalization") {
  CHECK(normalize("  Play   Music! ") == Tokens{"play", "music"});
  CHECK(normalize("").empty());
  CHECK(normalize("What's the TEMPERATURE in Meerut?") ==
        Tokens{"whats", "the", "temperature", "in", "meerut"});
  CHECK(normalize("lo-fi\tbeats") == Tokens{"lofi", "beats"});
  CHECK(normalize("?!") == Tokens{});
}

TEST_CASE("intent examples") {
  CHECK(parse_intent("pause music").kind == IntentKind::MediaPlayPause);
  CHECK(parse_intent("play music").kind == IntentKind::MediaPlayPause);
  CHECK(parse_intent("battery status").kind == IntentKind::BatteryStatus);

  Intent up = parse_intent("increase brightness");
  CHECK(up.kind == IntentKind::BrightnessDelta);
  CHECK(up.amount == 10);

  Intent yt = parse_intent("search lo-fi beats on youtube");
  CHECK(yt.kind == IntentKind::YoutubeSearch);
  CHECK(yt.text == "lo-fi beats");

  Intent unknown = parse_intent("blorp the fizzle");
  CHECK(unknown.kind == IntentKind::Unknown);
  CHECK(unknown.text == "blorp the fizzle");

  Intent empty = parse_intent("");
  CHECK(empty.kind == IntentKind::Unknown);
  CHECK(empty.text == "");
}

TEST_CASE("slots") {
  CHECK(parse_intent("Search for Cats on YouTube").text == "Cats");
  CHECK(parse_intent("google search weather radar").kind == IntentKind::GoogleSearch);
  CHECK(parse_intent("google search weather radar").text == "weather radar");
  CHECK(parse_intent("search for how to tie a tie").text == "how to tie a tie");
  CHECK(parse_intent("open github").text == "github");

  Intent temp = parse_intent("What's the temperature in New   Delhi?");
  CHECK(temp.kind == IntentKind::TemperatureQuery);
  CHECK(temp.text == "New Delhi");
  CHECK_FALSE(parse_intent("what's the weather").text.has_value());
}

TEST_CASE("required slot missing falls through to later rules") {
  // "search on youtube" has an empty query, so the search rules do not apply.
  CHECK(parse_intent("search on youtube").kind != IntentKind::YoutubeSearch);
}

TEST_CASE("brightness amounts") {
  CHECK(parse_intent("decrease brightness by 20").amount == -20);
  CHECK(parse_intent("raise the brightness to 250 percent").amount == 100);
  CHECK(parse_intent("brightness up 0").amount == 10);
  CHECK(parse_intent("dim the screen").amount == -10);
}

TEST_CASE("rule order decides overlaps") {
  CHECK(parse_intent("play despacito on youtube").kind == IntentKind::YoutubeSearch);
  CHECK(parse_intent("fast forward").kind == IntentKind::SeekForward);
  CHECK(parse_intent("take a screenshot").kind == IntentKind::Screenshot);
  CHECK(parse_intent("full screen please").kind == IntentKind::Fullscreen);
}

TEST_CASE("custom tables") {
  const RuleTable table = RuleTable::parse(
      "# tiny table\n"
      "5 ; hello ; - ; BatteryStatus\n"
      "1 ; louder/volume ; - ; SpeedUp\n");
  CHECK(table.rules().front().priority == 1);
  CHECK(table.rules().back().intent == "Unknown");
  CHECK(table.match("hello there").kind == IntentKind::BatteryStatus);
  CHECK(table.match("volume").kind == IntentKind::SpeedUp);
  CHECK(table.match("play").kind == IntentKind::Unknown);
  CHECK(table.matching_rule("hello") == 1);
}

TEST_CASE("bad tables are InvalidConfig") {
  auto code = [](std::string_view text) {
    try {
      RuleTable::parse(text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::MalformedRecord;
  };
  CHECK(code("1 ; a ; - ; NoSuchIntent\n") == ErrorCode::InvalidConfig);
  CHECK(code("1 ; a ; - \n") == ErrorCode::InvalidConfig);
  CHECK(code("x ; a ; - ; SpeedUp\n") == ErrorCode::InvalidConfig);
  CHECK(code("1 ; a ; - ; SpeedUp\n1 ; b ; - ; SlowDown\n") == ErrorCode::InvalidConfig);
  CHECK(code("1 ; search ; - ; GoogleSearch\n") == ErrorCode::InvalidConfig);
  CHECK(code("1 ; * ; - ; Unknown\n2 ; a ; - ; SpeedUp\n") == ErrorCode::InvalidConfig);
  CHECK_THROWS_AS(RuleTable::load("/nonexistent/rules.txt"), Error);
}

TEST_CASE("default table text parses back to the default table") {
  const RuleTable reparsed = RuleTable::parse(default_rules_text());
  CHECK(reparsed.rules().size() == RuleTable::defaults().rules().size());
}

TEST_CASE("slot templates") {
  auto t = SlotTemplate::parse("search <q> on youtube");
  CHECK(t.prefix == Tokens{"search"});
  CHECK(t.suffix == Tokens{"on", "youtube"});
  CHECK(t.slot == "q");
  CHECK_FALSE(t.optional);
  CHECK(SlotTemplate::parse("in <city?>").optional);
  CHECK(SlotTemplate::parse("-").empty());
  CHECK(SlotTemplate::parse("search <q> on youtube").to_string() == "search <q> on youtube");
}

TEST_CASE("intent json") {
  CHECK(intent_to_json(parse_intent("search cats on youtube")) ==
        R"({"intent":"YoutubeSearch","query":"cats"})");
  CHECK(intent_to_json(parse_intent("weather")) == R"({"intent":"TemperatureQuery","city":null})");
  CHECK(intent_to_json(parse_intent("brightness down")) ==
        R"({"intent":"BrightnessDelta","amount":-10})");
  CHECK(intent_to_json(parse_intent("battery")) == R"({"intent":"BatteryStatus"})");
}
