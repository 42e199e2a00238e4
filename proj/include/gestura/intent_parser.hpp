#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gestura {

enum class IntentKind : std::uint8_t {
  MediaPlayPause,
  SeekForward,
  SeekBackward,
  SpeedUp,
  SlowDown,
  Fullscreen,
  YoutubeSearch,
  GoogleSearch,
  OpenUrl,
  BrightnessDelta,
  Screenshot,
  TemperatureQuery,
  BatteryStatus,
  Unknown,
};

const char* intent_kind_name(IntentKind kind);
std::optional<IntentKind> intent_kind_from_name(std::string_view name);

inline constexpr int kDefaultBrightnessStep = 10;

struct Intent {
  IntentKind kind = IntentKind::Unknown;
  // YoutubeSearch/GoogleSearch: query. OpenUrl: site. TemperatureQuery: city
  // (optional). Unknown: the raw utterance. Present slots are trimmed and
  // non-empty, except Unknown which keeps the input verbatim.
  std::optional<std::string> text;
  // BrightnessDelta: signed percent in [-100, 100], never 0.
  int amount = 0;

  friend bool operator==(const Intent&, const Intent&) = default;
};

// Lowercases ASCII, strips ASCII punctuation, collapses whitespace and splits
// into tokens.
std::vector<std::string> normalize(std::string_view text);

// "<prefix tokens> <slot> <suffix tokens>". The slot captures the token span
// between the first match of the prefix and the last match of the suffix.
struct SlotTemplate {
  std::vector<std::string> prefix;
  std::vector<std::string> suffix;
  std::string slot;      // empty when the rule has no template
  bool optional = false; // "<city?>": a failed match leaves the slot absent

  bool empty() const { return slot.empty(); }
  static SlotTemplate parse(std::string_view text);
  std::string to_string() const;
};

struct Rule {
  int priority = 0;
  // Every group must be present; a group matches if any alternative is a
  // token. An empty list matches everything (the Unknown catch-all).
  std::vector<std::vector<std::string>> keywords;
  SlotTemplate slot_template;
  // Constructor name: an IntentKind name, or BrightnessUp / BrightnessDown.
  std::string intent;
};

// Ordered rule table; first match by ascending priority wins.
//
// Text format, one rule per line, '#' comments:
//   priority ; keyword groups ; template ; intent
// Keyword groups are comma-separated, alternatives within a group are
// '/'-separated, '*' is the catch-all. Template '-' means none.
//   11 ; search,youtube ; search <q> on youtube ; YoutubeSearch
class RuleTable {
 public:
  static const RuleTable& defaults();
  static RuleTable parse(std::istream& in);
  static RuleTable parse(std::string_view text);
  // Throws InvalidConfig on syntax errors or a missing file.
  static RuleTable load(const std::filesystem::path& path);

  Intent match(std::string_view text) const;
  // Index of the rule that produced match(text).
  std::size_t matching_rule(std::string_view text) const;

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  explicit RuleTable(std::vector<Rule> rules);

  std::vector<Rule> rules_;
};

const std::string& default_rules_text();

// Parses with the built-in default table.
Intent parse_intent(std::string_view text);
Intent parse_intent(std::string_view text, const RuleTable& table);

// {"intent": "...", <slot fields>}
std::string intent_to_json(const Intent& intent);

}  // namespace gestura
