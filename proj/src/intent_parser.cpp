#include "gestura/intent_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

namespace {

constexpr std::pair<IntentKind, const char*> kIntentNames[] = {
    {IntentKind::MediaPlayPause, "MediaPlayPause"},
    {IntentKind::SeekForward, "SeekForward"},
    {IntentKind::SeekBackward, "SeekBackward"},
    {IntentKind::SpeedUp, "SpeedUp"},
    {IntentKind::SlowDown, "SlowDown"},
    {IntentKind::Fullscreen, "Fullscreen"},
    {IntentKind::YoutubeSearch, "YoutubeSearch"},
    {IntentKind::GoogleSearch, "GoogleSearch"},
    {IntentKind::OpenUrl, "OpenUrl"},
    {IntentKind::BrightnessDelta, "BrightnessDelta"},
    {IntentKind::Screenshot, "Screenshot"},
    {IntentKind::TemperatureQuery, "TemperatureQuery"},
    {IntentKind::BatteryStatus, "BatteryStatus"},
    {IntentKind::Unknown, "Unknown"},
};

bool is_space(char c) {
  return std::isspace(static_cast<unsigned char>(c)) != 0;
}

bool is_punct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

std::string normalize_word(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (is_punct(c)) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_space(text[i])) ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i])) ++i;
    if (i > start) words.push_back(text.substr(start, i - start));
  }
  return words;
}

std::string_view trim(std::string_view s, bool strip_punct = false) {
  auto drop = [&](char c) { return is_space(c) || (strip_punct && is_punct(c)); };
  while (!s.empty() && drop(s.front())) s.remove_prefix(1);
  while (!s.empty() && drop(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.emplace_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// An utterance word that survived normalization, with its original spelling.
struct Word {
  std::string_view raw;
  std::string token;
};

std::vector<Word> tokenize(std::string_view text) {
  std::vector<Word> words;
  for (auto raw : split_whitespace(text)) {
    auto token = normalize_word(raw);
    if (!token.empty()) words.push_back({raw, std::move(token)});
  }
  return words;
}

bool tokens_at(const std::vector<Word>& words, std::size_t pos,
               const std::vector<std::string>& seq) {
  if (pos + seq.size() > words.size()) return false;
  for (std::size_t k = 0; k < seq.size(); ++k) {
    if (words[pos + k].token != seq[k]) return false;
  }
  return true;
}

// Slot span [first, last) in word indices, or nullopt.
std::optional<std::pair<std::size_t, std::size_t>> match_template(const SlotTemplate& tmpl,
                                                                 const std::vector<Word>& words) {
  std::optional<std::size_t> slot_start;
  for (std::size_t i = 0; i + tmpl.prefix.size() <= words.size(); ++i) {
    if (tokens_at(words, i, tmpl.prefix)) {
      slot_start = i + tmpl.prefix.size();
      break;
    }
  }
  if (!slot_start) return std::nullopt;

  std::size_t slot_end = words.size();
  if (!tmpl.suffix.empty()) {
    std::optional<std::size_t> found;
    for (std::size_t j = words.size(); j-- > *slot_start + 1;) {
      if (tokens_at(words, j, tmpl.suffix)) {
        found = j;
        break;
      }
    }
    if (!found) return std::nullopt;
    slot_end = *found;
  }
  if (slot_end <= *slot_start) return std::nullopt;
  return std::make_pair(*slot_start, slot_end);
}

// Original text of words [first, last), outer punctuation trimmed.
std::string slot_text(const std::vector<Word>& words, std::size_t first, std::size_t last) {
  const char* begin = words[first].raw.data();
  const char* end = words[last - 1].raw.data() + words[last - 1].raw.size();
  std::string_view span(begin, static_cast<std::size_t>(end - begin));
  // Collapse inner whitespace runs to single spaces.
  std::string joined;
  for (auto w : split_whitespace(span)) {
    if (!joined.empty()) joined.push_back(' ');
    joined.append(w);
  }
  return std::string(trim(joined, /*strip_punct=*/true));
}

// First all-digit token, for "by 20 percent" / "to 30%".
std::optional<int> spoken_amount(const std::vector<Word>& words) {
  for (const auto& w : words) {
    const auto& t = w.token;
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      continue;
    }
    long long v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec == std::errc::result_out_of_range) return 100;
    if (ec != std::errc()) continue;
    if (v == 0) return std::nullopt;
    return static_cast<int>(std::min<long long>(v, 100));
  }
  return std::nullopt;
}

bool needs_slot(std::string_view intent) {
  return intent == "YoutubeSearch" || intent == "GoogleSearch" || intent == "OpenUrl";
}

bool known_constructor(std::string_view intent) {
  if (intent == "BrightnessUp" || intent == "BrightnessDown") return true;
  auto kind = intent_kind_from_name(intent);
  return kind && *kind != IntentKind::BrightnessDelta;
}

Intent construct(const Rule& rule, std::string_view utterance, const std::vector<Word>& words,
                 std::optional<std::string> slot) {
  Intent intent;
  if (rule.intent == "BrightnessUp" || rule.intent == "BrightnessDown") {
    intent.kind = IntentKind::BrightnessDelta;
    int step = spoken_amount(words).value_or(kDefaultBrightnessStep);
    intent.amount = rule.intent == "BrightnessUp" ? step : -step;
    return intent;
  }
  intent.kind = *intent_kind_from_name(rule.intent);
  if (intent.kind == IntentKind::Unknown) {
    intent.text = std::string(utterance);
  } else {
    intent.text = std::move(slot);
  }
  return intent;
}

const std::string kDefaultRules = R"(# priority ; keyword groups ; template ; intent
10  ; search,youtube       ; search for <q> on youtube ; YoutubeSearch
11  ; search,youtube       ; search <q> on youtube     ; YoutubeSearch
12  ; youtube,search       ; youtube search <q>        ; YoutubeSearch
13  ; play,youtube         ; play <q> on youtube       ; YoutubeSearch
20  ; search,google        ; search for <q> on google  ; GoogleSearch
21  ; search,google        ; search <q> on google      ; GoogleSearch
22  ; google,search        ; google search <q>         ; GoogleSearch
25  ; google               ; google <q>                ; GoogleSearch
23  ; search               ; search for <q>            ; GoogleSearch
24  ; search               ; search <q>                ; GoogleSearch
30  ; brightness,increase/raise/up/higher/brighter/boost ; - ; BrightnessUp
31  ; brightness,decrease/lower/reduce/down/dim/dimmer    ; - ; BrightnessDown
32  ; brighten             ; -                         ; BrightnessUp
33  ; dim,screen           ; -                         ; BrightnessDown
40  ; screenshot           ; -                         ; Screenshot
41  ; screen,shot          ; -                         ; Screenshot
42  ; capture,screen       ; -                         ; Screenshot
50  ; temperature/weather  ; in <city?>                ; TemperatureQuery
60  ; battery              ; -                         ; BatteryStatus
70  ; fullscreen           ; -                         ; Fullscreen
71  ; full,screen          ; -                         ; Fullscreen
80  ; speed/faster         ; -                         ; SpeedUp
81  ; slow/slower          ; -                         ; SlowDown
90  ; forward/fast/skip    ; -                         ; SeekForward
91  ; back/rewind/backward/backwards ; -               ; SeekBackward
100 ; play/pause/resume    ; -                         ; MediaPlayPause
110 ; open                 ; open <site>               ; OpenUrl
999 ; *                    ; -                         ; Unknown
)";

}  // namespace

const char* intent_kind_name(IntentKind kind) {
  for (const auto& [k, name] : kIntentNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<IntentKind> intent_kind_from_name(std::string_view name) {
  for (const auto& [k, n] : kIntentNames) {
    if (name == n) return k;
  }
  return std::nullopt;
}

std::vector<std::string> normalize(std::string_view text) {
  std::vector<std::string> tokens;
  for (auto& w : tokenize(text)) tokens.push_back(std::move(w.token));
  return tokens;
}

SlotTemplate SlotTemplate::parse(std::string_view text) {
  SlotTemplate tmpl;
  text = trim(text);
  if (text.empty() || text == "-") return tmpl;

  bool seen_slot = false;
  for (auto word : split_whitespace(text)) {
    if (word.size() >= 3 && word.front() == '<' && word.back() == '>') {
      if (seen_slot) throw Error(ErrorCode::InvalidConfig, "template has two slots");
      std::string_view name = word.substr(1, word.size() - 2);
      if (name.ends_with('?')) {
        tmpl.optional = true;
        name.remove_suffix(1);
      }
      tmpl.slot = std::string(name);
      seen_slot = true;
      continue;
    }
    auto token = normalize_word(word);
    if (token.empty()) continue;
    (seen_slot ? tmpl.suffix : tmpl.prefix).push_back(std::move(token));
  }
  if (!seen_slot || tmpl.slot.empty()) {
    throw Error(ErrorCode::InvalidConfig, "template needs one <slot>: " + std::string(text));
  }
  return tmpl;
}

std::string SlotTemplate::to_string() const {
  if (empty()) return "-";
  std::string out;
  auto add = [&](const std::string& w) {
    if (!out.empty()) out.push_back(' ');
    out += w;
  };
  for (const auto& w : prefix) add(w);
  add("<" + slot + (optional ? "?>" : ">"));
  for (const auto& w : suffix) add(w);
  return out;
}

RuleTable::RuleTable(std::vector<Rule> rules) : rules_(std::move(rules)) {
  std::stable_sort(rules_.begin(), rules_.end(),
                   [](const Rule& a, const Rule& b) { return a.priority < b.priority; });
  for (std::size_t i = 1; i < rules_.size(); ++i) {
    if (rules_[i].priority == rules_[i - 1].priority) {
      throw Error(ErrorCode::InvalidConfig,
                  "duplicate rule priority " + std::to_string(rules_[i].priority));
    }
  }
  auto unknowns = std::count_if(rules_.begin(), rules_.end(),
                                [](const Rule& r) { return r.intent == "Unknown"; });
  if (unknowns == 0) {
    Rule fallback;
    fallback.priority = rules_.empty() ? 0 : rules_.back().priority + 1;
    fallback.intent = "Unknown";
    rules_.push_back(std::move(fallback));
  } else if (unknowns > 1) {
    throw Error(ErrorCode::InvalidConfig, "more than one Unknown rule");
  } else if (rules_.back().intent != "Unknown" || !rules_.back().keywords.empty()) {
    throw Error(ErrorCode::InvalidConfig, "the Unknown rule must be last and use '*'");
  }
}

RuleTable RuleTable::parse(std::istream& in) {
  std::vector<Rule> rules;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(std::string_view(line).substr(0, line.find('#')));
    if (body.empty()) continue;
    auto where = [&] { return "rule line " + std::to_string(line_no) + ": "; };

    auto fields = split(body, ';');
    if (fields.size() != 4) {
      throw Error(ErrorCode::InvalidConfig, where() + "expected 4 ';'-separated fields");
    }
    Rule rule;
    auto [ptr, ec] = std::from_chars(fields[0].data(), fields[0].data() + fields[0].size(),
                                     rule.priority);
    if (ec != std::errc() || ptr != fields[0].data() + fields[0].size()) {
      throw Error(ErrorCode::InvalidConfig, where() + "bad priority '" + fields[0] + "'");
    }
    if (fields[1] != "*") {
      for (const auto& group : split(fields[1], ',')) {
        std::vector<std::string> alternatives;
        for (const auto& alt : split(group, '/')) {
          auto token = normalize_word(alt);
          if (!token.empty()) alternatives.push_back(std::move(token));
        }
        if (alternatives.empty()) {
          throw Error(ErrorCode::InvalidConfig, where() + "empty keyword group");
        }
        rule.keywords.push_back(std::move(alternatives));
      }
    }
    try {
      rule.slot_template = SlotTemplate::parse(fields[2]);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, where() + e.detail());
    }
    rule.intent = fields[3];
    if (!known_constructor(rule.intent)) {
      throw Error(ErrorCode::InvalidConfig, where() + "unknown intent '" + rule.intent + "'");
    }
    if (needs_slot(rule.intent) && (rule.slot_template.empty() || rule.slot_template.optional)) {
      throw Error(ErrorCode::InvalidConfig, where() + rule.intent + " needs a required <slot>");
    }
    rules.push_back(std::move(rule));
  }
  return RuleTable(std::move(rules));
}

RuleTable RuleTable::parse(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse(in);
}

RuleTable RuleTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorCode::InvalidConfig, "cannot open rule file " + path.string());
  }
  return parse(in);
}

const std::string& default_rules_text() {
  return kDefaultRules;
}

const RuleTable& RuleTable::defaults() {
  static const RuleTable table = parse(std::string_view(kDefaultRules));
  return table;
}

std::size_t RuleTable::matching_rule(std::string_view text) const {
  const auto words = tokenize(text);
  std::unordered_set<std::string_view> present;
  for (const auto& w : words) present.insert(w.token);

  for (std::size_t i = 0; i < rules_.size(); ++i) {
    const Rule& rule = rules_[i];
    bool all = std::all_of(rule.keywords.begin(), rule.keywords.end(), [&](const auto& group) {
      return std::any_of(group.begin(), group.end(),
                         [&](const std::string& alt) { return present.contains(alt); });
    });
    if (!all) continue;
    if (!rule.slot_template.empty() && !rule.slot_template.optional &&
        !match_template(rule.slot_template, words)) {
      continue;
    }
    return i;
  }
  return rules_.size() - 1;
}

Intent RuleTable::match(std::string_view text) const {
  const std::size_t index = matching_rule(text);
  const Rule& rule = rules_[index];
  const auto words = tokenize(text);
  std::optional<std::string> slot;
  if (!rule.slot_template.empty()) {
    if (auto span = match_template(rule.slot_template, words)) {
      slot = slot_text(words, span->first, span->second);
    }
  }
  return construct(rule, text, words, std::move(slot));
}

Intent parse_intent(std::string_view text) {
  return RuleTable::defaults().match(text);
}

Intent parse_intent(std::string_view text, const RuleTable& table) {
  return table.match(text);
}

std::string intent_to_json(const Intent& intent) {
  nlohmann::ordered_json doc;
  doc["intent"] = intent_kind_name(intent.kind);
  switch (intent.kind) {
    case IntentKind::YoutubeSearch:
    case IntentKind::GoogleSearch:
      doc["query"] = intent.text.value_or("");
      break;
    case IntentKind::OpenUrl:
      doc["site"] = intent.text.value_or("");
      break;
    case IntentKind::TemperatureQuery:
      doc["city"] = intent.text ? nlohmann::ordered_json(*intent.text) : nlohmann::ordered_json(nullptr);
      break;
    case IntentKind::BrightnessDelta:
      doc["amount"] = intent.amount;
      break;
    case IntentKind::Unknown:
      doc["text"] = intent.text.value_or("");
      break;
    default:
      break;
  }
  return doc.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::replace);
}

}  // namespace gestura
