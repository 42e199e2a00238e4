#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gestura/gesture_engine.hpp"
#include "gestura/landmark.hpp"

namespace gestura {

// The five scored operations.
enum class EvalGesture : std::uint8_t { Move, LeftClick, RightClick, ScrollUp, ScrollDown };

inline constexpr EvalGesture kAllEvalGestures[] = {EvalGesture::Move, EvalGesture::LeftClick,
                                                   EvalGesture::RightClick, EvalGesture::ScrollUp,
                                                   EvalGesture::ScrollDown};

// "move", "left_click", "right_click", "scroll_up", "scroll_down"
const char* eval_gesture_name(EvalGesture g);
std::optional<EvalGesture> eval_gesture_from_name(std::string_view name);

// Half-open [start_ms, end_ms).
struct LabeledSegment {
  std::int64_t start_ms = 0;
  std::int64_t end_ms = 0;
  EvalGesture expect = EvalGesture::Move;

  friend bool operator==(const LabeledSegment&, const LabeledSegment&) = default;
};

// {"start": ms, "end": ms, "expect": "<gesture>"}. Throws MalformedRecord.
LabeledSegment parse_label(std::string_view line);
std::string serialize_label(const LabeledSegment& label);
// Missing file is SourceUnavailable; bad lines name their line number.
std::vector<LabeledSegment> load_labels(const std::filesystem::path& path);

struct GestureScore {
  EvalGesture gesture = EvalGesture::Move;
  std::uint64_t attempts = 0;
  std::uint64_t correct = 0;

  double accuracy() const {
    return attempts == 0 ? 0.0 : 100.0 * static_cast<double>(correct) / static_cast<double>(attempts);
  }
};

struct AccuracyReport {
  std::vector<GestureScore> rows;  // gestures present in the labels, in enum order
  double overall = 0.0;            // unweighted mean of per-gesture accuracy

  const GestureScore* find(EvalGesture g) const;
  std::string table() const;
  std::string to_json() const;
};

// Scores per-segment recognition. A segment is correct when its expected
// event occurs inside it at least once and no contradictory click does:
// move and scroll segments tolerate no click at all, a left-click segment no
// right click and vice versa. Labels are sorted first, so their order does
// not matter. Throws NoLabels or LabelOutOfRange.
AccuracyReport evaluate(std::span<const HandFrame> frames, std::span<const LabeledSegment> labels,
                        const FsmConfig& cfg);

// Deterministic normal deviates: mt19937_64 bits turned into doubles and
// Box-Muller, so seeded output does not depend on the standard library.
class SeededNoise {
 public:
  explicit SeededNoise(std::uint64_t seed) : gen_(seed) {}
  double uniform();   // [0, 1)
  double gaussian();  // N(0, 1)

 private:
  std::mt19937_64 gen_;
};

// Noiseless hand poses used by the generator, centred at (cx, cy).
enum class SynthPose : std::uint8_t { Fist, Point, Pinch, MiddleOnly, OpenPalm };
HandFrame synth_pose(SynthPose pose, double cx, double cy, std::int64_t t_ms,
                     Handedness hand = Handedness::Right);

// round(duration_ms * fps / 1000) frames performing the gesture, timestamps
// start_ms + round(k * 1000 / fps), with N(0, sigma) added to every coordinate.
// Move sweeps the pointing hand across the frame; clicks hold the pose;
// scrolls hold the open palm for the first third, then travel 0.2 up or down.
std::vector<HandFrame> synthesize(EvalGesture gesture, std::int64_t duration_ms, int fps,
                                  double sigma, std::uint64_t seed, std::int64_t start_ms = 1);

struct SuiteParams {
  std::vector<EvalGesture> gestures{std::begin(kAllEvalGestures), std::end(kAllEvalGestures)};
  int reps = 4;
  std::int64_t segment_ms = 1000;
  std::int64_t gap_ms = 500;  // fist between segments
  int fps = 30;
  double sigma = 0.0;
  std::uint64_t seed = 1;
};

struct Suite {
  std::vector<HandFrame> frames;
  std::vector<LabeledSegment> labels;
};

Suite synthesize_suite(const SuiteParams& params);

}  // namespace gestura
