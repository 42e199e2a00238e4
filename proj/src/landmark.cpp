#include "gestura/landmark.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "gestura/error.hpp"

namespace gestura {

using nlohmann::json;

const char* handedness_name(Handedness hand) {
  return hand == Handedness::Left ? "Left" : "Right";
}

Handedness flipped(Handedness hand) {
  return hand == Handedness::Left ? Handedness::Right : Handedness::Left;
}

namespace {

double coordinate(const json& value, const char* axis, std::size_t index) {
  if (!value.is_number()) {
    throw Error(ErrorCode::MalformedRecord,
                "landmark " + std::to_string(index) + " " + axis + " is not a number");
  }
  return value.get<double>();
}

void check_band(double v, const char* axis, std::size_t index) {
  if (!std::isfinite(v) || v < kCoordMin || v > kCoordMax) {
    throw Error(ErrorCode::OutOfRange,
                "landmark " + std::to_string(index) + " " + axis + " outside [-0.5, 1.5]");
  }
}

}  // namespace

void validate_frame(const HandFrame& frame) {
  if (frame.t_ms <= 0) {
    throw Error(ErrorCode::BadTimestamp, "t must be > 0, got " + std::to_string(frame.t_ms));
  }
  for (std::size_t i = 0; i < frame.lm.size(); ++i) {
    check_band(frame.lm[i].x, "x", i);
    check_band(frame.lm[i].y, "y", i);
    if (!std::isfinite(frame.lm[i].z)) {
      throw Error(ErrorCode::OutOfRange, "landmark " + std::to_string(i) + " z is not finite");
    }
  }
}

HandFrame parse_frame(std::string_view line) {
  json doc = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw Error(ErrorCode::MalformedRecord, "not a JSON object");
  }

  HandFrame frame;

  auto t = doc.find("t");
  if (t == doc.end() || !t->is_number_integer()) {
    throw Error(ErrorCode::MalformedRecord, "missing or non-integer \"t\"");
  }
  frame.t_ms = t->get<std::int64_t>();

  auto hand = doc.find("hand");
  if (hand == doc.end() || !hand->is_string()) {
    throw Error(ErrorCode::MalformedRecord, "missing \"hand\"");
  }
  const auto& label = hand->get_ref<const std::string&>();
  if (label == "Left") {
    frame.hand = Handedness::Left;
  } else if (label == "Right") {
    frame.hand = Handedness::Right;
  } else {
    throw Error(ErrorCode::MalformedRecord, "hand must be \"Left\" or \"Right\"");
  }

  auto points = doc.find("lm");
  if (points == doc.end() || !points->is_array()) {
    throw Error(ErrorCode::MalformedRecord, "missing \"lm\" array");
  }
  if (points->size() != lm::kCount) {
    throw Error(ErrorCode::WrongArity,
                "expected 21 landmarks, got " + std::to_string(points->size()));
  }
  for (std::size_t i = 0; i < lm::kCount; ++i) {
    const json& p = (*points)[i];
    if (!p.is_array() || p.size() != 3) {
      throw Error(ErrorCode::MalformedRecord,
                  "landmark " + std::to_string(i) + " must be [x, y, z]");
    }
    frame.lm[i] = Landmark{coordinate(p[0], "x", i), coordinate(p[1], "y", i),
                           coordinate(p[2], "z", i)};
  }

  validate_frame(frame);
  return frame;
}

std::string serialize_frame(const HandFrame& frame) {
  json points = json::array();
  for (const auto& p : frame.lm) {
    points.push_back(json::array({p.x, p.y, p.z}));
  }
  nlohmann::ordered_json doc;
  doc["t"] = frame.t_ms;
  doc["hand"] = handedness_name(frame.hand);
  doc["lm"] = std::move(points);
  return doc.dump();
}

}  // namespace gestura
