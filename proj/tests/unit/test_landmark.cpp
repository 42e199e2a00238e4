#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "gestura/error.hpp"
#include "gestura/landmark.hpp"
#include "helpers.hpp"

using namespace gestura;

namespace {

std::string record(std::string t, std::string hand, int count, std::string point = "[0.5,0.5,0.0]") {
  std::string lm;
  for (int i = 0; i < count; ++i) lm += (i ? "," : "") + point;
  return R"({"t":)" + t + R"(,"hand":)" + hand + R"(,"lm":[)" + lm + "]}";
}

ErrorCode code_of(const std::string& line) {
  try {
    parse_frame(line);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error for " << line);
  return ErrorCode::MalformedRecord;
}

}  // namespace

TEST_CASE("well-formed record parses") {
  HandFrame f = parse_frame(record("100", "\"Right\"", 21));
  CHECK(f.t_ms == 100);
  CHECK(f.hand == Handedness::Right);
  for (const auto& p : f.lm) CHECK(p == Landmark{0.5, 0.5, 0.0});
}

TEST_CASE("arity, band and timestamp violations") {
  CHECK(code_of(record("100", "\"Right\"", 20)) == ErrorCode::WrongArity);
  CHECK(code_of(record("100", "\"Right\"", 22)) == ErrorCode::WrongArity);
  CHECK(code_of(record("100", "\"Right\"", 21, "[2.0,0.5,0.0]")) == ErrorCode::OutOfRange);
  CHECK(code_of(record("100", "\"Right\"", 21, "[0.5,-0.6,0.0]")) == ErrorCode::OutOfRange);
  CHECK(code_of(record("0", "\"Right\"", 21)) == ErrorCode::BadTimestamp);
  CHECK(code_of(record("-5", "\"Right\"", 21)) == ErrorCode::BadTimestamp);
}

TEST_CASE("band edges and unconstrained z are accepted") {
  CHECK_NOTHROW(parse_frame(record("1", "\"Left\"", 21, "[-0.5,1.5,-42.0]")));
  CHECK_NOTHROW(parse_frame(record("1", "\"Left\"", 21, "[1.5,-0.5,1e6]")));
}

TEST_CASE("structural errors are MalformedRecord") {
  CHECK(code_of("not json") == ErrorCode::MalformedRecord);
  CHECK(code_of("[1,2,3]") == ErrorCode::MalformedRecord);
  CHECK(code_of(record("1.5", "\"Right\"", 21)) == ErrorCode::MalformedRecord);
  CHECK(code_of(record("\"1\"", "\"Right\"", 21)) == ErrorCode::MalformedRecord);
  CHECK(code_of(record("1", "\"Both\"", 21)) == ErrorCode::MalformedRecord);
  CHECK(code_of(record("1", "\"Right\"", 21, "[0.5,0.5]")) == ErrorCode::MalformedRecord);
  CHECK(code_of(record("1", "\"Right\"", 21, "[0.5,\"a\",0]")) == ErrorCode::MalformedRecord);
  CHECK(code_of(R"({"hand":"Right","lm":[]})") == ErrorCode::MalformedRecord);
}

TEST_CASE("validate_frame rejects non-finite coordinates") {
  HandFrame f = testing::flat_frame(1);
  f.lm[3].z = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_frame(f), Error);
  f.lm[3].z = 0.0;
  f.lm[7].x = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(validate_frame(f), Error);
}

TEST_CASE("serialize_frame round-trips exactly") {
  HandFrame f = testing::flat_frame(12345, 0.1, 0.2, Handedness::Left);
  for (std::size_t i = 0; i < f.lm.size(); ++i) {
    f.lm[i] = {0.1 + i / 70.0, 0.3 - i / 99.0, std::sqrt(2.0) * i};
  }
  CHECK(parse_frame(serialize_frame(f)) == f);
  CHECK(serialize_frame(f).rfind(R"({"t":12345,"hand":"Left","lm":[)", 0) == 0);
}

TEST_CASE("handedness helpers") {
  CHECK(std::string(handedness_name(Handedness::Left)) == "Left");
  CHECK(flipped(Handedness::Left) == Handedness::Right);
  CHECK(flipped(Handedness::Right) == Handedness::Left);
}
