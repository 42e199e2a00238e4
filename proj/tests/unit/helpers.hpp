#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "gestura/landmark.hpp"

namespace gestura::testing {

// Every landmark at (x, y, 0).
inline HandFrame flat_frame(std::int64_t t, double x = 0.5, double y = 0.5,
                            Handedness hand = Handedness::Right) {
  HandFrame f;
  f.t_ms = t;
  f.hand = hand;
  for (auto& p : f.lm) p = {x, y, 0.0};
  return f;
}

// Scratch directory removed on scope exit.
class TempDir {
 public:
  TempDir() {
    std::string tmpl = (std::filesystem::temp_directory_path() / "gestura_test_XXXXXX").string();
    path_ = mkdtemp(tmpl.data());
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name, const std::string& content) const {
    auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << content;
    return p;
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace gestura::testing
