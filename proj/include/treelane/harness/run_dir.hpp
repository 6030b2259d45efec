#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <string>

#include "treelane/util/hash.hpp"

namespace treelane::harness {

// Creates runs/<UTC timestamp>-<config hash>/ and returns it. A fixed
// out_dir override skips the naming scheme (used by tests and scripted
// comparisons).
inline std::filesystem::path make_run_dir(const std::string& config_text,
                                          const std::string& out_dir_override = "",
                                          const std::string& base = "runs") {
  if (!out_dir_override.empty()) {
    std::filesystem::create_directories(out_dir_override);
    return out_dir_override;
  }
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char stamp[32];
  std::strftime(stamp, sizeof(stamp), "%Y%m%d-%H%M%S", &tm);
  char hash[17];
  std::snprintf(hash, sizeof(hash), "%08llx",
                static_cast<unsigned long long>(util::fnv64(config_text) & 0xffffffffULL));
  std::filesystem::path dir = std::filesystem::path(base) / (std::string(stamp) + "-" + hash);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace treelane::harness
