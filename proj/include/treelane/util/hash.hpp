#pragma once

#include <bit>
#include <cstdint>
#include <string_view>

namespace treelane::util {

// FNV-1a, 64-bit. Used for trajectory and transcript fingerprints; stable
// for a given build, not intended to be portable across platforms.
class Fnv64 {
 public:
  void update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
  }

  void update_u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      state_ ^= (v >> (8 * i)) & 0xffu;
      state_ *= 0x100000001b3ULL;
    }
  }

  void update_i64(std::int64_t v) { update_u64(static_cast<std::uint64_t>(v)); }

  void update_double(double d) { update_u64(std::bit_cast<std::uint64_t>(d)); }

  std::uint64_t digest() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

inline std::uint64_t fnv64(std::string_view bytes) {
  Fnv64 h;
  h.update(bytes);
  return h.digest();
}

}  // namespace treelane::util
