#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace eventqa {

/// Incremental FNV-1a (64 bit). Used for stable relation ids and content digests.
class Fnv1a {
 public:
  Fnv1a& update(std::string_view bytes) noexcept {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001b3ULL;
    }
    return *this;
  }
  // Field separator so that ("ab","c") and ("a","bc") differ.
  Fnv1a& separator() noexcept { return update(std::string_view("\x1f", 1)); }

  [[nodiscard]] std::uint64_t value() const noexcept { return state_; }
  [[nodiscard]] std::string hex() const;

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string to_hex(std::uint64_t value);

inline std::string Fnv1a::hex() const { return to_hex(state_); }

inline std::string to_hex(std::uint64_t value) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

}  // namespace eventqa
