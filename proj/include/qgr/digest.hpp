#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qgr {

// FNV-1a 64-bit over a byte string; hex-encoded. Stable across platforms,
// unlike std::hash.
inline std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace qgr
