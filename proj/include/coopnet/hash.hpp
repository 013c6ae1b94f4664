#pragma once

#include <cstdint>
#include <cstring>
#include <string>
#include <string_view>

namespace coopnet {

inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t h = kFnvOffset) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t fnv1a64_int(int value, std::uint64_t h) {
  char buf[sizeof(int)];
  std::memcpy(buf, &value, sizeof(int));
  return fnv1a64(std::string_view(buf, sizeof(int)), h);
}

std::string to_hex(std::uint64_t value);

}  // namespace coopnet
