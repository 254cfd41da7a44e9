#pragma once

#include <charconv>
#include <string>

namespace biphoton::io {

/// Shortest round-trip decimal representation. All numeric file output goes
/// through this so reruns with the same config and seed are byte-identical.
inline std::string format_double(double value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace biphoton::io
