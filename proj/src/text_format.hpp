#pragma once

#include <charconv>
#include <string>

namespace ctcp::detail {

// Fixed six-decimal rendering used by every report, independent of locale.
inline std::string fixed6(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, 6);
  return std::string(buf, ptr);
}

}  // namespace ctcp::detail
