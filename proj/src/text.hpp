#pragma once

#include <cstdio>
#include <string>

namespace graphon::detail {

/// Shortest-round-trip-safe decimal for CSV cells.
inline std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace graphon::detail
