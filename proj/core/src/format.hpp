#pragma once

#include <cstdio>
#include <string>

namespace ldp {

// Shortest-round-trip-safe decimal rendering used by every report writer, so
// identical runs serialize byte-identically.
inline std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

}  // namespace ldp
