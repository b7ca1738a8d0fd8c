#pragma once

#include <cstdio>
#include <string>

namespace bellfacts {

// %.{digits}g, with negative zero printed as "0".
inline std::string format_significant(double x, int digits) {
  if (x == 0.0) x = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return buf;
}

// Machine-readable artifacts (CSV, JSON).
inline std::string fmt12(double x) { return format_significant(x, 12); }

// Terminal tables.
inline std::string fmt6(double x) { return format_significant(x, 6); }

}  // namespace bellfacts
