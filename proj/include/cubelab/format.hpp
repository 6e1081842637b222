#pragma once

#include <cstdio>
#include <cstdlib>
#include <string>

namespace cubelab {

// All floating-point output goes through one formatter: 12 significant
// digits, shortest form, C locale (printf's binary-to-decimal conversion
// rounds half to even). Values are also re-parsed through round_g12 before
// aggregation so CSV and JSON views of the same number agree bit for bit.
inline std::string format_g12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline double round_g12(double x) {
  return std::strtod(format_g12(x).c_str(), nullptr);
}

}  // namespace cubelab
