#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace mwt {

// Nine significant digits; every float in a report goes through here so that
// golden files stay stable.
inline std::string format_real(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  if (x == 0.0) return "0";  // folds -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

// The double nearest to format_real(x), for JSON numbers.
inline double rounded_real(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_real(x));
}

}  // namespace mwt
