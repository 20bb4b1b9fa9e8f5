#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace locset {

/// Fixed 17-significant-digit float formatting used by every text output
/// (CSV rows, scenario files), so that equal runs produce byte-identical
/// artifacts and values round-trip exactly.
inline std::string format_float(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace locset
