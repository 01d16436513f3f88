#include "numfmt.hpp"

#include <cstdio>
#include <cstdlib>

namespace fracdiff::detail {

std::string format_17g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_shortest(double v) {
  char buf[40];
  for (int precision = 1; precision < 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) return buf;
  }
  return format_17g(v);
}

}  // namespace fracdiff::detail
