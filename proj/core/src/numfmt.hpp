#pragma once

#include <string>

namespace fracdiff::detail {

/// %.17g: always round-trips.
std::string format_17g(double v);

/// Shortest %.Ng (N <= 17) that parses back to exactly `v`.
std::string format_shortest(double v);

}  // namespace fracdiff::detail
