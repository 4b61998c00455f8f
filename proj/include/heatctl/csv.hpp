#pragma once

#include <string>

namespace heatctl {

/// Shortest round-trip decimal form ("nan", "inf" for non-finite values).
std::string format_double(double value);

}  // namespace heatctl
