#pragma once

#include <string>

namespace qpoisson::detail {

// Shortest round-trip decimal form; identical bytes for identical doubles.
std::string format_double(double value);

}  // namespace qpoisson::detail
