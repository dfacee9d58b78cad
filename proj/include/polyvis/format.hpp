#pragma once

#include <string>

namespace polyvis {

/// Shortest decimal string that parses back to the same double.
std::string FormatDouble(double v);

} // namespace polyvis
