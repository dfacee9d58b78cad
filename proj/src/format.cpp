#include "polyvis/format.hpp"

#include <charconv>

namespace polyvis {

std::string FormatDouble(double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

} // namespace polyvis
