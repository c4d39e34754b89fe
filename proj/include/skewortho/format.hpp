#pragma once

#include <charconv>
#include <string>

namespace skewortho {

// Shortest-free, locale-independent rendering with 17 significant digits.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace skewortho
