#pragma once

#include <charconv>
#include <cstdint>
#include <string>

namespace delayrc {

/// 12 significant digits, '.' decimal separator, locale independent.
inline std::string format_number(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

inline std::string format_number(long v) { return std::to_string(v); }
inline std::string format_number(std::uint64_t v) { return std::to_string(v); }

}  // namespace delayrc
