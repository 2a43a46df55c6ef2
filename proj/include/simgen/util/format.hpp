#pragma once

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace simgen::util {

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& s) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || end != begin + s.size())
        throw std::invalid_argument("not a number: \"" + s + "\"");
    return v;
}

}  // namespace simgen::util
