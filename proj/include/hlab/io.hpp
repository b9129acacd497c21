#pragma once
// Number formatting for CSV output. fmt_shortest produces the shortest string
// that round-trips to the same double, so emitted files are byte-stable.

#include <charconv>
#include <cstdio>
#include <string>

namespace hlab {

inline std::string fmt_shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline std::string fmt_sig17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

inline constexpr const char* kCsvVersionHeader = "# hammersley-lab v1";

} // namespace hlab
