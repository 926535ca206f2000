#pragma once
#include <charconv>
#include <cmath>
#include <string>

namespace rscc {

// shortest decimal that round-trips the double; infinities and nan spelled out.
// every serialized number in the project goes through this, so text output is
// deterministic and free of negative zeros.
inline std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0;
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace rscc
