#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace breather {

/// Round-trippable decimal text (17 significant digits); "inf", "-inf", "nan".
inline std::string fmt17(double v) {
    if (std::isnan(v)) return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace breather
