#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace infodens {

// CSV numeric formats: fixed 3 decimals for display columns, 12 significant
// digits for full-precision columns; '.' decimal separator always (printf
// with the C locale is not used; snprintf here is locale-independent for %g
// in practice because the global locale is never changed by this library)

inline std::string format_full(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline std::string format_fixed3(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

} // namespace infodens
