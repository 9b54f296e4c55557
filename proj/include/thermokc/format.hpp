#pragma once

#include <cstdio>
#include <string>

namespace thermokc {

// Canonical decimal rendering used by configs, reports and the CLI:
// 12 significant digits, shortest form.
inline std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace thermokc
