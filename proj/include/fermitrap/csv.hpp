#pragma once

#include <cstdio>
#include <ostream>
#include <string>

namespace fermitrap::csv {

/// Full double precision (17 significant digits), locale independent.
inline std::string format(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

/// Writes `# line` comment rows; multi-line input is split on '\n'.
inline void write_comment(std::ostream& os, const std::string& text) {
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto end = text.find('\n', start);
        const auto line = text.substr(start, end == std::string::npos ? std::string::npos : end - start);
        if (!line.empty() || end != std::string::npos) os << "# " << line << '\n';
        if (end == std::string::npos) break;
        start = end + 1;
    }
}

} // namespace fermitrap::csv
