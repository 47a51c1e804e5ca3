#ifndef ORBITCENSUS_LOG_HPP
#define ORBITCENSUS_LOG_HPP

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

namespace orbitcensus::log {

enum class Level { off = 0, info = 1, debug = 2 };

inline Level level() {
    static Level lv = [] {
        const char* e = std::getenv("ORBIT_CENSUS_LOG");
        if (!e) return Level::off;
        if (std::strcmp(e, "debug") == 0) return Level::debug;
        if (std::strcmp(e, "info") == 0) return Level::info;
        return Level::off;
    }();
    return lv;
}

inline void info(const std::string& line) {
    if (level() >= Level::info) std::fprintf(stderr, "%s\n", line.c_str());
}

inline void debug(const std::string& line) {
    if (level() >= Level::debug) std::fprintf(stderr, "%s\n", line.c_str());
}

}  // namespace orbitcensus::log

#endif
