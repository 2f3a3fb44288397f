#include "rbc/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <string>

namespace rbc {

namespace {

LogLevel parse_level(const char* text) {
    if (text == nullptr) return LogLevel::Warn;
    const std::string value(text);
    if (value == "error" || value == "0") return LogLevel::Error;
    if (value == "warn" || value == "1") return LogLevel::Warn;
    if (value == "info" || value == "2") return LogLevel::Info;
    if (value == "debug" || value == "3") return LogLevel::Debug;
    return LogLevel::Warn;
}

const char* level_tag(LogLevel level) {
    switch (level) {
        case LogLevel::Error: return "error";
        case LogLevel::Warn: return "warn";
        case LogLevel::Info: return "info";
        case LogLevel::Debug: return "debug";
    }
    return "?";
}

}  // namespace

LogLevel log_threshold() {
    static const LogLevel threshold = parse_level(std::getenv("RBC_SCHED_LOG"));
    return threshold;
}

void log(LogLevel level, std::string_view message) {
    if (static_cast<int>(level) > static_cast<int>(log_threshold())) return;
    std::fprintf(stderr, "[%s] %.*s\n", level_tag(level),
                 static_cast<int>(message.size()), message.data());
}

}  // namespace rbc
