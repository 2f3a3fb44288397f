#pragma once

#include <string_view>

namespace rbc {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

/// Threshold parsed once from the RBC_SCHED_LOG environment variable
/// (error|warn|info|debug or 0..3). Defaults to warn.
LogLevel log_threshold();

/// Writes "[level] message" to stderr when `level` passes the threshold.
void log(LogLevel level, std::string_view message);

}  // namespace rbc
