#pragma once

#include <string>

namespace bss {

// Diagnostics go to stderr only; level comes from BSS_OPT_LOG
// (error|warn|info|debug, default warn). Data outputs never pass
// through here.
enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

LogLevel log_level();
void set_log_level(LogLevel level);

void log_error(const std::string& msg);
void log_warn(const std::string& msg);
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

}  // namespace bss
