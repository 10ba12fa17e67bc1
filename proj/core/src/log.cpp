#include "bss/log.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace bss {

namespace {

LogLevel parse_env_level() {
  const char* env = std::getenv("BSS_OPT_LOG");
  if (env == nullptr) return LogLevel::Warn;
  if (std::strcmp(env, "error") == 0) return LogLevel::Error;
  if (std::strcmp(env, "warn") == 0) return LogLevel::Warn;
  if (std::strcmp(env, "info") == 0) return LogLevel::Info;
  if (std::strcmp(env, "debug") == 0) return LogLevel::Debug;
  return LogLevel::Warn;
}

LogLevel& level_ref() {
  static LogLevel level = parse_env_level();
  return level;
}

void emit(const char* tag, const std::string& msg) {
  std::fprintf(stderr, "[%s] %s\n", tag, msg.c_str());
}

}  // namespace

LogLevel log_level() { return level_ref(); }

void set_log_level(LogLevel level) { level_ref() = level; }

void log_error(const std::string& msg) {
  if (log_level() >= LogLevel::Error) emit("error", msg);
}

void log_warn(const std::string& msg) {
  if (log_level() >= LogLevel::Warn) emit("warn", msg);
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::Info) emit("info", msg);
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::Debug) emit("debug", msg);
}

}  // namespace bss
