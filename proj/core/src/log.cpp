#include "scissor/log.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>

namespace scissor {

namespace {

LogLevel parse_level() {
  const char* env = std::getenv("SCISSOR_LOG");
  if (!env) return LogLevel::Warn;
  std::string v(env);
  if (v == "error") return LogLevel::Error;
  if (v == "warn") return LogLevel::Warn;
  if (v == "info") return LogLevel::Info;
  if (v == "debug") return LogLevel::Debug;
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

std::mutex g_log_mutex;

}  // namespace

LogLevel log_level() {
  static const LogLevel level = parse_level();
  return level;
}

void log_line(LogLevel level, const std::string& msg) {
  std::lock_guard<std::mutex> lock(g_log_mutex);
  std::cerr << "[scissor:" << level_tag(level) << "] " << msg << "\n";
}

}  // namespace scissor
