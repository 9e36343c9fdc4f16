#pragma once

#include <sstream>
#include <string>

namespace scissor {

enum class LogLevel { Error = 0, Warn = 1, Info = 2, Debug = 3 };

// Current level, read once from the SCISSOR_LOG environment variable
// (error|warn|info|debug; default warn).
LogLevel log_level();

void log_line(LogLevel level, const std::string& msg);

namespace detail {
template <typename... Args>
void log_fmt(LogLevel level, Args&&... args) {
  if (static_cast<int>(level) > static_cast<int>(log_level())) return;
  std::ostringstream os;
  (os << ... << args);
  log_line(level, os.str());
}
}  // namespace detail

template <typename... Args>
void log_error(Args&&... args) {
  detail::log_fmt(LogLevel::Error, std::forward<Args>(args)...);
}
template <typename... Args>
void log_warn(Args&&... args) {
  detail::log_fmt(LogLevel::Warn, std::forward<Args>(args)...);
}
template <typename... Args>
void log_info(Args&&... args) {
  detail::log_fmt(LogLevel::Info, std::forward<Args>(args)...);
}
template <typename... Args>
void log_debug(Args&&... args) {
  detail::log_fmt(LogLevel::Debug, std::forward<Args>(args)...);
}

}  // namespace scissor
