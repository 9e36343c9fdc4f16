#pragma once

namespace scissor {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace scissor
