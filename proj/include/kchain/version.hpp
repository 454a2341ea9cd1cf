#pragma once

namespace kchain {

inline constexpr const char* kToolName = "kchain";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace kchain
