#pragma once

namespace dombv {

inline constexpr const char* kToolName    = "dombverify";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace dombv
