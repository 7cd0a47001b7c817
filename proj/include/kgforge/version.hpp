#pragma once

namespace kgforge {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace kgforge
