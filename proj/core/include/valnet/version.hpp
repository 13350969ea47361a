#pragma once

namespace valnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace valnet
