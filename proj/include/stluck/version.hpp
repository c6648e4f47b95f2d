#pragma once

namespace stluck {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace stluck
