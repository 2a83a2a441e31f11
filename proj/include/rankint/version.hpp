#pragma once

namespace rankint {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rankint
