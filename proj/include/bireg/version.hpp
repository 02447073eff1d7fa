#pragma once

namespace bireg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace bireg
