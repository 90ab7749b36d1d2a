#pragma once

namespace roughvol {

inline constexpr const char* version = "1.0.0";

} // namespace roughvol
