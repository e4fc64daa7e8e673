#pragma once

namespace adns {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace adns
