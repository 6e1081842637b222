#pragma once

namespace cubelab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cubelab
