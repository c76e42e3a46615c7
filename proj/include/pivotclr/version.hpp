#pragma once

namespace pivotclr {

inline constexpr const char* kToolName = "pivotclr";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace pivotclr
