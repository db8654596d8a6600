#pragma once

namespace qcs {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qcs
