#pragma once

namespace berscan {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace berscan
