#pragma once

#include <string_view>

namespace rsvd {

inline constexpr std::string_view kToolName = "rsvd";
inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace rsvd
