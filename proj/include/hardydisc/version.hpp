#pragma once

namespace hdisc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hdisc
