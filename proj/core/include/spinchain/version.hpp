#pragma once

namespace spinchain {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace spinchain
