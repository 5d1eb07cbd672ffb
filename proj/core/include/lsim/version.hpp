#pragma once

namespace lsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lsim
