#pragma once

namespace demonbox {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace demonbox
