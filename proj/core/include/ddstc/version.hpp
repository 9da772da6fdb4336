#pragma once

namespace ddstc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ddstc
