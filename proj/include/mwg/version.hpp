#pragma once

namespace mwg {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mwg
