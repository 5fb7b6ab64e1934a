#pragma once

namespace cptloc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cptloc
