#pragma once

namespace qw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qw
