#pragma once

namespace nphawkes {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nphawkes
