#pragma once

#include <string_view>

namespace geolink {

inline constexpr std::string_view kVersion = "0.1.0";
inline constexpr std::string_view kSchema = "geolink/1";

}  // namespace geolink
