#pragma once

namespace ectrl {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ectrl
