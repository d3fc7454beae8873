#pragma once

#include <cstdint>
#include <string_view>

namespace samplim {

inline constexpr std::string_view kToolName = "samplim";
inline constexpr std::string_view kVersion = "0.1.0";

// Default seed used when neither the config nor the command line supplies one.
// First 19 digits of the golden ratio; nothing up the sleeve.
inline constexpr std::uint64_t kDefaultSeed = 1618033988749894848ULL;

}  // namespace samplim
