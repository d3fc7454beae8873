#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace samplim {

// The two disjoint index namespaces: theta coordinates index the population
// product space R^Theta, omega coordinates the sample product space R^Omega.
enum class Side : std::uint8_t { theta, omega };

inline Side opposite(Side s) { return s == Side::theta ? Side::omega : Side::theta; }

inline const char* side_name(Side s) { return s == Side::theta ? "theta" : "omega"; }

struct CoordinateId {
    Side side;
    std::uint64_t index;

    static CoordinateId theta(std::uint64_t i) { return {Side::theta, i}; }
    static CoordinateId omega(std::uint64_t i) { return {Side::omega, i}; }

    auto operator<=>(const CoordinateId&) const = default;
};

inline std::string to_string(CoordinateId id) {
    return (id.side == Side::theta ? "t" : "w") + std::to_string(id.index);
}

}  // namespace samplim
