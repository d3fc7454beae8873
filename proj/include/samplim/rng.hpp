#pragma once

#include <cstdint>

namespace samplim {

// Counter-based pseudorandom bits: a value is a pure function of
// (seed, stream, counter), so parallel workers can own disjoint streams and
// any cell can be regenerated out of order. The mixer is the SplitMix64
// finalizer applied twice, with the stream and counter folded in through
// golden-ratio increments.

namespace detail {
inline constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t fmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

inline std::uint64_t mix3(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    std::uint64_t z = detail::fmix64(seed + detail::kGolden * (stream + 1));
    return detail::fmix64(z + detail::kGolden * (counter + 1));
}

// Sequential view over one (seed, stream) pair.
class SplitStream {
  public:
    SplitStream(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

    std::uint64_t at(std::uint64_t counter) const { return mix3(seed_, stream_, counter); }
    std::uint64_t next() { return at(counter_++); }

    // Unbiased uniform draw in [0, bound) by rejection; bound > 0.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
        std::uint64_t z;
        do {
            z = next();
        } while (z >= limit);
        return z % bound;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t counter_ = 0;
};

}  // namespace samplim
