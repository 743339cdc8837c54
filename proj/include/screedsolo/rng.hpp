#pragma once

#include <cassert>
#include <cstdint>
#include <limits>

namespace screedsolo {

// SplitMix64 step: advances state and returns the next output. The output
// sequence for a fixed starting state is also usable as a counter-based
// stream via splitmix64_at.
constexpr std::uint64_t splitmix64_next(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// index-th output of the SplitMix64 stream starting at seed, in O(1).
constexpr std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t state = seed + index * 0x9E3779B97F4A7C15ULL;
    return splitmix64_next(state);
}

// xoshiro256** 1.0 (Blackman & Vigna, 2018), state filled by SplitMix64
// expansion of a 64-bit seed.
class Xoshiro256ss {
public:
    using result_type = std::uint64_t;

    constexpr explicit Xoshiro256ss(std::uint64_t seed) noexcept {
        for (auto& word : state_)
            word = splitmix64_next(seed);
    }

    constexpr result_type operator()() noexcept {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4]{};
};

// Uniform draw on [0, bound) without modulo bias: draw 64-bit v, accept
// v < floor(2^64 / bound) * bound, return v mod bound. When bound divides
// 2^64 every draw is accepted.
template <typename Rng>
constexpr std::uint64_t bounded_draw(Rng& rng, std::uint64_t bound) {
    assert(bound != 0);
    if ((bound & (bound - 1)) == 0)
        return rng() & (bound - 1);
    const std::uint64_t accept_below =
        std::numeric_limits<std::uint64_t>::max() / bound * bound;
    std::uint64_t v = rng();
    while (v >= accept_below)
        v = rng();
    return v % bound;
}

} // namespace screedsolo
