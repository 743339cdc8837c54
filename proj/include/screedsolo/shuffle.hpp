#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "screedsolo/rng.hpp"

namespace screedsolo {

// Index maps of one seeded Fisher-Yates pass. Applying `forward` as a gather
// (out[i] = in[forward[i]]) reproduces shuffle; `inverse` undoes it.
struct Permutation {
    std::vector<std::uint64_t> forward;
    std::vector<std::uint64_t> inverse;
};

// Fisher-Yates over indices: for i from N-1 down to 1 swap i with a
// rejection-sampled uniform j in [0, i]. Uniform over all N! orderings.
inline Permutation make_permutation(std::size_t n, std::uint64_t seed) {
    Permutation p;
    p.forward.resize(n);
    std::iota(p.forward.begin(), p.forward.end(), std::uint64_t{0});
    Xoshiro256ss rng(seed);
    for (std::size_t i = n; i-- > 1;) {
        const std::uint64_t j = bounded_draw(rng, static_cast<std::uint64_t>(i) + 1);
        std::swap(p.forward[i], p.forward[j]);
    }
    p.inverse.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        p.inverse[p.forward[i]] = i;
    return p;
}

template <typename T>
std::vector<T> shuffle(std::span<const T> items, std::uint64_t seed) {
    std::vector<T> out(items.begin(), items.end());
    Xoshiro256ss rng(seed);
    for (std::size_t i = out.size(); i-- > 1;) {
        const std::uint64_t j = bounded_draw(rng, static_cast<std::uint64_t>(i) + 1);
        std::swap(out[i], out[j]);
    }
    return out;
}

template <typename T>
std::vector<T> unshuffle(std::span<const T> items, std::uint64_t seed) {
    const Permutation p = make_permutation(items.size(), seed);
    std::vector<T> out(items.size());
    for (std::size_t i = 0; i < items.size(); ++i)
        out[p.forward[i]] = items[i];
    return out;
}

inline std::vector<std::uint8_t> shuffle_bytes(std::span<const std::uint8_t> bytes,
                                               std::uint64_t seed) {
    return shuffle<std::uint8_t>(bytes, seed);
}

inline std::vector<std::uint8_t> unshuffle_bytes(std::span<const std::uint8_t> bytes,
                                                 std::uint64_t seed) {
    return unshuffle<std::uint8_t>(bytes, seed);
}

inline std::string shuffle_text(std::string_view text, std::uint64_t seed) {
    const auto bytes = shuffle<char>({text.data(), text.size()}, seed);
    return std::string(bytes.begin(), bytes.end());
}

inline std::string unshuffle_text(std::string_view text, std::uint64_t seed) {
    const auto bytes = unshuffle<char>({text.data(), text.size()}, seed);
    return std::string(bytes.begin(), bytes.end());
}

} // namespace screedsolo
