#pragma once

#include <cstdint>
#include <string>

#include "screedsolo/bitstream.hpp"
#include "screedsolo/errors.hpp"
#include "screedsolo/image.hpp"

namespace screedsolo {

// One payload bit per channel sample: capacity is width * height * channels
// (3MN for RGB). Samples are consumed row-major, channels interleaved,
// starting at sample 0; that traversal order is part of the wire format.
inline std::uint64_t capacity_bits(const PixelImage& image) {
    return static_cast<std::uint64_t>(image.width) * static_cast<std::uint64_t>(image.height) *
           static_cast<std::uint64_t>(image.channels);
}

// Sets the LSB of sample i to bit i: flips the sample when they disagree,
// leaves it untouched otherwise, so every sample changes by at most 1.
inline PixelImage embed(const PixelImage& cover, const BitStream& bits) {
    const std::uint64_t cap = capacity_bits(cover);
    if (bits.size() > cap)
        throw InsufficientCapacity("payload needs " + std::to_string(bits.size()) +
                                   " bits but the cover holds " + std::to_string(cap));
    PixelImage stego = cover;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        const std::uint8_t sample = stego.samples[i];
        if ((sample & 1) != static_cast<std::uint8_t>(bits.bit(i)))
            stego.samples[i] = sample ^ 1;
    }
    return stego;
}

// LSB plane of the first n_bits samples.
inline BitStream extract(const PixelImage& stego, std::uint64_t n_bits) {
    if (n_bits > capacity_bits(stego))
        throw FrameError("requested " + std::to_string(n_bits) + " bits but capacity is " +
                         std::to_string(capacity_bits(stego)));
    BitStream bits;
    for (std::uint64_t i = 0; i < n_bits; ++i)
        bits.push_bit(stego.samples[i] & 1);
    return bits;
}

// Reads the 32-bit header, then exactly the advertised payload; returns the
// full framed stream (header included).
inline BitStream extract_framed(const PixelImage& stego) {
    const std::uint64_t cap = capacity_bits(stego);
    if (cap < 32)
        throw FrameError("image too small to hold a frame header");
    const BitStream header = extract(stego, 32);
    const std::uint32_t payload_bits = header.read_u32_be(0);
    if (payload_bits > cap - 32)
        throw FrameError("frame header claims " + std::to_string(payload_bits) +
                         " payload bits but capacity leaves " + std::to_string(cap - 32));
    return extract(stego, 32 + static_cast<std::uint64_t>(payload_bits));
}

} // namespace screedsolo
