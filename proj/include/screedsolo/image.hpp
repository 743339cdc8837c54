#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "screedsolo/errors.hpp"

namespace screedsolo {

// 8-bit raster, 1 (grayscale) or 3 (RGB) channels, samples row-major with
// channels interleaved per pixel.
struct PixelImage {
    int width = 0;
    int height = 0;
    int channels = 1;
    std::vector<std::uint8_t> samples;

    static PixelImage create(int width, int height, int channels,
                             std::uint8_t fill = 0) {
        if (width < 1 || height < 1 || (channels != 1 && channels != 3))
            throw InvalidParams("image dimensions must be positive with 1 or 3 channels");
        PixelImage img;
        img.width = width;
        img.height = height;
        img.channels = channels;
        img.samples.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                               static_cast<std::size_t>(channels),
                           fill);
        return img;
    }

    std::size_t sample_count() const noexcept { return samples.size(); }

    std::uint8_t& at(int x, int y, int c) {
        return samples[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                        static_cast<std::size_t>(x)) *
                           static_cast<std::size_t>(channels) +
                       static_cast<std::size_t>(c)];
    }
    std::uint8_t at(int x, int y, int c) const {
        return samples[(static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                        static_cast<std::size_t>(x)) *
                           static_cast<std::size_t>(channels) +
                       static_cast<std::size_t>(c)];
    }

    bool same_shape(const PixelImage& other) const noexcept {
        return width == other.width && height == other.height && channels == other.channels;
    }

    bool operator==(const PixelImage&) const = default;
};

inline void require_same_shape(const PixelImage& a, const PixelImage& b) {
    if (!a.same_shape(b))
        throw ShapeMismatch("images differ in shape: " + std::to_string(a.width) + "x" +
                            std::to_string(a.height) + "x" + std::to_string(a.channels) + " vs " +
                            std::to_string(b.width) + "x" + std::to_string(b.height) + "x" +
                            std::to_string(b.channels));
}

} // namespace screedsolo
