#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include <png.h>

#include "screedsolo/errors.hpp"
#include "screedsolo/image.hpp"

namespace screedsolo {

// PNG carrier I/O via the libpng simplified API. Only 8-bit grayscale and
// RGB are accepted; alpha and 16-bit files are rejected rather than silently
// converted, since any conversion would touch the LSB plane.

namespace detail {

inline void check_readable_format(const png_image& info, const std::string& what) {
    if (info.format & PNG_FORMAT_FLAG_ALPHA)
        throw IoError(what + ": images with an alpha channel are not supported");
    if (info.format & PNG_FORMAT_FLAG_LINEAR)
        throw IoError(what + ": 16-bit images are not supported");
}

inline PixelImage finish_read(png_image& info, const std::string& what) {
    check_readable_format(info, what);
    const bool color = (info.format & PNG_FORMAT_FLAG_COLOR) != 0;
    info.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    PixelImage img = PixelImage::create(static_cast<int>(info.width),
                                        static_cast<int>(info.height), color ? 3 : 1);
    if (!png_image_finish_read(&info, nullptr, img.samples.data(), 0, nullptr)) {
        const std::string msg = info.message;
        png_image_free(&info);
        throw IoError(what + ": " + msg);
    }
    return img;
}

} // namespace detail

inline PixelImage read_png(const std::string& path) {
    png_image info;
    std::memset(&info, 0, sizeof info);
    info.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&info, path.c_str()))
        throw IoError("cannot read PNG '" + path + "': " + info.message);
    try {
        return detail::finish_read(info, "'" + path + "'");
    } catch (...) {
        png_image_free(&info);
        throw;
    }
}

inline PixelImage decode_png(std::span<const std::uint8_t> bytes) {
    png_image info;
    std::memset(&info, 0, sizeof info);
    info.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_memory(&info, bytes.data(), bytes.size()))
        throw IoError(std::string("cannot decode PNG: ") + info.message);
    try {
        return detail::finish_read(info, "PNG buffer");
    } catch (...) {
        png_image_free(&info);
        throw;
    }
}

inline void write_png(const PixelImage& image, const std::string& path) {
    png_image info;
    std::memset(&info, 0, sizeof info);
    info.version = PNG_IMAGE_VERSION;
    info.width = static_cast<png_uint_32>(image.width);
    info.height = static_cast<png_uint_32>(image.height);
    info.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    if (!png_image_write_to_file(&info, path.c_str(), 0, image.samples.data(), 0, nullptr))
        throw IoError("cannot write PNG '" + path + "': " + info.message);
}

inline std::vector<std::uint8_t> encode_png(const PixelImage& image) {
    png_image info;
    std::memset(&info, 0, sizeof info);
    info.version = PNG_IMAGE_VERSION;
    info.width = static_cast<png_uint_32>(image.width);
    info.height = static_cast<png_uint_32>(image.height);
    info.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&info, nullptr, &size, 0, image.samples.data(), 0, nullptr))
        throw IoError(std::string("cannot size PNG buffer: ") + info.message);
    std::vector<std::uint8_t> out(size);
    if (!png_image_write_to_memory(&info, out.data(), &size, 0, image.samples.data(), 0, nullptr))
        throw IoError(std::string("cannot encode PNG: ") + info.message);
    out.resize(size);
    return out;
}

} // namespace screedsolo
