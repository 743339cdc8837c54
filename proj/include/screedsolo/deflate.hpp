#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <zlib.h>

#include "screedsolo/errors.hpp"

namespace screedsolo {

// DEFLATE (RFC 1951) inside the zlib wrapper (RFC 1950).
inline std::vector<std::uint8_t> zlib_compress(std::span<const std::uint8_t> raw,
                                               int level = Z_DEFAULT_COMPRESSION) {
    uLongf dest_len = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> out(dest_len);
    const int rc = compress2(out.data(), &dest_len, raw.data(), static_cast<uLong>(raw.size()),
                             level);
    if (rc != Z_OK)
        throw Error("zlib compression failed, rc=" + std::to_string(rc));
    out.resize(dest_len);
    return out;
}

inline std::vector<std::uint8_t> zlib_decompress(std::span<const std::uint8_t> compressed) {
    z_stream zs{};
    if (inflateInit(&zs) != Z_OK)
        throw Error("zlib inflateInit failed");

    std::vector<std::uint8_t> out;
    std::vector<std::uint8_t> buf(1 << 16);
    zs.next_in = const_cast<Bytef*>(compressed.data());
    zs.avail_in = static_cast<uInt>(compressed.size());

    int rc = Z_OK;
    do {
        zs.next_out = buf.data();
        zs.avail_out = static_cast<uInt>(buf.size());
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            inflateEnd(&zs);
            throw InflateError("corrupt DEFLATE stream, rc=" + std::to_string(rc));
        }
        out.insert(out.end(), buf.data(), buf.data() + (buf.size() - zs.avail_out));
    } while (rc != Z_STREAM_END && (zs.avail_in > 0 || zs.avail_out == 0));

    inflateEnd(&zs);
    if (rc != Z_STREAM_END)
        throw InflateError("truncated DEFLATE stream");
    return out;
}

} // namespace screedsolo
