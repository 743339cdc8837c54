#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "screedsolo/errors.hpp"

namespace screedsolo {

enum class Base64Alphabet { Standard, UrlSafe };

namespace detail {

constexpr std::string_view base64_chars(Base64Alphabet alphabet) noexcept {
    return alphabet == Base64Alphabet::Standard
               ? "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/"
               : "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";
}

constexpr std::array<std::int8_t, 256> base64_rev(Base64Alphabet alphabet) noexcept {
    std::array<std::int8_t, 256> rev{};
    rev.fill(-1);
    const auto chars = base64_chars(alphabet);
    for (int i = 0; i < 64; ++i)
        rev[static_cast<unsigned char>(chars[static_cast<std::size_t>(i)])] =
            static_cast<std::int8_t>(i);
    return rev;
}

} // namespace detail

// RFC 4648, always padded.
inline std::string base64_encode(std::span<const std::uint8_t> data, Base64Alphabet alphabet) {
    const auto chars = detail::base64_chars(alphabet);
    std::string out;
    out.reserve((data.size() + 2) / 3 * 4);
    std::size_t i = 0;
    for (; i + 3 <= data.size(); i += 3) {
        const unsigned v = (static_cast<unsigned>(data[i]) << 16) |
                           (static_cast<unsigned>(data[i + 1]) << 8) |
                           static_cast<unsigned>(data[i + 2]);
        out.push_back(chars[(v >> 18) & 63]);
        out.push_back(chars[(v >> 12) & 63]);
        out.push_back(chars[(v >> 6) & 63]);
        out.push_back(chars[v & 63]);
    }
    const std::size_t rest = data.size() - i;
    if (rest == 1) {
        const unsigned v = static_cast<unsigned>(data[i]) << 16;
        out.push_back(chars[(v >> 18) & 63]);
        out.push_back(chars[(v >> 12) & 63]);
        out.append("==");
    } else if (rest == 2) {
        const unsigned v = (static_cast<unsigned>(data[i]) << 16) |
                           (static_cast<unsigned>(data[i + 1]) << 8);
        out.push_back(chars[(v >> 18) & 63]);
        out.push_back(chars[(v >> 12) & 63]);
        out.push_back(chars[(v >> 6) & 63]);
        out.push_back('=');
    }
    return out;
}

// Strict decode: length must be a multiple of 4, padding only at the end.
inline std::vector<std::uint8_t> base64_decode(std::string_view text, Base64Alphabet alphabet) {
    static constexpr auto rev_std = detail::base64_rev(Base64Alphabet::Standard);
    static constexpr auto rev_url = detail::base64_rev(Base64Alphabet::UrlSafe);
    const auto& rev = alphabet == Base64Alphabet::Standard ? rev_std : rev_url;

    if (text.size() % 4 != 0)
        throw Base64Error("base64 input length " + std::to_string(text.size()) +
                          " is not a multiple of 4");
    std::vector<std::uint8_t> out;
    out.reserve(text.size() / 4 * 3);
    for (std::size_t i = 0; i < text.size(); i += 4) {
        int vals[4];
        int pad = 0;
        for (int j = 0; j < 4; ++j) {
            const char c = text[i + static_cast<std::size_t>(j)];
            if (c == '=') {
                // '=' is only legal in the last one or two slots of the input.
                if (i + 4 != text.size() || j < 2)
                    throw Base64Error("unexpected '=' inside base64 input");
                ++pad;
                vals[j] = 0;
                continue;
            }
            if (pad != 0)
                throw Base64Error("data after '=' padding");
            const std::int8_t v = rev[static_cast<unsigned char>(c)];
            if (v < 0)
                throw Base64Error(std::string("invalid base64 character '") + c + "'");
            vals[j] = v;
        }
        const unsigned v = (static_cast<unsigned>(vals[0]) << 18) |
                           (static_cast<unsigned>(vals[1]) << 12) |
                           (static_cast<unsigned>(vals[2]) << 6) |
                           static_cast<unsigned>(vals[3]);
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        if (pad < 2)
            out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xFF));
        if (pad < 1)
            out.push_back(static_cast<std::uint8_t>(v & 0xFF));
    }
    return out;
}

} // namespace screedsolo
