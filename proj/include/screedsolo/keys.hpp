#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "screedsolo/base64.hpp"
#include "screedsolo/digest.hpp"
#include "screedsolo/errors.hpp"

namespace screedsolo {

// Password-derived key material. The shuffle seed is the first 8 bytes of
// SHA-256(password) read big-endian; the Fernet key is the 32-character
// lowercase hex digest of MD5(password) taken as 32 ASCII bytes. MD5 is kept
// for wire compatibility with the scheme this implements; it is a known-weak
// digest and the password receives no salting or stretching.
struct KeyMaterial {
    std::uint64_t shuffle_seed = 0;
    std::array<std::uint8_t, 32> fernet_key{};

    std::array<std::uint8_t, 16> signing_key() const noexcept {
        std::array<std::uint8_t, 16> k{};
        for (std::size_t i = 0; i < 16; ++i) k[i] = fernet_key[i];
        return k;
    }
    std::array<std::uint8_t, 16> encryption_key() const noexcept {
        std::array<std::uint8_t, 16> k{};
        for (std::size_t i = 0; i < 16; ++i) k[i] = fernet_key[16 + i];
        return k;
    }

    // 44-character base64url transport form, '='-padded.
    std::string fernet_key_base64url() const {
        return base64_encode(fernet_key, Base64Alphabet::UrlSafe);
    }

    // For interop with externally issued Fernet keys; shuffle seed stays 0.
    static KeyMaterial from_fernet_key_base64url(std::string_view encoded) {
        const auto raw = base64_decode(encoded, Base64Alphabet::UrlSafe);
        if (raw.size() != 32)
            throw InvalidParams("fernet key must decode to 32 bytes, got " +
                                std::to_string(raw.size()));
        KeyMaterial keys;
        for (std::size_t i = 0; i < 32; ++i) keys.fernet_key[i] = raw[i];
        return keys;
    }

    bool operator==(const KeyMaterial&) const = default;
};

inline KeyMaterial derive_keys(std::span<const std::uint8_t> password) {
    if (password.empty())
        throw EmptyPassword("password must not be empty");

    KeyMaterial keys;
    const auto sha = sha256(password);
    for (int i = 0; i < 8; ++i)
        keys.shuffle_seed = (keys.shuffle_seed << 8) | sha[static_cast<std::size_t>(i)];

    const std::string hex = md5_hex(password);
    for (std::size_t i = 0; i < 32; ++i)
        keys.fernet_key[i] = static_cast<std::uint8_t>(hex[i]);
    return keys;
}

inline KeyMaterial derive_keys(std::string_view password) {
    return derive_keys(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(password.data()), password.size()));
}

} // namespace screedsolo
