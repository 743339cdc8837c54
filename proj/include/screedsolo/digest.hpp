#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>

#include <openssl/crypto.h>
#include <openssl/core_names.h>
#include <openssl/evp.h>
#include <openssl/rand.h>

#include "screedsolo/errors.hpp"

namespace screedsolo {

namespace detail {

template <std::size_t N>
std::array<std::uint8_t, N> evp_digest(std::span<const std::uint8_t> data, const EVP_MD* md) {
    std::array<std::uint8_t, N> out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, md, nullptr) != 1 || len != N)
        throw Error("digest computation failed");
    return out;
}

} // namespace detail

inline std::array<std::uint8_t, 32> sha256(std::span<const std::uint8_t> data) {
    return detail::evp_digest<32>(data, EVP_sha256());
}

inline std::array<std::uint8_t, 16> md5(std::span<const std::uint8_t> data) {
    return detail::evp_digest<16>(data, EVP_md5());
}

inline std::string md5_hex(std::span<const std::uint8_t> data) {
    static constexpr char digits[] = "0123456789abcdef";
    const auto raw = md5(data);
    std::string out(32, '0');
    for (std::size_t i = 0; i < raw.size(); ++i) {
        out[2 * i] = digits[raw[i] >> 4];
        out[2 * i + 1] = digits[raw[i] & 0x0F];
    }
    return out;
}

inline std::array<std::uint8_t, 32> hmac_sha256(std::span<const std::uint8_t> key,
                                                std::span<const std::uint8_t> data) {
    struct MacHandle {
        EVP_MAC* mac = nullptr;
        EVP_MAC_CTX* ctx = nullptr;
        ~MacHandle() {
            if (ctx) EVP_MAC_CTX_free(ctx);
            if (mac) EVP_MAC_free(mac);
        }
    } h;
    h.mac = EVP_MAC_fetch(nullptr, "HMAC", nullptr);
    if (!h.mac || !(h.ctx = EVP_MAC_CTX_new(h.mac)))
        throw Error("HMAC context allocation failed");

    char digest_name[] = "SHA256";
    const OSSL_PARAM params[] = {
        OSSL_PARAM_construct_utf8_string(OSSL_MAC_PARAM_DIGEST, digest_name, 0),
        OSSL_PARAM_construct_end(),
    };
    std::array<std::uint8_t, 32> out{};
    std::size_t outlen = 0;
    if (EVP_MAC_init(h.ctx, key.data(), key.size(), params) != 1 ||
        EVP_MAC_update(h.ctx, data.data(), data.size()) != 1 ||
        EVP_MAC_final(h.ctx, out.data(), &outlen, out.size()) != 1 || outlen != out.size())
        throw Error("HMAC-SHA256 computation failed");
    return out;
}

inline bool constant_time_equal(std::span<const std::uint8_t> a, std::span<const std::uint8_t> b) {
    if (a.size() != b.size())
        return false;
    return CRYPTO_memcmp(a.data(), b.data(), a.size()) == 0;
}

inline void random_bytes(std::span<std::uint8_t> out) {
    if (RAND_bytes(out.data(), static_cast<int>(out.size())) != 1)
        throw Error("system randomness unavailable");
}

} // namespace screedsolo
