#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "screedsolo/errors.hpp"

namespace screedsolo {

// Ordered bit sequence, packed MSB-first within each byte. Bit i of a byte
// sequence is bit (7 - i%8) of byte i/8.
class BitStream {
public:
    BitStream() = default;

    static BitStream from_bytes(std::span<const std::uint8_t> bytes) {
        BitStream s;
        s.bytes_.assign(bytes.begin(), bytes.end());
        s.nbits_ = bytes.size() * 8;
        return s;
    }

    std::size_t size() const noexcept { return nbits_; }
    bool empty() const noexcept { return nbits_ == 0; }

    bool bit(std::size_t i) const noexcept {
        return (bytes_[i / 8] >> (7 - i % 8)) & 1;
    }

    void push_bit(bool b) {
        if (nbits_ % 8 == 0)
            bytes_.push_back(0);
        if (b)
            bytes_[nbits_ / 8] |= static_cast<std::uint8_t>(1u << (7 - nbits_ % 8));
        ++nbits_;
    }

    void append_u32_be(std::uint32_t value) {
        for (int shift = 24; shift >= 0; shift -= 8)
            append_byte(static_cast<std::uint8_t>(value >> shift));
    }

    void append_byte(std::uint8_t byte) {
        if (nbits_ % 8 == 0) {
            bytes_.push_back(byte);
            nbits_ += 8;
        } else {
            for (int b = 7; b >= 0; --b)
                push_bit((byte >> b) & 1);
        }
    }

    void append_bytes(std::span<const std::uint8_t> bytes) {
        if (nbits_ % 8 == 0) {
            bytes_.insert(bytes_.end(), bytes.begin(), bytes.end());
            nbits_ += bytes.size() * 8;
        } else {
            for (std::uint8_t byte : bytes)
                append_byte(byte);
        }
    }

    // Big-endian read of 32 bits starting at bit offset.
    std::uint32_t read_u32_be(std::size_t offset) const {
        if (offset + 32 > nbits_)
            throw FrameError("bit stream shorter than a 32-bit header");
        std::uint32_t v = 0;
        for (std::size_t i = 0; i < 32; ++i)
            v = (v << 1) | static_cast<std::uint32_t>(bit(offset + i));
        return v;
    }

    // Whole-byte view; requires the stream to be byte aligned.
    std::vector<std::uint8_t> to_bytes() const {
        if (nbits_ % 8 != 0)
            throw FrameError("bit stream of " + std::to_string(nbits_) +
                             " bits is not byte aligned");
        return bytes_;
    }

    // Bytes formed by bits [offset, offset+count), MSB-first; count % 8 == 0.
    std::vector<std::uint8_t> slice_bytes(std::size_t offset, std::size_t count) const {
        if (count % 8 != 0)
            throw FrameError("bit slice of " + std::to_string(count) + " bits is not byte aligned");
        if (offset + count > nbits_)
            throw FrameError("bit slice out of range");
        std::vector<std::uint8_t> out(count / 8, 0);
        if (offset % 8 == 0) {
            std::copy(bytes_.begin() + static_cast<std::ptrdiff_t>(offset / 8),
                      bytes_.begin() + static_cast<std::ptrdiff_t>((offset + count) / 8),
                      out.begin());
        } else {
            for (std::size_t i = 0; i < count; ++i)
                if (bit(offset + i))
                    out[i / 8] |= static_cast<std::uint8_t>(1u << (7 - i % 8));
        }
        return out;
    }

    bool operator==(const BitStream& other) const noexcept {
        if (nbits_ != other.nbits_)
            return false;
        for (std::size_t i = 0; i < nbits_; ++i)
            if (bit(i) != other.bit(i))
                return false;
        return true;
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::size_t nbits_ = 0;
};

} // namespace screedsolo
