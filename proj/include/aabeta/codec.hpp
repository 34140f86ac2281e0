#pragma once

#include "aabeta/integer.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace aabeta {

using Bytes = std::vector<std::uint8_t>;

/// The message pair (m1, m2) with 2^{3n} < m1 < 2^{3n+1} and 2^{n-2} < m2 < 2^{n-1}.
struct EncodedMessage {
    Integer m1;
    Integer m2;
    std::size_t n = 0;

    bool in_range() const;

    friend bool operator==(const EncodedMessage&, const EncodedMessage&) = default;
};

/// Payload bytes that fit one block: floor((4n - 4) / 8).
std::size_t capacity_bytes(std::size_t n);

EncodedMessage encode(std::span<const std::uint8_t> payload, std::size_t n);

Bytes decode(const EncodedMessage& msg);

}  // namespace aabeta
