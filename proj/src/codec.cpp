#include "aabeta/codec.hpp"
#include "aabeta/error.hpp"

#include <algorithm>

// Layout: the payload bits are followed by a single 1 marker and zero fill,
// giving a content integer X of 4n - 3 bits. X is split by mixed radix
// R = 2^{n-2} - 1 into (hi, lo), and m1 = 2^{3n} + hi + 1, m2 = 2^{n-2} + lo + 1,
// which keeps both values strictly inside their open intervals.

namespace aabeta {

namespace {

std::size_t content_bits(std::size_t n) { return 4 * n - 3; }

Integer radix(std::size_t n) { return pow2(n - 2) - 1; }

}  // namespace

bool EncodedMessage::in_range() const {
    return n >= 8 && in_pow2_interval(m1, 3 * n, 3 * n + 1) && in_pow2_interval(m2, n - 2, n - 1);
}

std::size_t capacity_bytes(std::size_t n) {
    require(n >= 8, ErrorKind::invalid_argument, "n must be >= 8");
    return (4 * n - 4) / 8;
}

EncodedMessage encode(std::span<const std::uint8_t> payload, std::size_t n) {
    const std::size_t cap = capacity_bytes(n);
    require(payload.size() <= cap, ErrorKind::capacity_exceeded,
            std::to_string(payload.size()) + " bytes exceed block capacity of " + std::to_string(cap) + " bytes");

    Integer value;
    if (!payload.empty()) mpz_import(value.get_mpz_t(), payload.size(), 1, 1, 1, 0, payload.data());
    const std::size_t fill = content_bits(n) - 8 * payload.size() - 1;
    const Integer content = ((value << 1) + 1) << fill;

    const Integer r = radix(n);
    Integer hi, lo;
    mpz_fdiv_qr(hi.get_mpz_t(), lo.get_mpz_t(), content.get_mpz_t(), r.get_mpz_t());
    return EncodedMessage{pow2(3 * n) + hi + 1, pow2(n - 2) + lo + 1, n};
}

Bytes decode(const EncodedMessage& msg) {
    require(msg.in_range(), ErrorKind::codec_error, "message pair outside its intervals");
    const std::size_t n = msg.n;
    const Integer content = (msg.m1 - pow2(3 * n) - 1) * radix(n) + (msg.m2 - pow2(n - 2) - 1);
    require(sgn(content) > 0 && bit_length(content) <= content_bits(n), ErrorKind::codec_error, "bad padding");

    const std::size_t fill = mpz_scan1(content.get_mpz_t(), 0);
    const std::size_t payload_bits = content_bits(n) - 1 - fill;
    require(payload_bits % 8 == 0, ErrorKind::codec_error, "padding marker is not byte aligned");

    Bytes out(payload_bits / 8);
    if (out.empty()) return out;
    const Integer value = content >> (fill + 1);
    std::size_t written = 0;
    std::vector<std::uint8_t> raw(out.size());
    mpz_export(raw.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
    // mpz_export drops leading zero bytes
    std::copy(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(written),
              out.end() - static_cast<std::ptrdiff_t>(written));
    return out;
}

}  // namespace aabeta
