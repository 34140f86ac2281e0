#pragma once

#include "aabeta/integer.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <random>

namespace aabeta {

/// Source of randomness passed explicitly to every sampling operation.
///
/// A seeded source is a deterministic mt19937_64 stream (reproducible keys and
/// vectors). The unseeded source draws every word from std::random_device.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed), seeded_(true) {}

    static RandomSource system() { return RandomSource(); }
    static RandomSource from(std::optional<std::uint64_t> seed) {
        return seed ? RandomSource(*seed) : system();
    }

    bool seeded() const noexcept { return seeded_; }

    std::uint64_t next_u64();

    /// Uniform integer in [0, 2^k).
    Integer bits(std::size_t k);

    /// Same draw as bits(k), written into out's existing storage.
    void fill_bits(Integer& out, std::size_t k);

    /// Uniform integer in [0, bound); bound must be positive.
    Integer below(const Integer& bound);

    /// Uniform integer in the closed range [lo, hi].
    Integer in_range(const Integer& lo, const Integer& hi);

    /// Uniform integer strictly between lo and hi.
    Integer open_interval(const Integer& lo, const Integer& hi) { return in_range(lo + 1, hi - 1); }

private:
    RandomSource() : device_(std::make_unique<std::random_device>()), seeded_(false) {}

    std::mt19937_64 engine_;
    std::unique_ptr<std::random_device> device_;
    bool seeded_;
};

}  // namespace aabeta
