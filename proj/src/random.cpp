#include "aabeta/random.hpp"
#include "aabeta/error.hpp"


namespace aabeta {

std::uint64_t RandomSource::next_u64() {
    if (seeded_) return engine_();
    auto& dev = *device_;
    return (std::uint64_t{dev()} << 32) | std::uint64_t{dev()};
}

static_assert(GMP_NUMB_BITS == 64, "limbs are filled one 64-bit word at a time");

void RandomSource::fill_bits(Integer& out, std::size_t k) {
    if (k == 0) {
        out = 0;
        return;
    }
    const std::size_t words = (k + 63) / 64;
    mp_limb_t* limbs = mpz_limbs_write(out.get_mpz_t(), static_cast<mp_size_t>(words));
    // least significant word first
    for (std::size_t i = 0; i < words; ++i) limbs[i] = next_u64();
    if (std::size_t extra = words * 64 - k; extra != 0) limbs[words - 1] >>= extra;
    mp_size_t size = static_cast<mp_size_t>(words);
    while (size > 0 && limbs[size - 1] == 0) --size;
    mpz_limbs_finish(out.get_mpz_t(), size);
}

Integer RandomSource::bits(std::size_t k) {
    Integer r;
    fill_bits(r, k);
    return r;
}

Integer RandomSource::below(const Integer& bound) {
    require(sgn(bound) > 0, ErrorKind::invalid_argument, "sampling bound must be positive");
    const std::size_t k = bit_length(bound);
    for (;;) {
        Integer r = bits(k);
        if (r < bound) return r;
    }
}

Integer RandomSource::in_range(const Integer& lo, const Integer& hi) {
    require(lo <= hi, ErrorKind::invalid_argument, "empty sampling range");
    return lo + below(hi - lo + 1);
}

}  // namespace aabeta
