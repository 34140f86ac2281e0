// Built with -mavx2; only reached after a runtime CPU check.
#include "aabeta/mpkernel.hpp"

#ifdef AABETA_HAVE_AVX2_KERNEL

#include <immintrin.h>

#include <algorithm>
#include <cstring>
#include <vector>

namespace aabeta::kernel {

// Works on 32-bit digits so _mm256_mul_epu32 yields exact 64-bit products.
// Each product is split: its low half accumulates into column k, its high half
// into column k + 1. A column receives at most min(la, lb) terms below 2^32,
// so 64-bit accumulators cannot overflow for any operand this library builds.
void mul_avx2(std::span<const Limb> a, std::span<const Limb> b, std::span<Limb> out) {
    const std::size_t la = 2 * a.size();
    const std::size_t lb = 2 * b.size();
    thread_local std::vector<std::uint32_t> a32, b32, digits;
    a32.resize(la);
    b32.resize(lb);
    std::memcpy(a32.data(), a.data(), a.size() * sizeof(Limb));
    std::memcpy(b32.data(), b.data(), b.size() * sizeof(Limb));

    thread_local std::vector<std::uint64_t> acc_lo, acc_hi;
    acc_lo.assign(la + lb + 1, 0);
    acc_hi.assign(la + lb + 1, 0);

    const __m256i low_mask = _mm256_set1_epi64x(0xffffffffLL);
    const std::size_t lb_vec = lb & ~std::size_t{3};
    for (std::size_t i = 0; i < la; ++i) {
        const std::uint64_t ai = a32[i];
        if (ai == 0) continue;
        const __m256i av = _mm256_set1_epi64x(static_cast<long long>(ai));
        std::uint64_t* lo = acc_lo.data() + i;
        std::uint64_t* hi = acc_hi.data() + i + 1;
        std::size_t j = 0;
        for (; j < lb_vec; j += 4) {
            const __m256i bv = _mm256_cvtepu32_epi64(_mm_loadu_si128(reinterpret_cast<const __m128i*>(&b32[j])));
            const __m256i prod = _mm256_mul_epu32(av, bv);
            __m256i l = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(lo + j));
            __m256i h = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(hi + j));
            l = _mm256_add_epi64(l, _mm256_and_si256(prod, low_mask));
            h = _mm256_add_epi64(h, _mm256_srli_epi64(prod, 32));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(lo + j), l);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(hi + j), h);
        }
        for (; j < lb; ++j) {
            const std::uint64_t p = ai * b32[j];
            lo[j] += p & 0xffffffffULL;
            hi[j] += p >> 32;
        }
    }

    digits.resize(la + lb);
    std::uint64_t carry = 0;
    for (std::size_t k = 0; k < la + lb; ++k) {
        const std::uint64_t s = acc_lo[k] + acc_hi[k] + carry;
        digits[k] = static_cast<std::uint32_t>(s);
        carry = s >> 32;
    }
    std::memcpy(out.data(), digits.data(), out.size() * sizeof(Limb));
}

}  // namespace aabeta::kernel

#endif
