#pragma once

#include "aabeta/integer.hpp"

#include <cstdint>
#include <span>
#include <string_view>

// Schoolbook multiprecision multiplication over 64-bit limbs, used on the
// encryption path. A scalar reference and an AVX2 variant share one contract:
// out[0, a.size() + b.size()) = a * b, little-endian limbs, out not aliasing a or b.

namespace aabeta::kernel {

using Limb = std::uint64_t;
static_assert(sizeof(mp_limb_t) == sizeof(Limb), "kernels assume 64-bit GMP limbs");

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

void mul_scalar(std::span<const Limb> a, std::span<const Limb> b, std::span<Limb> out);

#if defined(__x86_64__) || defined(__i386__)
#define AABETA_HAVE_AVX2_KERNEL 1
void mul_avx2(std::span<const Limb> a, std::span<const Limb> b, std::span<Limb> out);
#endif

/// Whether the CPU running this process can execute the given variant.
bool supported(Isa isa);

/// Fastest supported variant, chosen once per process by timing every
/// supported kernel on a fixed operand pair. All variants give identical results.
Isa detected_isa();

/// Variant used by multiply(a, b). Defaults to detected_isa().
Isa active_isa();
void set_active_isa(Isa isa);  // throws invalid_argument when unsupported

/// out = a * b, reusing out's storage. out must not alias a or b.
void multiply_into(Integer& out, const Integer& a, const Integer& b, Isa isa);

inline void multiply_into(Integer& out, const Integer& a, const Integer& b) { multiply_into(out, a, b, active_isa()); }

inline Integer multiply(const Integer& a, const Integer& b, Isa isa) {
    Integer r;
    multiply_into(r, a, b, isa);
    return r;
}

inline Integer multiply(const Integer& a, const Integer& b) { return multiply(a, b, active_isa()); }

}  // namespace aabeta::kernel
