#pragma once

#include "aabeta/cipher.hpp"
#include "aabeta/error.hpp"
#include "aabeta/keys.hpp"

#include <doctest.h>

// The n = 16 reference instance. Its primes sit below 2^16, so it only
// passes relaxed validation.
namespace fixture {

inline const aabeta::Integer p{62683};
inline const aabeta::Integer q{62483};
inline const aabeta::Integer d{2486483};
inline const aabeta::Integer e_a1{"245505609868187"};
inline const aabeta::Integer e_a2{"4106878163802480"};
inline const aabeta::Integer m1{"544644664056570"};
inline const aabeta::Integer m2{21777};
inline const aabeta::Integer k1{54433};
inline const aabeta::Integer k2{33079};
inline const aabeta::Integer u{"35693832703611425953"};
inline const aabeta::Integer v{1427210551};
inline const aabeta::Integer v_squared{"2036929956885723601"};
inline const aabeta::Integer c{"17128459327562266456602243879187691"};
inline const aabeta::Integer w{3215349249};
inline constexpr std::size_t n = 16;

inline aabeta::KeyPair keys() {
    return {aabeta::PublicKey{n, e_a1, e_a2}, aabeta::PrivateKey{n, p, q, d}};
}

inline aabeta::EncodedMessage message() { return {m1, m2, n}; }

}  // namespace fixture

template <class Fn>
aabeta::ErrorKind error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const aabeta::Error& e) {
        return e.kind();
    }
    FAIL("expected an aabeta::Error");
    return aabeta::ErrorKind::io_error;
}
