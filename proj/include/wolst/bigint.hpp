#pragma once

// Arbitrary-precision oracle types. These back the *reference* side of every
// dual-route check (exact binomials, exact Bernoulli rationals, the exact
// power-sum identity); the unit under test never goes through them.

#include <boost/multiprecision/cpp_int.hpp>

#include "wolst/errors.hpp"
#include "wolst/modmath.hpp"

namespace wolst {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

inline BigInt big_from_u128(u128 x) {
    BigInt r = (u64)(x >> 64);
    r <<= 64;
    r += (u64)x;
    return r;
}

inline u128 u128_from_big(const BigInt& x) {
    // precondition: 0 <= x < 2^128
    BigInt hi = x >> 64;
    return ((u128)hi.convert_to<u64>() << 64) | (x & 0xffffffffffffffffull).convert_to<u64>();
}

// x mod m as a least nonnegative residue, exact.
inline u128 big_mod(const BigInt& x, const ModulusPower& m) {
    BigInt r = x % big_from_u128(m.modulus());
    if (r < 0) r += big_from_u128(m.modulus());
    return u128_from_big(r);
}

// Reduce an exact rational mod p^k; the denominator must be a unit.
inline u128 rational_mod(const BigRational& q, const ModulusPower& m) {
    BigInt num = numerator(q), den = denominator(q);
    if (den % m.p() == 0) throw NotAUnitError(0);
    u128 n = big_mod(num, m);
    u128 d = big_mod(den, m);
    return m.mul(n, m.inv(d));
}

inline BigInt big_binomial(u64 n, u64 r) {
    if (r > n) return 0;
    if (r > n - r) r = n - r;
    BigInt acc = 1;
    for (u64 i = 1; i <= r; ++i) {
        acc *= n - r + i;
        acc /= i;
    }
    return acc;
}

} // namespace wolst
