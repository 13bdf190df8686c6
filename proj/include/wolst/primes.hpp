#pragma once

// Prime enumeration for scan ranges. Domain is capped at 2^21: large enough
// for every prime whose p^6 fits the 126-bit modulus width, and the scan's
// contract stops there anyway.

#include <array>
#include <cstdint>
#include <vector>

#include "wolst/errors.hpp"
#include "wolst/modmath.hpp"

namespace wolst {

struct PrimeRange {
    u64 lo = 2, hi = 2; // [lo, hi)
};

namespace detail {

// Base primes up to sqrt(2^21) < 1449, by plain sieve, computed once.
inline const std::vector<u32>& base_primes() {
    static const std::vector<u32> table = [] {
        constexpr u32 n = 1449;
        std::array<bool, n + 1> comp{};
        std::vector<u32> ps;
        for (u32 i = 2; i <= n; ++i) {
            if (comp[i]) continue;
            ps.push_back(i);
            for (u32 j = i * i; j <= n; j += i) comp[j] = true;
        }
        return ps;
    }();
    return table;
}

} // namespace detail

// Exactly the primes in [lo, hi), ascending. Segmented sieve, 2^16 odd-only
// segments.
inline std::vector<u64> primes_in(PrimeRange r) {
    constexpr u64 cap = 1ull << 21;
    if (r.lo < 2 || r.lo >= r.hi)
        throw RangeTooLargeError("invalid range [" + std::to_string(r.lo) + ", " +
                                 std::to_string(r.hi) + ")");
    if (r.hi > cap)
        throw RangeTooLargeError("range end " + std::to_string(r.hi) +
                                 " beyond 2^21");

    std::vector<u64> out;
    if (r.lo <= 2 && 2 < r.hi) out.push_back(2);

    constexpr u64 seg_odds = 1ull << 16; // odd numbers per segment
    std::vector<bool> comp(seg_odds);
    u64 lo = r.lo | 1; // first odd candidate
    if (lo < 3) lo = 3;
    for (u64 base = lo; base < r.hi; base += 2 * seg_odds) {
        u64 end = base + 2 * seg_odds; // exclusive, odd grid [base, end)
        if (end > r.hi) end = r.hi;
        std::fill(comp.begin(), comp.end(), false);
        for (u32 q : detail::base_primes()) {
            if (q == 2) continue;
            u64 q2 = (u64)q * q;
            if (q2 >= end) break;
            u64 start = q2 > base ? q2 : ((base + q - 1) / q) * q;
            if ((start & 1) == 0) start += q; // odd multiples only
            for (u64 m = start; m < end; m += 2 * q) comp[(m - base) >> 1] = true;
        }
        for (u64 n = base; n < end; n += 2)
            if (!comp[(n - base) >> 1]) out.push_back(n);
    }
    return out;
}

} // namespace wolst
