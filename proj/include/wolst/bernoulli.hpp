#pragma once

// Bernoulli numbers two ways: exact rationals by the defining recurrence
// (the oracle side), and residues mod p^j extracted from power sums
// S_m(p) = Σ i^m via  S_m(p) = Σ_{i>=1} (1/i) C(m, i-1) p^i B_{m+1-i}.
//
// Sign convention: B_1 = -1/2. The power-sum identity at m = 1 reads
// S_1(5) = 10 = 5·B_1 + 25/2, which forces the minus sign; the +1/2
// convention silently breaks every extraction below.

#include <algorithm>
#include <optional>
#include <vector>

#include "wolst/bigint.hpp"
#include "wolst/errors.hpp"
#include "wolst/modmath.hpp"

namespace wolst {

struct BernoulliResidue {
    u64 m = 0;  // Bernoulli index
    u64 p = 0;
    int j = 0;  // value is B_m mod p^j
    u128 value = 0;
};

// Exact B_n by the recurrence Σ_{j=0}^{n} C(n+1, j) B_j = 0, B_0 = 1.
// Cached; the whole table to 400 is built on first use.
inline const BigRational& bern_exact(int n) {
    if (n < 0 || n > 400)
        throw RangeTooLargeError("exact Bernoulli numbers capped at n = 400");
    static const std::vector<BigRational> table = [] {
        std::vector<BigRational> b(401);
        b[0] = 1;
        for (int m = 1; m <= 400; ++m) {
            if (m >= 3 && m % 2 == 1) continue; // B_odd = 0 from 3 on
            BigRational acc = 0;
            for (int i = 0; i < m; ++i) {
                if (i >= 3 && i % 2 == 1) continue;
                acc += BigRational(big_binomial(m + 1, i)) * b[i];
            }
            b[m] = -acc / (m + 1); // C(m+1, m) = m+1
        }
        return b;
    }();
    return table[n];
}

namespace detail {

// Smallest-prime-factor sieve, grown on demand (doubling), per thread.
inline const std::vector<u32>& spf_sieve(u64 n) {
    thread_local std::vector<u32> spf;
    if (spf.size() < n) {
        u64 cap = std::max<u64>(n, spf.size() * 2);
        spf.assign(cap, 0);
        for (u64 i = 2; i < cap; ++i)
            if (spf[i] == 0)
                for (u64 j = i; j < cap; j += i)
                    if (spf[j] == 0) spf[j] = (u32)i;
    }
    return spf;
}

inline u128 mont_pow(const ModulusPower& M, u128 base_mont, u64 e) {
    u128 r = M.mont_one(), b = base_mont;
    while (e) {
        if (e & 1) r = M.mont_mul(r, b);
        b = M.mont_mul(b, b);
        e >>= 1;
    }
    return r;
}

} // namespace detail

// S_m(p) = Σ_{i=1}^{p-1} i^m mod p^k. The exponent is reduced mod φ(p^k)
// first (every base is a unit), then each prime base is powered once; a
// composite base costs a single multiply via its smallest prime factor.
inline u128 power_sum_mod(u64 m, u64 p, int k) {
    if (m < 1) throw IndexNotSupportedError("power sum needs exponent m >= 1");
    if (k < 1 || k > 4) throw ExponentOutOfRangeError(k);
    auto M = make_modulus(p, k);
    u128 phi = M.modulus() - M.modulus() / p;
    u64 e = (u128)m < phi ? m : (u64)((u128)m % phi);
    if (e == 0) return M.reduce(p - 1); // every unit term is 1
    const auto& spf = detail::spf_sieve(p);
    thread_local std::vector<u128> pw;
    if (pw.size() < p) pw.resize(std::max<u64>(p, pw.size() * 2));
    pw[1] = M.mont_one();
    u128 sum = pw[1];
    for (u64 i = 2; i < p; ++i) {
        pw[i] = (spf[i] == i) ? detail::mont_pow(M, M.to_mont(i), e)
                              : M.mont_mul(pw[spf[i]], pw[i / spf[i]]);
        sum = M.add(sum, pw[i]);
    }
    return M.from_mont(sum);
}

namespace detail {

inline void require_extractable(u64 m, u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    if (m % 2 != 0)
        throw IndexNotSupportedError("odd Bernoulli index m = " + std::to_string(m));
    if (m % (p - 1) == 0)
        throw DivisibilityViolationError(
            "(p-1) | m: B_" + std::to_string(m) + " is not p-integral at p = " +
            std::to_string(p) + " (von Staudt-Clausen)");
}

} // namespace detail

// The exponent the big Bernoulli index comes from: φ(p^3) - 2 = p^3 - p^2 - 2.
inline u64 bern_big_index(u64 p) { return p * p * p - p * p - 2; }

// B_m mod p^j from S_m(p) ≡ p·B_m (mod p^{j+1}), the i >= 2 terms of the
// power-sum expansion vanishing to that precision. Valid for j = 1 at any
// even m with (p-1) ∤ m (the i = 2 term carries B_{m-1} = 0 for m >= 4 and
// only a p^2/2 for m = 2, harmless mod p after the division). For j = 2 the
// same argument needs m >= 4 and is only asserted for the indices the
// theorems consume: p-3, p-5, p^3-p^2-2.
inline BernoulliResidue bern_mod_via_sum(u64 m, u64 p, int j) {
    detail::require_extractable(m, p);
    if (j != 1 && j != 2)
        throw IndexNotSupportedError("Bernoulli residue exponent j must be 1 or 2");
    if (j == 2 && (m < 4 || (m != p - 3 && m != p - 5 && m != bern_big_index(p))))
        throw IndexNotSupportedError(
            "mod p^2 extraction validated only for m in {p-3, p-5, p^3-p^2-2}");
    u128 s = power_sum_mod(m, p, j + 1);
    if (s % p != 0)
        throw DivisibilityViolationError("p does not divide S_" + std::to_string(m) +
                                         "(" + std::to_string(p) + ")");
    auto Mj = make_modulus_trusted(p, j);
    return {m, p, j, Mj.reduce(s / p)};
}

// B_M mod p^3 for M = p^3 - p^2 - 2, the precision the Helou-Terjanian
// congruences need. One more term of the expansion survives at this depth:
//   S_M(p) ≡ p·B_M + (1/3) C(M,2) p^3 B_{M-2}   (mod p^4),
// because B_{M-2} is p-integral and nonzero ((p-1) ∤ M-2 since M-2 ≡ -4).
// Subtract it before dividing by p; C(M,2) ≡ 3 (mod p), so the correction
// is p^3·B_{M-2} up to the multiple of p^4 we do not care about.
inline BernoulliResidue bern_big_p3(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    const u64 M = bern_big_index(p);
    u128 s = power_sum_mod(M, p, 4);
    auto M4 = make_modulus_trusted(p, 4);
    auto M1 = make_modulus_trusted(p, 1);
    u128 b_prev = bern_mod_via_sum(M - 2, p, 1).value;
    u128 c2 = M1.mul(M1.reduce((u128)(M % p)), M1.reduce((u128)((M - 1) % p)));
    c2 = M1.mul(c2, M1.inv(2));
    u128 corr = M1.mul(M1.inv(3), M1.mul(c2, b_prev)); // (1/3) C(M,2) B_{M-2} mod p
    u128 num = M4.sub(s, M4.mul(M4.reduce((u128)p * p * p), corr));
    if (num % p != 0)
        throw DivisibilityViolationError("p does not divide the corrected S_M at p = " +
                                         std::to_string(p));
    return {M, p, 3, (num / p) % ((u128)p * p * p)};
}

// The Bernoulli residues the theorems consume. B_{p-5} needs p >= 11
// (at p = 7 the index degenerates to 2 and the closing congruences that
// use it do not apply), so that slot is optional.
struct TheoremInputs {
    u64 p = 0;
    u64 bern_p3 = 0;                 // B_{p-3} mod p
    std::optional<u64> bern_p5;      // B_{p-5} mod p, absent for p = 7
    u64 bern_big = 0;                // B_{p^3-p^2-2} mod p^2
};

inline TheoremInputs theorem_inputs(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    TheoremInputs t;
    t.p = p;
    t.bern_p3 = (u64)bern_mod_via_sum(p - 3, p, 1).value;
    if (p >= 11) t.bern_p5 = (u64)bern_mod_via_sum(p - 5, p, 1).value;
    t.bern_big = (u64)bern_mod_via_sum(bern_big_index(p), p, 2).value;
    return t;
}

} // namespace wolst
