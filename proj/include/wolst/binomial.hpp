#pragma once

// The central binomial coefficient C(2p-1, p-1) mod p^k via both product
// expansions — upward over (p+i)/i = 1 + p/i and downward over
// (2p-i)/i = -(1 - 2p/i) — plus an exact big-integer oracle and the
// proof-step checks built on top.

#include "wolst/bigint.hpp"
#include "wolst/check.hpp"
#include "wolst/errors.hpp"
#include "wolst/harmonic.hpp"
#include "wolst/modmath.hpp"

namespace wolst {

struct CentralBinomial {
    u64 p = 0;
    int k = 0;
    u128 value = 0;               // C(2p-1, p-1) mod p^k
    Valuation wolstenholme_level; // v_{p,k}(value - 1); >= 3 for every p >= 5
};

namespace detail {

// Π_{i=1}^{p-1} (1 + c·inv(i)) mod p^k, accumulated left-to-right in index
// order, one chunked inversion pass.
inline u128 unit_linear_product(const ModulusPower& M, u128 c) {
    const u128 cm = M.to_mont(M.reduce(c));
    const u128 one = M.mont_one();
    u128 acc = one;
    for_each_inv(M, [&](u64, u128 im) {
        acc = M.mont_mul(acc, M.add(one, M.mont_mul(cm, im)));
    });
    return M.from_mont(acc);
}

} // namespace detail

inline CentralBinomial binom_upward(u64 p, int k) {
    if (p < 3) throw PrimeTooSmallError(p, 3);
    auto M = make_modulus(p, k);
    u128 v = detail::unit_linear_product(M, p);
    return {p, k, v, M.valuation(M.sub(v, 1))};
}

inline CentralBinomial binom_downward(u64 p, int k) {
    if (p < 3) throw PrimeTooSmallError(p, 3);
    auto M = make_modulus(p, k);
    u128 prod = detail::unit_linear_product(M, M.neg(M.reduce((u128)2 * p)));
    // (-1)^{p-1} kept as written in the identity, not folded by hand
    u128 v = M.mul(M.pow(M.neg(1), p - 1), prod);
    return {p, k, v, M.valuation(M.sub(v, 1))};
}

// Exact big-integer oracle, factorial scale, small p only.
inline u128 binom_exact_mod(u64 p, int k) {
    if (p > 2000) throw RangeTooLargeError("exact central binomial capped at p = 2000");
    auto M = make_modulus(p, k);
    return big_mod(big_binomial(2 * p - 1, p - 1), M);
}

namespace detail {

// rhs of the eliminate-p combination, split out for mutation tests.
inline u128 combination_rhs(const ModulusPower& M5, u128 e2, u128 e3, u128 e4) {
    const u128 p = M5.p();
    u128 r = M5.add(1, M5.mul(M5.reduce(2 * p * p), e2));
    r = M5.sub(r, M5.mul(M5.reduce(2 * p * p * p), e3));
    return M5.add(r, M5.mul(M5.reduce(6 * p * p * p * p), e4));
}

} // namespace detail

// Combining 2·(upward) + (downward) eliminates the p·e_1 term; after dividing
// by 3: C(2p-1, p-1) ≡ 1 + 2p^2 e_2 - 2p^3 e_3 + 6p^4 e_4 (mod p^5).
inline CheckOutcome proof_step_combination(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    auto c = binom_upward(p, 5);
    u128 e2 = elem_sym(p, 2, 5).value;
    u128 e3 = elem_sym(p, 3, 5).value;
    u128 e4 = elem_sym(p, 4, 5).value;
    auto M5 = make_modulus_trusted(p, 5);
    return make_check("proof-combination-p5", p, 5, c.value,
                      detail::combination_rhs(M5, e2, e3, e4));
}

// After the vanishing arguments only the H_2 term survives:
// C(2p-1, p-1) ≡ 1 - p^2 H_2 (mod p^5). Needs p >= 7 (fails at p = 5).
inline CheckOutcome check_eq_e4(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    auto c = binom_upward(p, 5);
    auto M5 = make_modulus_trusted(p, 5);
    u128 h2 = harmonic_sum(p, 2, 3).value;
    u128 rhs = M5.sub(1, M5.mul(M5.reduce((u128)p * p), h2));
    return make_check("eq-e4", p, 5, c.value, rhs);
}

} // namespace wolst
