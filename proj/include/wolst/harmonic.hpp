#pragma once

// Power sums of inverses H_j(p,k) = Σ_{i=1}^{p-1} i^{-j} mod p^k (j <= 4) and
// elementary symmetric sums e_r of {1/1, ..., 1/(p-1)} via Newton's identities,
// with a brute-force oracle for small p. Everything runs off one chunked batch
// inversion per (p, k): ~4 Montgomery reductions per element plus j-1 for the
// inverse powers.

#include <algorithm>
#include <array>
#include <vector>

#include "wolst/check.hpp"
#include "wolst/errors.hpp"
#include "wolst/modmath.hpp"

namespace wolst {

struct HarmonicSum {
    u64 p = 0;
    int j = 0, k = 0;
    u128 value = 0; // least nonnegative residue mod p^k
};

struct ElemSym {
    u64 p = 0;
    int r = 0, k = 0;
    u128 value = 0;
};

namespace detail {

struct InvScratch {
    std::vector<u128> xm, pre;
    static InvScratch& tl() {
        thread_local InvScratch s;
        return s;
    }
};

// Test hook: when nonzero, every inversion pass perturbs the inverse of its
// first element by this amount before handing it downstream. Simulates a
// defective batch kernel so the oracle suite can prove it would notice.
inline thread_local u128 g_inv_fault = 0;

// Visit (i, inv(g(i)) in Montgomery form) for i = 1..p-1 ascending, where
// g(i) is supplied in Montgomery form. Chunked prefix products: one extended
// Euclid per chunk, three Montgomery multiplies per element.
template <class G, class F>
void for_each_inv_of(const ModulusPower& M, G&& g, F&& f) {
    const u64 p = M.p();
    constexpr std::size_t chunk = 1 << 12;
    auto& s = InvScratch::tl();
    s.xm.resize(chunk);
    s.pre.resize(chunk);
    const u128 fault = g_inv_fault; // 0 outside fault-injection runs
    for (u64 lo = 1; lo < p; lo += chunk) {
        const std::size_t n = std::min<u64>(chunk, p - lo);
        u128 acc = M.mont_one();
        for (std::size_t t = 0; t < n; ++t) {
            s.xm[t] = g(lo + t);
            s.pre[t] = acc;
            acc = M.mont_mul(acc, s.xm[t]);
        }
        u128 inv_acc = M.to_mont(M.inv(M.from_mont(acc)));
        for (std::size_t t = n; t-- > 0;) {
            u128 im = M.mont_mul(inv_acc, s.pre[t]);
            inv_acc = M.mont_mul(inv_acc, s.xm[t]);
            s.pre[t] = im;
        }
        if (fault && lo == 1) s.pre[0] = M.add(s.pre[0], M.reduce(fault));
        for (std::size_t t = 0; t < n; ++t) f(lo + t, s.pre[t]);
    }
}

template <class F>
void for_each_inv(const ModulusPower& M, F&& f) {
    for_each_inv_of(
        M, [&](u64 i) { return M.to_mont(i); }, f);
}

// H_1..H_jmax mod M in one pass; index 0 of the result is unused.
inline std::array<u128, 5> inv_power_sums(const ModulusPower& M, int jmax) {
    std::array<u128, 5> s{}; // accumulated in the Montgomery domain
    for_each_inv(M, [&](u64, u128 x) {
        s[1] = M.add(s[1], x);
        if (jmax >= 2) {
            u128 x2 = M.mont_mul(x, x);
            s[2] = M.add(s[2], x2);
            if (jmax >= 3) {
                u128 x3 = M.mont_mul(x2, x);
                s[3] = M.add(s[3], x3);
                if (jmax >= 4) s[4] = M.add(s[4], M.mont_mul(x3, x));
            }
        }
    });
    for (int j = 1; j <= jmax; ++j) s[j] = M.from_mont(s[j]);
    return s;
}

// Per-worker memo: the scan and the report builder touch H_1..H_4 of the same
// prime repeatedly at descending k, so cache all four at the largest k seen.
struct HarmonicMemo {
    u64 p = 0;
    int k = 0;
    std::array<u128, 5> sums{};
    static HarmonicMemo& tl() {
        thread_local HarmonicMemo m;
        return m;
    }
};

inline u128 harmonic_memoized(const ModulusPower& M, int j) {
    auto& memo = HarmonicMemo::tl();
    if (memo.p != M.p() || memo.k < M.k()) {
        memo.p = M.p();
        memo.k = M.k();
        memo.sums = inv_power_sums(M, 4);
    }
    return memo.sums[j] % M.modulus(); // same integer class, reduced downward
}

// Drop this thread's cached sums; required after toggling g_inv_fault, which
// would otherwise leave poisoned values behind.
inline void reset_harmonic_memo() {
    auto& memo = HarmonicMemo::tl();
    memo.p = 0;
    memo.k = 0;
}

inline void check_harmonic_domain(u64 p, int j, int k) {
    if (p < 3) throw PrimeTooSmallError(p, 3);
    if (j < 1 || j > 4)
        throw IndexNotSupportedError("harmonic power j out of range [1,4]: " +
                                     std::to_string(j));
    if (k < 1 || k > 6) throw ExponentOutOfRangeError(k);
}

} // namespace detail

inline HarmonicSum harmonic_sum(u64 p, int j, int k) {
    detail::check_harmonic_domain(p, j, k);
    auto M = make_modulus(p, k);
    return {p, j, k, detail::harmonic_memoized(M, j)};
}

// Newton's identities on top of the power sums:
//   e1 = H1, 2e2 = e1H1 - H2, 3e3 = e2H1 - e1H2 + H3, 4e4 = e3H1 - e2H2 + e1H3 - H4.
inline ElemSym elem_sym(u64 p, int r, int k) {
    if (r < 1 || r > 4)
        throw IndexNotSupportedError("elementary symmetric order r out of range [1,4]: " +
                                     std::to_string(r));
    if (p < 5) throw PrimeTooSmallError(p, 5);
    if (r == 4 && p < 7) throw PrimeTooSmallError(p, 7);
    if (k < 1 || k > 6) throw ExponentOutOfRangeError(k);
    auto M = make_modulus(p, k);
    std::array<u128, 5> h{};
    for (int j = 1; j <= r; ++j) h[j] = detail::harmonic_memoized(M, j);
    u128 e1 = h[1];
    if (r == 1) return {p, 1, k, e1};
    u128 e2 = M.mul(M.inv(2), M.sub(M.mul(e1, h[1]), h[2]));
    if (r == 2) return {p, 2, k, e2};
    u128 e3 = M.mul(M.inv(3), M.add(M.sub(M.mul(e2, h[1]), M.mul(e1, h[2])), h[3]));
    if (r == 3) return {p, 3, k, e3};
    u128 e4 = M.mul(M.inv(4), M.sub(M.add(M.sub(M.mul(e3, h[1]), M.mul(e2, h[2])),
                                          M.mul(e1, h[3])),
                                    h[4]));
    return {p, 4, k, e4};
}

// Direct nested summation over strictly increasing index tuples; the oracle
// side of the Newton route. O(p^r), so capped.
inline ElemSym elem_sym_bruteforce(u64 p, int r, int k) {
    if (p > 31) throw RangeTooLargeError("brute-force symmetric sums capped at p = 31");
    if (r < 1 || r > 4)
        throw IndexNotSupportedError("elementary symmetric order r out of range [1,4]: " +
                                     std::to_string(r));
    if (p < 5) throw PrimeTooSmallError(p, 5);
    if (k < 1 || k > 6) throw ExponentOutOfRangeError(k);
    auto M = make_modulus(p, k);
    std::vector<u128> inv(p);
    for (u64 i = 1; i < p; ++i) inv[i] = M.inv(i);
    u128 total = 0;
    for (u64 a = 1; a < p; ++a) {
        if (r == 1) {
            total = M.add(total, inv[a]);
            continue;
        }
        for (u64 b = a + 1; b < p; ++b) {
            u128 ab = M.mul(inv[a], inv[b]);
            if (r == 2) {
                total = M.add(total, ab);
                continue;
            }
            for (u64 c = b + 1; c < p; ++c) {
                u128 abc = M.mul(ab, inv[c]);
                if (r == 3) {
                    total = M.add(total, abc);
                    continue;
                }
                for (u64 d = c + 1; d < p; ++d)
                    total = M.add(total, M.mul(abc, inv[d]));
            }
        }
    }
    return {p, r, k, total};
}

namespace detail {

// T = Σ_{i=1}^{p-1} 1/((p-i)·i^3) evaluated from literal residues mod p.
inline u128 telescoped_T_mod_p(const ModulusPower& M1) {
    const u64 p = M1.p();
    u128 t = 0; // Montgomery domain
    for_each_inv_of(
        M1,
        [&](u64 i) {
            u128 xm = M1.to_mont(i);
            u128 x3 = M1.mont_mul(M1.mont_mul(xm, xm), xm);
            return M1.mont_mul(M1.to_mont(p - i), x3);
        },
        [&](u64, u128 im) { t = M1.add(t, im); });
    return M1.from_mont(t);
}

// rhs of the chain, split out so tests can feed corrupted inputs.
inline u128 telescoped_rhs(const ModulusPower& M4, u128 h2, u128 h3, u128 t) {
    const u64 p = M4.p();
    u128 r = M4.neg(M4.mul(p, h2));
    r = M4.sub(r, M4.mul((u128)p * p, h3));
    return M4.add(r, M4.mul((u128)p * p * p, t));
}

} // namespace detail

// The (b) <=> (c) proof chain: 2H_1 = -pH_2 - p^2 H_3 + p^3 T exactly, checked
// mod p^4, with T from literal residues.
inline CheckOutcome telescoped_chain(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    auto M4 = make_modulus(p, 4);
    auto M1 = make_modulus_trusted(p, 1);
    u128 h1 = detail::harmonic_memoized(M4, 1);
    u128 h2 = detail::harmonic_memoized(M4, 2);
    u128 h3 = detail::harmonic_memoized(M4, 3);
    u128 t = detail::telescoped_T_mod_p(M1);
    return make_check("telescoped-chain-p4", p, 4, M4.add(h1, h1),
                      detail::telescoped_rhs(M4, h2, h3, t));
}

// Companion congruence from the same derivation: T ≡ -H_4 (mod p).
inline CheckOutcome telescoped_tail(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    auto M1 = make_modulus(p, 1);
    u128 t = detail::telescoped_T_mod_p(M1);
    u128 h4 = detail::harmonic_memoized(M1, 4);
    return make_check("telescoped-tail-p1", p, 1, t, M1.neg(h4));
}

// Index-doubling vanishing: doubling all indices permutes the unit residues,
// which forces 6e_3 ≡ 0 (mod p^2) and e_4 ≡ 0 (mod p) for p ≥ 7.
inline CheckOutcome check_sym_6e3(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    auto M2 = make_modulus(p, 2);
    return make_check("sym-6e3-p2", p, 2, M2.mul(6, elem_sym(p, 3, 2).value), 0);
}

inline CheckOutcome check_sym_e4(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    return make_check("sym-e4-p1", p, 1, elem_sym(p, 4, 1).value, 0);
}

} // namespace wolst
