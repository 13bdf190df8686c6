#pragma once

// Executable forms of the theorem-level statements: the classical mod-p^3
// congruences, the Leudesdorf lemma (the j <= 4 slice), Theorems 1 and 2 as
// boolean-equivalence checks, the closing Bernoulli identity, and the
// Helou-Terjanian congruences. build_report aggregates everything into a
// per-prime dossier; its shallow path powers range scans.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wolst/bernoulli.hpp"
#include "wolst/binomial.hpp"
#include "wolst/check.hpp"
#include "wolst/harmonic.hpp"

namespace wolst {

struct TheoremConditions {
    bool a = false, b = false, c = false, d = false;
    bool consistent = false;
};

namespace detail {

inline bool all_equal(bool a, bool b, bool c, bool d) {
    return a == b && b == c && c == d;
}

} // namespace detail

// C ≡ 1 (mod p^3), H_1 ≡ 0 (mod p^2), H_2 ≡ 0 (mod p); every prime p >= 5.
inline std::vector<CheckOutcome> check_classical(u64 p) {
    if (p < 5) throw PrimeTooSmallError(p, 5);
    std::vector<CheckOutcome> out;
    out.push_back(make_check("classical-binom-p3", p, 3, binom_upward(p, 3).value, 1));
    out.push_back(make_check("classical-h1-p2", p, 2, harmonic_sum(p, 1, 2).value, 0));
    out.push_back(make_check("classical-h2-p1", p, 1, harmonic_sum(p, 2, 1).value, 0));
    return out;
}

// H_{2k-1} ≡ 0 (mod p^2) and H_{2k} ≡ 0 (mod p) for 2k < p-1; with power
// sums capped at j = 4 that means 2k ∈ {2, 4}, both admissible once p >= 7.
inline std::vector<CheckOutcome> check_leudesdorf(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    std::vector<CheckOutcome> out;
    out.push_back(make_check("leudesdorf-h1-p2", p, 2, harmonic_sum(p, 1, 2).value, 0));
    out.push_back(make_check("leudesdorf-h2-p1", p, 1, harmonic_sum(p, 2, 1).value, 0));
    out.push_back(make_check("leudesdorf-h3-p2", p, 2, harmonic_sum(p, 3, 2).value, 0));
    out.push_back(make_check("leudesdorf-h4-p1", p, 1, harmonic_sum(p, 4, 1).value, 0));
    return out;
}

// The four equivalent Wolstenholme-prime conditions:
// (a) C ≡ 1 mod p^4, (b) H_1 ≡ 0 mod p^3, (c) H_2 ≡ 0 mod p^2, (d) p | B_{p-3}.
inline TheoremConditions theorem1_conditions(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    TheoremConditions t;
    t.a = binom_upward(p, 4).value == 1;
    t.b = harmonic_sum(p, 1, 3).value == 0;
    t.c = harmonic_sum(p, 2, 2).value == 0;
    t.d = bern_mod_via_sum(p - 3, p, 1).value == 0;
    t.consistent = detail::all_equal(t.a, t.b, t.c, t.d);
    return t;
}

// One level up: (a) mod p^5, (b) mod p^4, (c) mod p^3, (d) p^2 | B_M with
// M = p^3 - p^2 - 2.
inline TheoremConditions theorem2_conditions(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    TheoremConditions t;
    t.a = binom_upward(p, 5).value == 1;
    t.b = harmonic_sum(p, 1, 4).value == 0;
    t.c = harmonic_sum(p, 2, 3).value == 0;
    t.d = bern_mod_via_sum(bern_big_index(p), p, 2).value == 0;
    t.consistent = detail::all_equal(t.a, t.b, t.c, t.d);
    return t;
}

namespace detail {

inline u128 final_identity_rhs(const ModulusPower& M5, u128 bern_big) {
    const u128 p = M5.p();
    return M5.sub(1, M5.mul(M5.reduce(p * p * p), M5.reduce(bern_big)));
}

// rhs of the three Helou-Terjanian congruences. bM is B_M mod p^3; b3, b5
// are B_{p-3}, B_{p-5} mod p — enough precision since they multiply p^5/p^4/p^3.
inline u128 ht_binom_rhs(const ModulusPower& M6, u128 bM, u128 b3, u128 b5) {
    const u128 p = M6.p();
    const u128 p5 = M6.reduce(p * p * p * p * p);
    u128 r = M6.sub(1, M6.mul(M6.reduce(p * p * p), bM));
    r = M6.add(r, M6.mul(M6.mul(M6.inv(3), p5), b3));
    return M6.sub(r, M6.mul(M6.mul(M6.mul(6, M6.inv(5)), p5), b5));
}

inline u128 ht_h1_rhs(const ModulusPower& M5, u128 bM, u128 b3, u128 b5) {
    const u128 p = M5.p();
    const u128 p4 = M5.reduce(p * p * p * p);
    u128 r = M5.neg(M5.mul(M5.mul(M5.inv(2), M5.reduce(p * p)), bM));
    r = M5.add(r, M5.mul(M5.mul(M5.inv(6), p4), b3));
    return M5.sub(r, M5.mul(M5.mul(M5.inv(5), p4), b5));
}

inline u128 ht_h2_rhs(const ModulusPower& M4, u128 bM, u128 b3, u128 b5) {
    const u128 p = M4.p();
    const u128 p3 = M4.reduce(p * p * p);
    u128 r = M4.mul(M4.reduce(p), M4.reduce(bM));
    r = M4.sub(r, M4.mul(M4.mul(M4.inv(3), p3), b3));
    return M4.add(r, M4.mul(M4.mul(M4.mul(4, M4.inv(5)), p3), b5));
}

} // namespace detail

// C ≡ 1 - p^3·B_M (mod p^5); B_M enters mod p^2, which p^3 soaks up.
inline CheckOutcome check_final_identity(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 7);
    auto M5 = make_modulus(p, 5);
    u128 bb = bern_mod_via_sum(bern_big_index(p), p, 2).value;
    return make_check("final-identity-p5", p, 5, binom_upward(p, 5).value,
                      detail::final_identity_rhs(M5, bb));
}

// The closing mod-p^6 display:
//   C   ≡ 1 - p^3 B_M + (1/3) p^5 B_{p-3} - (6/5) p^5 B_{p-5}  (mod p^6)
//   H_1 ≡ -(p^2/2) B_M + (p^4/6) B_{p-3} - (p^4/5) B_{p-5}     (mod p^5)
//   H_2 ≡ p B_M - (p^3/3) B_{p-3} + (4/5) p^3 B_{p-5}          (mod p^4)
// B_M is needed mod p^3 in all three, hence the corrected extraction.
inline std::vector<CheckOutcome> check_helou_terjanian(u64 p) {
    if (p < 7) throw PrimeTooSmallError(p, 11);
    if (p == 7)
        throw IndexNotSupportedError("Helou-Terjanian congruences need B_{p-5}; p >= 11");
    auto M6 = make_modulus(p, 6);
    auto M5 = make_modulus_trusted(p, 5);
    auto M4 = make_modulus_trusted(p, 4);
    u128 bM = bern_big_p3(p).value;
    u128 b3 = bern_mod_via_sum(p - 3, p, 1).value;
    u128 b5 = bern_mod_via_sum(p - 5, p, 1).value;
    std::vector<CheckOutcome> out;
    out.push_back(make_check("ht-binom-p6", p, 6, binom_upward(p, 6).value,
                             detail::ht_binom_rhs(M6, bM, b3, b5)));
    out.push_back(make_check("ht-h1-p5", p, 5, harmonic_sum(p, 1, 5).value,
                             detail::ht_h1_rhs(M5, bM, b3, b5)));
    out.push_back(make_check("ht-h2-p4", p, 4, harmonic_sum(p, 2, 4).value,
                             detail::ht_h2_rhs(M4, bM, b3, b5)));
    return out;
}

struct PrimeReport {
    u64 p = 0;
    Valuation level_a; // of C(2p-1,p-1) - 1, measured at k = ka
    Valuation level_b; // of H_1, at k = kb
    Valuation level_c; // of H_2, at k = kc
    int ka = 0, kb = 0, kc = 0;
    u64 bern_p3 = 0;                     // B_{p-3} mod p
    std::optional<u64> bern_p5;          // B_{p-5} mod p; absent at p = 7
    std::optional<u64> bern_big;         // B_M mod p^2; absent on shallow reports
    bool is_wolstenholme = false;        // level_a.v >= 4
    bool thm1_consistent = false;
    std::optional<bool> thm2_consistent; // absent on shallow reports
    bool deep = false;
    int checks_run = 0;                      // identity checks executed (deep only)
    std::vector<std::string> check_failures; // names of failed checks
};

namespace detail {

struct ShallowStats {
    Valuation level_a, level_b, level_c;
};

// One inversion pass mod p^3 powers the whole fast path: H_1..H_3 give e_2
// and e_3 by Newton, and the truncated expansion
//   C(2p-1, p-1) ≡ 1 + p e_1 + p^2 e_2 + p^3 e_3  (mod p^4)
// is exact, so v(C - 1) at k = 4 falls out without forming any product.
inline ShallowStats shallow_stats(u64 p) {
    auto M3 = make_modulus_trusted(p, 3);
    u128 s1 = 0, s2 = 0, s3 = 0; // Montgomery domain
    for_each_inv(M3, [&](u64, u128 x) {
        s1 = M3.add(s1, x);
        u128 x2 = M3.mont_mul(x, x);
        s2 = M3.add(s2, x2);
        s3 = M3.add(s3, M3.mont_mul(x2, x));
    });
    u128 h1 = M3.from_mont(s1), h2 = M3.from_mont(s2), h3 = M3.from_mont(s3);
    u128 e2 = M3.mul(M3.inv(2), M3.sub(M3.mul(h1, h1), h2));
    u128 e3 = M3.mul(M3.inv(3),
                     M3.add(M3.sub(M3.mul(e2, h1), M3.mul(h1, h2)), h3));
    u128 x = M3.add(h1, M3.add(M3.mul(M3.reduce(p), e2),
                               M3.mul(M3.reduce((u128)p * p), e3)));
    ShallowStats s;
    if (x == 0)
        s.level_a = {4, true};
    else
        s.level_a = {1 + M3.valuation(x).v, false};
    s.level_b = M3.valuation(h1);
    auto M2 = make_modulus_trusted(p, 2);
    s.level_c = M2.valuation(h2 % M2.modulus());
    return s;
}

} // namespace detail

// Per-prime dossier. Fast path: valuations at k = 4/3/2 plus B_{p-3} and
// B_{p-5}. Any true Theorem-1 condition (or deep=true) escalates: levels are
// re-measured at k = 6/5/4 (clamped to the width limit above 2^21), Theorem 2
// is evaluated, and the full identity battery runs.
inline PrimeReport build_report(u64 p, bool deep) {
    if (!is_prime(p)) throw NotPrimeError(p);
    if (p < 7) throw PrimeTooSmallError(p, 7);
    PrimeReport r;
    r.p = p;
    auto sh = detail::shallow_stats(p);
    r.level_a = sh.level_a; r.ka = 4;
    r.level_b = sh.level_b; r.kb = 3;
    r.level_c = sh.level_c; r.kc = 2;
    r.bern_p3 = (u64)bern_mod_via_sum(p - 3, p, 1).value;
    if (p >= 11) r.bern_p5 = (u64)bern_mod_via_sum(p - 5, p, 1).value;
    bool a = r.level_a.saturated; // C ≡ 1 (mod p^4)
    bool b = r.level_b.saturated; // H_1 ≡ 0 (mod p^3)
    bool c = r.level_c.saturated; // H_2 ≡ 0 (mod p^2)
    bool d = r.bern_p3 == 0;      // p | B_{p-3}
    r.thm1_consistent = detail::all_equal(a, b, c, d);
    r.is_wolstenholme = a;
    if (!(deep || a || b || c || d)) return r;

    r.deep = true;
    int wk = max_exponent(p);
    r.ka = std::min(6, wk);
    r.kb = std::min(5, wk - 1);
    r.kc = std::min(4, wk - 2);
    r.level_a = binom_upward(p, r.ka).wolstenholme_level;
    auto Mb = make_modulus_trusted(p, r.kb);
    auto Mc = make_modulus_trusted(p, r.kc);
    r.level_b = Mb.valuation(harmonic_sum(p, 1, r.kb).value);
    r.level_c = Mc.valuation(harmonic_sum(p, 2, r.kc).value);
    r.is_wolstenholme = r.level_a.v >= 4;
    r.thm1_consistent = detail::all_equal(r.level_a.v >= 4, r.level_b.v >= 3,
                                          r.level_c.v >= 2, r.bern_p3 == 0);
    u64 bb = (u64)bern_mod_via_sum(bern_big_index(p), p, 2).value;
    r.bern_big = bb;
    r.thm2_consistent = detail::all_equal(r.level_a.v >= 5, r.level_b.v >= 4,
                                          r.level_c.v >= 3, bb == 0);

    auto run = [&](const CheckOutcome& o) {
        ++r.checks_run;
        if (!o.passed) r.check_failures.push_back(o.name);
    };
    for (const auto& o : check_classical(p)) run(o);
    for (const auto& o : check_leudesdorf(p)) run(o);
    run(proof_step_combination(p));
    run(check_sym_6e3(p));
    run(check_sym_e4(p));
    run(telescoped_chain(p));
    run(telescoped_tail(p));
    run(check_eq_e4(p));
    run(check_final_identity(p));
    if (p >= 11 && r.ka >= 6)
        for (const auto& o : check_helou_terjanian(p)) run(o);
    return r;
}

} // namespace wolst
