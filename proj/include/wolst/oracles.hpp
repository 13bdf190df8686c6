#pragma once

// Dual-route verification families. Every family pits the fast modular route
// against an independent exact route (big integers, exact rationals, or brute
// force) over a sweep of small inputs. A deliberate fault can be injected
// into the batched-inversion kernel to demonstrate the families have teeth.

#include <string>
#include <vector>

#include "wolst/bernoulli.hpp"
#include "wolst/bigint.hpp"
#include "wolst/binomial.hpp"
#include "wolst/harmonic.hpp"
#include "wolst/primes.hpp"

namespace wolst {

struct OracleOptions {
    u64 max_p = 500;          // prime ceiling for the binomial sweep
    bool inject_fault = false; // perturb the first inverse of every batch pass
};

struct OracleFamilyResult {
    std::string name;
    u64 cases = 0;
    u64 mismatches = 0;
    std::string first_mismatch; // empty when clean
};

namespace detail {

struct FamilyRecorder {
    OracleFamilyResult out;
    explicit FamilyRecorder(const char* name) { out.name = name; }
    void expect(bool ok, const std::string& label) {
        ++out.cases;
        if (ok) return;
        ++out.mismatches;
        if (out.first_mismatch.empty()) out.first_mismatch = label;
    }
};

// Toggles the inversion fault for the duration of a run, and drops the
// harmonic memo on both edges so no poisoned sums leak in either direction.
struct FaultGuard {
    explicit FaultGuard(bool on) {
        g_inv_fault = on ? 1 : 0;
        reset_harmonic_memo();
    }
    ~FaultGuard() {
        g_inv_fault = 0;
        reset_harmonic_memo();
    }
};

// Both product expansions against the exact binomial coefficient.
inline OracleFamilyResult oracle_binomial_products(u64 max_p) {
    FamilyRecorder rec("binomial-products");
    for (u64 p : primes_in({3, max_p + 1})) {
        const BigInt exact = big_binomial(2 * p - 1, p - 1);
        const int kmax = max_exponent(p);
        for (int k = 1; k <= kmax; ++k) {
            auto M = make_modulus_trusted(p, k);
            const u128 want = big_mod(exact, M);
            const std::string at = "p=" + std::to_string(p) + " k=" + std::to_string(k);
            rec.expect(binom_upward(p, k).value == want, at + " upward");
            rec.expect(binom_downward(p, k).value == want, at + " downward");
        }
    }
    return rec.out;
}

// Newton-identity symmetric functions against direct tuple summation.
inline OracleFamilyResult oracle_newton_symmetric(u64 max_p) {
    FamilyRecorder rec("newton-symmetric");
    for (u64 p : primes_in({5, std::min<u64>(max_p, 31) + 1})) {
        for (int r = 1; r <= (p < 7 ? 3 : 4); ++r) {
            for (int k = 1; k <= 3; ++k) {
                const std::string at = "p=" + std::to_string(p) +
                                       " r=" + std::to_string(r) +
                                       " k=" + std::to_string(k);
                rec.expect(elem_sym(p, r, k).value == elem_sym_bruteforce(p, r, k).value, at);
            }
        }
    }
    return rec.out;
}

// Power-sum extraction against exact Bernoulli rationals reduced mod p^j.
inline OracleFamilyResult oracle_bernoulli_residues() {
    FamilyRecorder rec("bernoulli-residues");
    for (u64 p : {7ull, 11ull, 13ull, 31ull}) {
        auto M1 = make_modulus_trusted(p, 1);
        for (u64 m = 2; m <= 60; m += 2) {
            if (m % (p - 1) == 0) continue; // blocked by von Staudt-Clausen
            const std::string at = "m=" + std::to_string(m) + " p=" + std::to_string(p);
            rec.expect(bern_mod_via_sum(m, p, 1).value == rational_mod(bern_exact((int)m), M1),
                       at + " j=1");
        }
    }
    for (u64 p : {11ull, 13ull, 31ull}) {
        auto M2 = make_modulus_trusted(p, 2);
        for (u64 m : {p - 3, p - 5}) {
            const std::string at = "m=" + std::to_string(m) + " p=" + std::to_string(p);
            rec.expect(bern_mod_via_sum(m, p, 2).value == rational_mod(bern_exact((int)m), M2),
                       at + " j=2");
        }
    }
    // The big index M = p^3 - p^2 - 2 is only table-sized at p = 7 (M = 292);
    // that one prime ties the j = 2 route and the mod-p^3 extraction to the
    // exact rational B_292.
    {
        auto M2 = make_modulus_trusted(7, 2);
        auto M3 = make_modulus_trusted(7, 3);
        rec.expect(bern_mod_via_sum(292, 7, 2).value == rational_mod(bern_exact(292), M2),
                   "m=292 p=7 j=2");
        rec.expect(bern_big_p3(7).value == rational_mod(bern_exact(292), M3),
                   "m=292 p=7 j=3");
    }
    return rec.out;
}

// Σ i^m two ways: the spf-sieve modular kernel against an exact big-integer
// sum, and that sum against the closed Bernoulli form
//   S_m(p) = (1/(m+1)) Σ_j C(m+1, j) B_j p^{m+1-j},
// exercised as an exact rational identity (this is what pins B_1 = -1/2).
inline OracleFamilyResult oracle_powersum_rational() {
    FamilyRecorder rec("powersum-rational");
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        for (u64 m = 1; m <= 20; ++m) {
            BigInt s = 0;
            for (u64 i = 1; i < p; ++i) s += boost::multiprecision::pow(BigInt(i), (unsigned)m);
            const std::string at = "p=" + std::to_string(p) + " m=" + std::to_string(m);

            BigRational rhs = 0;
            for (u64 j = 0; j <= m; ++j) {
                BigRational term = bern_exact((int)j);
                if (term == 0 && j > 1) continue;
                term *= BigRational(big_binomial(m + 1, j));
                term *= BigRational(boost::multiprecision::pow(BigInt(p), (unsigned)(m + 1 - j)));
                rhs += term;
            }
            rhs /= (int)(m + 1);
            rec.expect(BigRational(s) == rhs, at + " closed-form");

            for (int k = 1; k <= 4; ++k) {
                auto M = make_modulus_trusted(p, k);
                rec.expect(power_sum_mod(m, p, k) == big_mod(s, M),
                           at + " k=" + std::to_string(k));
            }
        }
    }
    return rec.out;
}

} // namespace detail

inline std::vector<OracleFamilyResult> run_oracles(const OracleOptions& opts) {
    if (opts.max_p < 13 || opts.max_p > 2000)
        throw RangeTooLargeError("oracle prime ceiling must lie in [13, 2000]");
    detail::FaultGuard guard(opts.inject_fault);
    std::vector<OracleFamilyResult> out;
    out.push_back(detail::oracle_binomial_products(opts.max_p));
    out.push_back(detail::oracle_newton_symmetric(opts.max_p));
    out.push_back(detail::oracle_bernoulli_residues());
    out.push_back(detail::oracle_powersum_rational());
    return out;
}

} // namespace wolst
