// Central binomial products vs the exact coefficient, and the proof-step
// congruences built from them.

#include <catch2/catch_amalgamated.hpp>

#include "wolst/binomial.hpp"
#include "wolst/primes.hpp"

using namespace wolst;

TEST_CASE("both product expansions equal the exact coefficient") {
    for (u64 p : primes_in({3, 100})) {
        for (int k = 1; k <= 6; ++k) {
            u128 exact = binom_exact_mod(p, k);
            auto up = binom_upward(p, k);
            auto down = binom_downward(p, k);
            REQUIRE(up.value == exact);
            REQUIRE(down.value == exact);
            REQUIRE(up.p == p);
            REQUIRE(up.k == k);
        }
    }
}

TEST_CASE("small exact values") {
    // C(5,2) = 10, C(9,4) = 126, C(13,6) = 1716
    REQUIRE(binom_exact_mod(3, 2) == 10 % 9);
    REQUIRE(binom_exact_mod(5, 3) == 126 % 125);
    REQUIRE(binom_upward(7, 2).value == 1716 % 49);
}

TEST_CASE("wolstenholme level of ordinary primes") {
    for (u64 p : primes_in({5, 500})) {
        auto c3 = binom_upward(p, 3);
        REQUIRE(c3.wolstenholme_level.v == 3); // C ≡ 1 (mod p^3) exactly saturates k = 3
        REQUIRE(c3.wolstenholme_level.saturated);
    }
    // 16843 is the first prime whose level exceeds 4
    auto c = binom_upward(16843, 6);
    REQUIRE(c.wolstenholme_level.v == 4);
    REQUIRE_FALSE(c.wolstenholme_level.saturated);
    // frozen full residue at k = 6: C(2p-1, p-1) mod 16843^6
    REQUIRE(c.value == (u128)13559262786714963ull * 1000000000 + 295602253ull);
}

TEST_CASE("second wolstenholme prime at the width-clamped exponent") {
    auto c = binom_upward(2124679, 5);
    REQUIRE(c.wolstenholme_level.v == 4);
    REQUIRE_FALSE(c.wolstenholme_level.saturated);
    REQUIRE(c.value ==
            (u128)3310238848215313ull * 10000000000000000ull + 1789208640376695ull);
}

TEST_CASE("proof-step congruences hold for small primes") {
    for (u64 p : primes_in({7, 300})) {
        REQUIRE(proof_step_combination(p).passed);
        REQUIRE(check_eq_e4(p).passed);
    }
}

TEST_CASE("a corrupted e_2 breaks the combination identity") {
    const u64 p = 97;
    auto M5 = make_modulus(p, 5);
    u128 e2 = elem_sym(p, 2, 5).value;
    u128 e3 = elem_sym(p, 3, 5).value;
    u128 e4 = elem_sym(p, 4, 5).value;
    u128 c = binom_upward(p, 5).value;
    REQUIRE(c == detail::combination_rhs(M5, e2, e3, e4));
    REQUIRE(c != detail::combination_rhs(M5, M5.add(e2, 1), e3, e4));
}

TEST_CASE("domain guards") {
    REQUIRE_THROWS_AS(binom_upward(2, 3), PrimeTooSmallError);
    REQUIRE_THROWS_AS(binom_exact_mod(2003, 2), RangeTooLargeError);
    REQUIRE_THROWS_AS(proof_step_combination(5), PrimeTooSmallError);
    REQUIRE_THROWS_AS(check_eq_e4(5), PrimeTooSmallError);
}
