// Harmonic power sums, symmetric functions, and the telescoped proof chain.

#include <catch2/catch_amalgamated.hpp>

#include "wolst/bigint.hpp"
#include "wolst/harmonic.hpp"
#include "wolst/primes.hpp"

using namespace wolst;

TEST_CASE("harmonic sums match exact rationals at p = 13") {
    auto M = make_modulus(13, 3);
    for (int j = 1; j <= 4; ++j) {
        BigRational exact = 0;
        for (u64 i = 1; i < 13; ++i)
            exact += BigRational(1) / BigRational(boost::multiprecision::pow(BigInt(i), j));
        REQUIRE(harmonic_sum(13, j, 3).value == rational_mod(exact, M));
    }
}

TEST_CASE("frozen harmonic anchors") {
    REQUIRE(harmonic_sum(5, 1, 2).value == 0);
    REQUIRE(harmonic_sum(5, 2, 2).value == 20);
    REQUIRE(harmonic_sum(7, 2, 1).value == 0);
    REQUIRE(harmonic_sum(7, 3, 2).value == 0);
    REQUIRE(harmonic_sum(97, 1, 5).value == 6278729199ull);
    REQUIRE(harmonic_sum(97, 2, 4).value == 50338247ull);
    REQUIRE(elem_sym(5, 2, 2).value == 15);
}

TEST_CASE("H_1 mod p vanishes by reflection") {
    for (u64 p : primes_in({3, 200})) REQUIRE(harmonic_sum(p, 1, 1).value == 0);
}

TEST_CASE("Newton route equals brute-force tuples") {
    for (u64 p : {7ull, 13ull, 31ull})
        for (int r = 1; r <= 4; ++r)
            for (int k = 1; k <= 3; ++k)
                REQUIRE(elem_sym(p, r, k).value == elem_sym_bruteforce(p, r, k).value);
    // p = 5 admits r <= 3 only
    for (int r = 1; r <= 3; ++r)
        REQUIRE(elem_sym(5, r, 2).value == elem_sym_bruteforce(5, r, 2).value);
}

TEST_CASE("batched inversion matches one-at-a-time beyond a chunk boundary") {
    const u64 p = 8209; // two 4096-element chunks
    auto M = make_modulus(p, 2);
    u128 direct = 0;
    for (u64 i = 1; i < p; ++i) direct = M.add(direct, M.inv(i));
    REQUIRE(harmonic_sum(p, 1, 2).value == direct);
}

TEST_CASE("memoized sums reduce consistently across exponents") {
    for (int j = 1; j <= 4; ++j) {
        u128 at4 = harmonic_sum(977, j, 4).value;
        REQUIRE(harmonic_sum(977, j, 2).value == at4 % make_modulus(977, 2).modulus());
    }
}

TEST_CASE("telescoped chain and tail hold for small primes") {
    for (u64 p : primes_in({7, 300})) {
        auto chain = telescoped_chain(p);
        REQUIRE(chain.passed);
        REQUIRE(chain.name == "telescoped-chain-p4");
        REQUIRE(telescoped_tail(p).passed);
    }
}

TEST_CASE("a corrupted H_2 breaks the telescoped identity") {
    auto M4 = make_modulus(97, 4);
    auto M1 = make_modulus(97, 1);
    u128 h1 = harmonic_sum(97, 1, 4).value;
    u128 h2 = harmonic_sum(97, 2, 4).value;
    u128 h3 = harmonic_sum(97, 3, 4).value;
    u128 t = detail::telescoped_T_mod_p(M1);
    u128 lhs = M4.mul(2, h1);
    REQUIRE(lhs == detail::telescoped_rhs(M4, h2, h3, t));
    REQUIRE(lhs != detail::telescoped_rhs(M4, M4.add(h2, 1), h3, t));
}

TEST_CASE("the inversion fault is caught by the chain check") {
    detail::g_inv_fault = 5;
    detail::reset_harmonic_memo();
    bool faulted_pass = telescoped_chain(97).passed;
    detail::g_inv_fault = 0;
    detail::reset_harmonic_memo();
    REQUIRE_FALSE(faulted_pass);
    REQUIRE(telescoped_chain(97).passed); // clean again after reset
}

TEST_CASE("index-doubling vanishing checks") {
    for (u64 p : primes_in({7, 300})) {
        REQUIRE(check_sym_6e3(p).passed);
        REQUIRE(check_sym_e4(p).passed);
    }
}

TEST_CASE("domain guards") {
    REQUIRE_THROWS_AS(harmonic_sum(2, 1, 1), PrimeTooSmallError);
    REQUIRE_THROWS_AS(harmonic_sum(7, 5, 1), IndexNotSupportedError);
    REQUIRE_THROWS_AS(harmonic_sum(7, 0, 1), IndexNotSupportedError);
    REQUIRE_THROWS_AS(harmonic_sum(7, 1, 7), ExponentOutOfRangeError);
    REQUIRE_THROWS_AS(elem_sym(3, 2, 1), PrimeTooSmallError);
    REQUIRE_THROWS_AS(elem_sym(5, 4, 1), PrimeTooSmallError);
    REQUIRE_THROWS_AS(elem_sym(7, 5, 1), IndexNotSupportedError);
    REQUIRE_THROWS_AS(elem_sym_bruteforce(37, 2, 1), RangeTooLargeError);
    REQUIRE_THROWS_AS(telescoped_chain(5), PrimeTooSmallError);
}
