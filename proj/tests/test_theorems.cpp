// Theorem-level checks and the per-prime report builder, anchored on the two
// known Wolstenholme primes.

#include <catch2/catch_amalgamated.hpp>

#include "wolst/primes.hpp"
#include "wolst/theorems.hpp"

using namespace wolst;

TEST_CASE("classical congruences across a prime sweep") {
    for (u64 p : primes_in({5, 2000}))
        for (const auto& o : check_classical(p)) {
            REQUIRE(o.passed);
            REQUIRE(o.p == p);
        }
    REQUIRE_THROWS_AS(check_classical(3), PrimeTooSmallError);
}

TEST_CASE("check names and moduli are stable") {
    auto cs = check_classical(7);
    REQUIRE(cs.size() == 3);
    REQUIRE(cs[0].name == "classical-binom-p3");
    REQUIRE(cs[0].modulus_exponent == 3);
    REQUIRE(cs[1].name == "classical-h1-p2");
    REQUIRE(cs[2].name == "classical-h2-p1");
    auto ls = check_leudesdorf(7);
    REQUIRE(ls.size() == 4);
    REQUIRE(ls[3].name == "leudesdorf-h4-p1");
}

TEST_CASE("leudesdorf lemma sweep") {
    for (u64 p : primes_in({7, 1000}))
        for (const auto& o : check_leudesdorf(p)) REQUIRE(o.passed);
    REQUIRE_THROWS_AS(check_leudesdorf(5), PrimeTooSmallError);
}

TEST_CASE("theorem conditions at ordinary and wolstenholme primes") {
    auto t7 = theorem1_conditions(7);
    REQUIRE_FALSE(t7.a);
    REQUIRE_FALSE(t7.b);
    REQUIRE_FALSE(t7.c);
    REQUIRE_FALSE(t7.d);
    REQUIRE(t7.consistent);

    auto w1 = theorem1_conditions(16843);
    REQUIRE(w1.a);
    REQUIRE(w1.b);
    REQUIRE(w1.c);
    REQUIRE(w1.d);
    REQUIRE(w1.consistent);

    auto w2 = theorem2_conditions(16843); // one level up, all fail, coherently
    REQUIRE_FALSE(w2.a);
    REQUIRE_FALSE(w2.d);
    REQUIRE(w2.consistent);

    REQUIRE(theorem1_conditions(2124679).a);
    REQUIRE(theorem2_conditions(2124679).consistent);
}

TEST_CASE("consistency sweep") {
    for (u64 p : primes_in({7, 1500})) {
        REQUIRE(theorem1_conditions(p).consistent);
        REQUIRE(theorem2_conditions(p).consistent);
    }
}

TEST_CASE("final identity holds and reacts to corruption") {
    for (u64 p : primes_in({7, 300})) REQUIRE(check_final_identity(p).passed);
    auto M5 = make_modulus(11, 5);
    u128 bb = bern_mod_via_sum(bern_big_index(11), 11, 2).value;
    u128 c = binom_upward(11, 5).value;
    REQUIRE(c == detail::final_identity_rhs(M5, bb));
    REQUIRE(c != detail::final_identity_rhs(M5, M5.add(bb, 1)));
}

TEST_CASE("helou-terjanian congruences") {
    for (u64 p : primes_in({11, 300}))
        for (const auto& o : check_helou_terjanian(p)) REQUIRE(o.passed);
    REQUIRE_THROWS_AS(check_helou_terjanian(7), IndexNotSupportedError);
    REQUIRE_THROWS_AS(check_helou_terjanian(5), PrimeTooSmallError);

    // zeroing the B_{p-5} input must break all three right-hand sides
    const u64 p = 11;
    u128 bM = bern_big_p3(p).value;
    u128 b3 = bern_mod_via_sum(p - 3, p, 1).value;
    u128 b5 = bern_mod_via_sum(p - 5, p, 1).value;
    auto M6 = make_modulus(p, 6);
    REQUIRE(binom_upward(p, 6).value == detail::ht_binom_rhs(M6, bM, b3, b5));
    REQUIRE(binom_upward(p, 6).value != detail::ht_binom_rhs(M6, bM, b3, 0));
}

TEST_CASE("shallow report shape") {
    auto r = build_report(11, false);
    REQUIRE(r.p == 11);
    REQUIRE_FALSE(r.deep);
    REQUIRE(r.ka == 4);
    REQUIRE(r.kb == 3);
    REQUIRE(r.kc == 2);
    REQUIRE(r.level_a.v == 3);
    REQUIRE_FALSE(r.level_a.saturated);
    REQUIRE(r.level_b.v == 2);
    REQUIRE(r.level_c.v == 1);
    REQUIRE(r.bern_p3 == 4);
    REQUIRE(r.bern_p5.value() == 5);
    REQUIRE_FALSE(r.bern_big.has_value());
    REQUIRE_FALSE(r.thm2_consistent.has_value());
    REQUIRE(r.thm1_consistent);
    REQUIRE_FALSE(r.is_wolstenholme);
    REQUIRE(r.checks_run == 0);
    REQUIRE(r.check_failures.empty());
}

TEST_CASE("a wolstenholme prime escalates to a deep report on its own") {
    auto r = build_report(16843, false);
    REQUIRE(r.deep);
    REQUIRE(r.ka == 6);
    REQUIRE(r.kb == 5);
    REQUIRE(r.kc == 4);
    REQUIRE(r.is_wolstenholme);
    REQUIRE(r.level_a.v == 4);
    REQUIRE(r.level_b.v == 3);
    REQUIRE(r.level_c.v == 2);
    REQUIRE(r.thm1_consistent);
    REQUIRE(r.thm2_consistent.value());
    REQUIRE(r.bern_big.value() == 227717360);
    REQUIRE(r.checks_run == 17); // 14 core checks + the three mod-p^6 ones
    REQUIRE(r.check_failures.empty());
}

TEST_CASE("deep report clamps exponents past the width limit") {
    auto r = build_report(2124679, true);
    REQUIRE(r.deep);
    REQUIRE(r.ka == 5);
    REQUIRE(r.kb == 4);
    REQUIRE(r.kc == 3);
    REQUIRE(r.is_wolstenholme);
    REQUIRE(r.checks_run == 14); // no p^6 modulus, so no Helou-Terjanian block
    REQUIRE(r.check_failures.empty());
}

TEST_CASE("shallow and deep levels agree where both can see") {
    for (u64 p : primes_in({7, 600})) {
        auto s = build_report(p, false);
        auto d = build_report(p, true);
        if (d.level_a.v < 4) {
            REQUIRE(s.level_a.v == d.level_a.v);
            REQUIRE_FALSE(s.level_a.saturated);
        } else {
            REQUIRE(s.level_a.v == 4);
            REQUIRE(s.level_a.saturated);
        }
        if (d.level_b.v < 3) REQUIRE(s.level_b.v == d.level_b.v);
        if (d.level_c.v < 2) REQUIRE(s.level_c.v == d.level_c.v);
        REQUIRE(s.bern_p3 == d.bern_p3);
        REQUIRE(s.thm1_consistent == d.thm1_consistent);
    }
}

TEST_CASE("report guards") {
    REQUIRE_THROWS_AS(build_report(9, false), NotPrimeError);
    REQUIRE_THROWS_AS(build_report(5, false), PrimeTooSmallError);
}
