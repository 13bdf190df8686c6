// The dual-route oracle sweep: clean runs stay clean, an injected fault in
// the inversion kernel is caught, and the toggle never leaks.

#include <catch2/catch_amalgamated.hpp>

#include "wolst/oracles.hpp"

using namespace wolst;

TEST_CASE("all families agree on a clean run") {
    auto res = run_oracles({100, false});
    REQUIRE(res.size() == 4);
    REQUIRE(res[0].name == "binomial-products");
    REQUIRE(res[1].name == "newton-symmetric");
    REQUIRE(res[2].name == "bernoulli-residues");
    REQUIRE(res[3].name == "powersum-rational");
    for (const auto& f : res) {
        INFO(f.name << " first mismatch: " << f.first_mismatch);
        REQUIRE(f.cases > 0);
        REQUIRE(f.mismatches == 0);
        REQUIRE(f.first_mismatch.empty());
    }
}

TEST_CASE("an injected inversion fault is detected") {
    auto res = run_oracles({31, true});
    // the two families that ride the batched-inversion kernel must light up
    REQUIRE(res[0].mismatches > 0);
    REQUIRE_FALSE(res[0].first_mismatch.empty());
    REQUIRE(res[1].mismatches > 0);
    // the power-sum families never touch that kernel and stay green,
    // documenting exactly what this fault class covers
    REQUIRE(res[2].mismatches == 0);
    REQUIRE(res[3].mismatches == 0);
}

TEST_CASE("the fault toggle is restored after a faulted run") {
    run_oracles({31, true});
    REQUIRE(detail::g_inv_fault == 0);
    REQUIRE(harmonic_sum(97, 1, 2).value == 0); // classical congruence, clean again
    auto res = run_oracles({31, false});
    for (const auto& f : res) REQUIRE(f.mismatches == 0);
}

TEST_CASE("ceiling guard") {
    REQUIRE_THROWS_AS(run_oracles({12, false}), RangeTooLargeError);
    REQUIRE_THROWS_AS(run_oracles({2001, false}), RangeTooLargeError);
}
