#pragma once

#include <string>
#include <utility>

#include "wolst/modmath.hpp"

namespace wolst {

// One verified congruence: named lhs ≡ rhs (mod p^modulus_exponent).
struct CheckOutcome {
    std::string name;
    u64 p = 0;
    int modulus_exponent = 0;
    bool passed = false;
    u128 lhs = 0, rhs = 0;
};

inline CheckOutcome make_check(std::string name, u64 p, int ke, u128 lhs, u128 rhs) {
    return {std::move(name), p, ke, lhs == rhs, lhs, rhs};
}

} // namespace wolst
