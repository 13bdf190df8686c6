#pragma once

// Umbrella include for the whole library.

#include "wolst/errors.hpp"     // IWYU pragma: export
#include "wolst/modmath.hpp"    // IWYU pragma: export
#include "wolst/primes.hpp"     // IWYU pragma: export
#include "wolst/bigint.hpp"     // IWYU pragma: export
#include "wolst/check.hpp"      // IWYU pragma: export
#include "wolst/harmonic.hpp"   // IWYU pragma: export
#include "wolst/binomial.hpp"   // IWYU pragma: export
#include "wolst/bernoulli.hpp"  // IWYU pragma: export
#include "wolst/theorems.hpp"   // IWYU pragma: export
#include "wolst/scan.hpp"       // IWYU pragma: export
#include "wolst/oracles.hpp"    // IWYU pragma: export
