#pragma once

#include <cstdint>
#include <optional>

#include "dombv/errors.hpp"
#include "dombv/exact.hpp"

namespace dombv {

// p = x^2 + 3y^2 with x, y > 0; exists and is unique (up to signs) exactly
// for primes p = 1 mod 3.
struct QuadRep {
    std::uint64_t p;
    std::uint64_t x;
    std::uint64_t y;
};

struct R3Value {
    std::uint64_t p;
    std::uint64_t residue;  // in [0, p^2)
};

// Square root of a mod p (odd prime), the smaller of the two roots;
// nullopt when a is a non-residue.
std::optional<std::uint64_t> sqrt_mod(long long a, std::uint64_t p);

// Cornacchia descent from sqrt_mod(-3, p). Throws WrongResidueClass unless
// p = 1 mod 3, p > 3.
QuadRep represent(std::uint64_t p);

// The correction quantity
//   (1 + 2p + (4/3)(2^{p-1}-1) - (3/2)(3^{p-1}-1)) * binom((p-1)/2, floor(p/6))^2,
// an integer for every odd prime.
ExactInteger r3_exact(std::uint64_t p);

// r3_exact reduced mod p^2.
R3Value r3(std::uint64_t p);

// Same residue computed purely with truncated p-adic arithmetic (Fermat
// quotients and a factored binomial); cross-checked against r3 in tests.
R3Value r3_padic(std::uint64_t p);

} // namespace dombv
