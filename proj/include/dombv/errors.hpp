#pragma once

#include <stdexcept>
#include <string>

namespace dombv {

// Error conditions shared across the arithmetic modules. Each one names a
// situation the caller is expected to handle (or that signals a misuse).

// A rational whose denominator carries more factors of p than its numerator
// has no truncated p-adic reduction. In a congruence check this is a red
// flag: the expression under test is not a p-adic integer.
struct NegativeValuation : std::domain_error {
    explicit NegativeValuation(const std::string& what) : std::domain_error(what) {}
};

// Fermat quotients require gcd(a, p) = 1.
struct NotCoprime : std::domain_error {
    explicit NotCoprime(const std::string& what) : std::domain_error(what) {}
};

// Bernoulli residues mod p are only defined up to index p-3 here.
struct IndexOutOfRange : std::out_of_range {
    explicit IndexOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

// Comparing two truncated values below the precision they actually carry
// would risk a silent false pass; the engine refuses instead.
struct InsufficientPrecision : std::logic_error {
    explicit InsufficientPrecision(const std::string& what) : std::logic_error(what) {}
};

// Operation requires p in a specific residue class (e.g. p = 1 mod 3).
struct WrongResidueClass : std::domain_error {
    explicit WrongResidueClass(const std::string& what) : std::domain_error(what) {}
};

} // namespace dombv
