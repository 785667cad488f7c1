#pragma once

#include <string>
#include <vector>

#include "dombv/exact.hpp"

namespace dombv {

// One exact identity instance: pass iff lhs == rhs as rationals, no
// reduction anywhere.
struct IdentityCheck {
    std::string identity_id;
    std::string params;
    ExactRational lhs;
    ExactRational rhs;
    bool pass;
};

// The two cubic-in-n polynomials behind the partial-sum evaluations of
// sum k^3 binom(k+j,3j) and sum k^3 binom(k+2j,3j).
ExactInteger sigma1_poly(const ExactInteger& n, const ExactInteger& j);
ExactInteger sigma3_poly(const ExactInteger& n, const ExactInteger& j);

// sum_{k<=n} binom(n,k) binom(n+k,k) (-1)^k/(3k+4)
//   == -1/((3n-1)(3n+1)(3n+4)) * prod_{k<=n} (3k-1)/(3k-2)
IdentityCheck check_pfaff_saalschutz(unsigned long n);

// sum_{j<=n} binom(n,j) binom(n+j,j) (-1)^j (H_2j - H_j)/(3j+4)
//   == -9(2n+1)/(10(3n-1)(3n+4))
//      + (2/3)_n/((3n-1)(3n+1)(3n+4)(1/3)_n) * (9/10 + sum_k (1/3)_k/(k(2/3)_k))
IdentityCheck check_harmonic_id(unsigned long n);

// sum_{k=2j}^{n-1} k^3 binom(k+j,3j) == Sigma1/((j+1)(3j+2)(3j+4)) binom(n+j,3j+1),
// for 0 <= 2j <= n-1.
IdentityCheck check_sigma1(unsigned long n, unsigned long j);

// sum_{k=j}^{n-1} k^3 binom(k+2j,3j) == Sigma3/((3j+2)(3j+4)) binom(n+2j,3j+1),
// for 0 <= j <= n-1.
IdentityCheck check_sigma3(unsigned long n, unsigned long j);

// The two shift identities relating the (p-4)/3 and (p-1)/3 binomial blocks;
// p is any integer = 1 mod 3, p >= 7 (primality plays no role).
std::vector<IdentityCheck> check_aux_binomial_ids(unsigned long p);

// domb(n) == domb_rhs_16(n) and domb(n) == domb_rhs_4(n), exactly.
std::vector<IdentityCheck> check_transforms(unsigned long n);

} // namespace dombv
