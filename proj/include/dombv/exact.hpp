#pragma once

#include <gmpxx.h>

namespace dombv {

// Exact value domains. ExactInteger/ExactRational are GMP-backed; every
// rational produced here is canonical (reduced, denominator >= 1), so
// equality is structural.
using ExactInteger  = mpz_class;
using ExactRational = mpq_class;

// Canonical rational from a num/den pair (den != 0).
ExactRational make_rational(const ExactInteger& num, const ExactInteger& den);

ExactInteger pow_int(const ExactInteger& base, unsigned long e);

// n!, memoized. Entries are immutable once created; extending the table is
// internally synchronized (see prefetch_sequences for the sweep pattern).
const ExactInteger& factorial(unsigned long n);

// binom(n, k); 0 for k outside [0, n], matching the summation conventions
// used by every sum in this suite.
ExactInteger binomial(unsigned long n, long k);

// Generalized binomial a(a-1)...(a-k+1)/k! for rational a.
ExactRational gen_binomial(const ExactRational& a, unsigned long k);

// Shifted factorial (a)_n = a(a+1)...(a+n-1).
ExactRational rising_factorial(const ExactRational& a, unsigned long n);

// H_n (order 1) or H_n^{(2)} (order 2); H_0 = 0. Memoized.
const ExactRational& harmonic(unsigned long n, int order = 1);

// D_n = sum_k binom(n,k)^2 binom(2k,k) binom(2n-2k,n-k). Memoized.
const ExactInteger& domb(unsigned long n);

// The two closed-form re-expansions of D_n:
//   sum_k (-1)^k binom(n+2k,3k) binom(2k,k)^2 binom(3k,k) 16^{n-k}
//   sum_k binom(n+k,3k) binom(2k,k)^2 binom(3k,k) 4^{n-2k}
ExactInteger domb_rhs_16(unsigned long n);
ExactInteger domb_rhs_4(unsigned long n);

// (1/n) sum_{k<n} (2k+1) D_k (sign*8)^{n-1-k}; integral and positive for
// every n >= 1 and either sign.
ExactRational liu_sum(unsigned long n, int sign);

// Bernoulli numbers, B_1 = -1/2 convention, via the defining recurrence
// sum_{k<n} binom(n,k) B_k = 0. Memoized; O(n^2) to extend.
const ExactRational& bernoulli(unsigned long n);

// B_n(x) = sum_k binom(n,k) B_k x^{n-k}.
ExactRational bernoulli_poly(unsigned long n, const ExactRational& x);

// Extend the shared memo tables up front so parallel sweep workers only
// ever read them.
void prefetch_sequences(unsigned long n_domb, unsigned long n_harmonic,
                        unsigned long n_bernoulli);

} // namespace dombv
