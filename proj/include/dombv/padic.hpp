#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dombv/errors.hpp"
#include "dombv/exact.hpp"

namespace dombv {

// Truncated p-adic arithmetic on 64-bit words. A PadicValue is a residue
// class "value == residue (mod p^aprec)" with residue in [0, p^aprec); the
// absolute precision aprec shrinks through the usual p-adic rules, and
// comparisons below the carried precision throw rather than guess. The
// canonical (valuation, unit) view is exposed through valuation()/unit().
//
// Moduli are capped so that p^aprec < 2^62; everything this suite needs
// (p <= 5000 at precision 5) fits comfortably.
class PadicValue {
public:
    PadicValue(std::uint64_t p, int aprec, std::uint64_t residue);

    static PadicValue from_integer(long long v, std::uint64_t p, int aprec);
    static PadicValue from_integer(const ExactInteger& v, std::uint64_t p, int aprec);
    // p^e * unit with unit known mod p^rel_prec.
    static PadicValue from_unit(std::uint64_t p, int valuation, std::uint64_t unit,
                                int rel_prec);
    static PadicValue zero(std::uint64_t p, int aprec);
    static PadicValue one(std::uint64_t p, int aprec);

    // Largest exponent A with p^A < 2^62.
    static int max_precision(std::uint64_t p);

    std::uint64_t prime() const { return p_; }
    int precision() const { return aprec_; }          // absolute
    std::uint64_t residue() const { return residue_; }

    bool is_zero() const { return residue_ == 0; }    // zero at carried precision
    // v_p of the residue; a zero residue reports the full carried precision
    // (the value is divisible by at least p^aprec).
    int valuation() const;
    std::uint64_t unit() const;                       // residue / p^valuation

    PadicValue operator+(const PadicValue& o) const;
    PadicValue operator-(const PadicValue& o) const;
    PadicValue operator-() const;
    PadicValue operator*(const PadicValue& o) const;
    // Throws NegativeValuation if v(*this) < v(o), InsufficientPrecision if
    // the quotient would carry no digits.
    PadicValue operator/(const PadicValue& o) const;
    PadicValue pow(std::uint64_t e) const;
    PadicValue times_p_power(int e) const;            // exact shift by p^e

    // Residue mod p^k (k <= aprec, else InsufficientPrecision).
    std::uint64_t residue_mod(int k) const;
    bool congruent(const PadicValue& o, int k) const;

private:
    std::uint64_t p_;
    int aprec_;
    std::uint64_t residue_;
};

// Bridge from the exact domain: r reduced to valuation + unit-mod-p^K
// (relative precision K). Throws NegativeValuation when v_p(den) > v_p(num).
PadicValue reduce_rational(const ExactRational& r, std::uint64_t p, int K);

// n! = p^e * unit with e from Legendre's formula and unit the product of the
// p-free parts, known mod p^K.
struct FactoredFactorial {
    unsigned long n;
    unsigned long e;
    std::uint64_t unit;
};

// Per-prime factorial/unit tables: O(N) to build, then O(1) per factored
// factorial and O(1) per binomial. This is the performance path of the fast
// engine; tables are immutable after construction and safe to share.
class FactorialTable {
public:
    FactorialTable(std::uint64_t p, int K, unsigned long n_max);

    std::uint64_t prime() const { return p_; }
    int precision() const { return K_; }
    unsigned long size() const { return e_.size() - 1; }

    FactoredFactorial factored(unsigned long n) const;
    PadicValue factorial(unsigned long n) const;
    PadicValue binomial(unsigned long n, long k) const;

    // Raw table access for the hot loops of the fast engine.
    std::uint64_t modulus() const { return pk_; }
    unsigned long e(unsigned long n) const { return e_[n]; }
    std::uint64_t fact_unit(unsigned long n) const { return fact_unit_[n]; }
    std::uint64_t inv_fact_unit(unsigned long n) const { return inv_fact_unit_[n]; }

    // p-free part of i and its inverse mod p^K, plus v_p(i); used for the
    // per-term divisors (3k+1, 3k+2, ...) in the congruence sums.
    std::uint64_t unit_part(unsigned long i) const { return upart_[i]; }
    std::uint64_t inv_unit_part(unsigned long i) const { return inv_upart_[i]; }
    int vp(unsigned long i) const { return vp_[i]; }

private:
    std::uint64_t p_;
    int K_;
    std::uint64_t pk_;
    std::vector<unsigned long> e_;
    std::vector<std::uint64_t> fact_unit_;
    std::vector<std::uint64_t> inv_fact_unit_;
    std::vector<std::uint64_t> upart_;
    std::vector<std::uint64_t> inv_upart_;
    std::vector<std::uint8_t> vp_;
};

// Standalone binom(n,k) mod p^{v+K}; builds a throwaway table, so prefer a
// shared FactorialTable inside loops.
PadicValue binomial_mod(unsigned long n, long k, std::uint64_t p, int K);

// Fermat quotient q_p(a) = (a^{p-1} - 1)/p mod p^K, computed from a^{p-1}
// mod p^{K+1}. Throws NotCoprime if p | a.
PadicValue fermat_quotient(long long a, std::uint64_t p, int K);

// Legendre symbol via Euler's criterion; q an odd prime.
int legendre(long long a, std::uint64_t q);

// B_m mod p for m <= p-3 (table cached per prime). IndexOutOfRange above.
std::uint64_t bernoulli_mod(unsigned long m, std::uint64_t p);

// B_{p-2}(1/3) mod p.
std::uint64_t bernoulli_poly_third(std::uint64_t p);

// Optional on-disk cache for the per-prime Bernoulli tables (the one O(p^2)
// build). Empty path disables.
void set_cache_dir(const std::string& dir);

// Small modular helpers shared by the fast engine.
std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);  // gcd(a,m) = 1
std::uint64_t pow_u64(std::uint64_t base, int e);        // unchecked small pow

} // namespace dombv
