#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "dombv/padic.hpp"

using namespace dombv;

TEST_CASE("reduce_rational examples") {
    PadicValue a = reduce_rational(make_rational(1, 6), 5, 2);
    CHECK(a.valuation() == 0);
    CHECK(a.unit() % 25 == 21);
    CHECK(a.residue_mod(2) == 21);

    PadicValue b = reduce_rational(make_rational(10, 3), 5, 2);
    CHECK(b.valuation() == 1);
    CHECK(b.unit() % 25 == 9);  // 10/3 = 5 * (2/3), 2/3 = 9 mod 25

    CHECK_THROWS_AS(reduce_rational(make_rational(1, 5), 5, 2), NegativeValuation);
    CHECK(reduce_rational(ExactRational(0), 7, 3).is_zero());
    // valuation beyond the representable window collapses to zero
    CHECK(reduce_rational(ExactRational(pow_int(5, 40)), 5, 2).is_zero());
}

TEST_CASE("padic arithmetic round-trips against exact rationals") {
    for (std::uint64_t p : {5ull, 13ull, 97ull}) {
        std::mt19937 rng(20240517 + p);
        std::uniform_int_distribution<long> num(-60, 60);
        std::uniform_int_distribution<long> den(1, 60);
        auto sample = [&]() {
            for (;;) {
                long d = den(rng);
                if (d % (long)p == 0)
                    continue;
                return make_rational(num(rng), d);
            }
        };
        const int K = 4;
        int done = 0;
        while (done < 1000) {
            ExactRational a = sample(), b = sample();
            PadicValue x = reduce_rational(a, p, K);
            PadicValue y = reduce_rational(b, p, K);

            PadicValue sum = x + y;
            PadicValue expect_sum = reduce_rational(ExactRational(a + b), p, K);
            int ks = std::min(sum.precision(), expect_sum.precision());
            CHECK(sum.residue_mod(ks) == expect_sum.residue_mod(ks));

            PadicValue prod = x * y;
            PadicValue expect_prod = reduce_rational(ExactRational(a * b), p, K);
            int kp = std::min(prod.precision(), expect_prod.precision());
            CHECK(prod.residue_mod(kp) == expect_prod.residue_mod(kp));

            if (b != 0 && x.valuation() >= y.valuation() && !y.is_zero()) {
                PadicValue quot = x / y;
                PadicValue expect_quot = reduce_rational(ExactRational(a / b), p, K);
                int kq = std::min(quot.precision(), expect_quot.precision());
                CHECK(quot.residue_mod(kq) == expect_quot.residue_mod(kq));
            }
            ++done;
        }
    }
}

TEST_CASE("precision guard") {
    PadicValue v(7, 2, 13);
    CHECK_THROWS_AS(v.residue_mod(3), InsufficientPrecision);
    PadicValue w(7, 3, 13);
    CHECK_THROWS_AS(v.congruent(w, 3), InsufficientPrecision);
    CHECK(v.congruent(w, 2));
    // division must refuse to invent digits
    PadicValue coarse_zero = PadicValue::from_integer(7, 7, 1);  // = 0 mod 7^1
    PadicValue seven = PadicValue::from_integer(7, 7, 3);
    CHECK_THROWS_AS(PadicValue::from_integer(1, 7, 2) / PadicValue::zero(7, 2),
                    InsufficientPrecision);
    CHECK_THROWS_AS(coarse_zero / seven, InsufficientPrecision);  // 0 digits survive
    CHECK_THROWS_AS(PadicValue::from_integer(1, 7, 3) / seven, NegativeValuation);
}

TEST_CASE("binomial_mod examples") {
    PadicValue w = binomial_mod(10, 5, 5, 3);  // 252
    CHECK(w.valuation() == 0);
    CHECK(w.residue_mod(3) == 2);

    PadicValue b = binomial_mod(7, 1, 7, 2);
    CHECK(b.valuation() == 1);
    CHECK(b.unit() == 1);

    PadicValue c = binomial_mod(4, 2, 7, 2);
    CHECK(c.valuation() == 0);
    CHECK(c.residue_mod(2) == 6);

    CHECK(binomial_mod(3, 5, 7, 2).is_zero());
    CHECK(binomial_mod(3, -1, 7, 2).is_zero());
}

TEST_CASE("binomial_mod agrees with reduced exact binomials") {
    std::mt19937 rng(7);
    for (std::uint64_t p : {5ull, 7ull, 13ull}) {
        std::uniform_int_distribution<unsigned long> dn(0, 4 * p);
        for (int i = 0; i < 200; ++i) {
            unsigned long n = dn(rng);
            std::uniform_int_distribution<unsigned long> dk(0, n);
            unsigned long k = dk(rng);
            PadicValue fast = binomial_mod(n, (long)k, p, 3);
            PadicValue exact = reduce_rational(ExactRational(binomial(n, (long)k)), p, 3);
            CHECK(fast.residue_mod(3) == exact.residue_mod(3));
            CHECK(fast.valuation() == exact.valuation());
        }
    }
}

TEST_CASE("factored factorials follow the floor-sum valuation") {
    FactorialTable t(7, 3, 200);
    for (unsigned long n = 0; n <= 200; ++n) {
        unsigned long e = 0;
        for (unsigned long q = 7; q <= n; q *= 7)
            e += n / q;
        auto f = t.factored(n);
        CHECK(f.e == e);
        CHECK(f.unit % 7 != 0);
    }
    // Wolstenholme through the table: binom(2p,p) = 2 mod p^3
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 31ull, 97ull}) {
        FactorialTable tp(p, 3, 2 * p);
        CHECK(tp.binomial(2 * p, (long)p).residue_mod(3) == 2);
    }
}

TEST_CASE("fermat quotients") {
    CHECK(fermat_quotient(1, 11, 2).is_zero());
    CHECK(fermat_quotient(2, 3, 1).residue_mod(1) == 1);
    CHECK(fermat_quotient(2, 5, 1).residue_mod(1) == 3);
    CHECK_THROWS_AS(fermat_quotient(10, 5, 1), NotCoprime);

    // q_p(ab) = q_p(a) + q_p(b) (mod p)
    for (std::uint64_t p : {7ull, 13ull, 101ull}) {
        std::mt19937 rng(p);
        std::uniform_int_distribution<long long> d(1, 1000);
        for (int i = 0; i < 100; ++i) {
            long long a = d(rng), b = d(rng);
            if (a % (long long)p == 0 || b % (long long)p == 0)
                continue;
            std::uint64_t lhs = fermat_quotient(a * b, p, 1).residue_mod(1);
            std::uint64_t rhs = (fermat_quotient(a, p, 1) + fermat_quotient(b, p, 1)).residue_mod(1);
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("legendre symbol") {
    CHECK(legendre(3, 3) == 0);
    CHECK(legendre(2, 7) == 1);
    CHECK(legendre(7, 3) == 1);
    CHECK(legendre(13, 3) == 1);
    CHECK(legendre(11, 3) == -1);
    // brute-force square oracle
    for (std::uint64_t q : {5ull, 7ull, 11ull, 13ull}) {
        for (long long a = -20; a <= 20; ++a) {
            std::uint64_t am = static_cast<std::uint64_t>(
                (a % (long long)q + (long long)q) % (long long)q);
            bool square = false;
            for (std::uint64_t x = 0; x < q; ++x)
                if ((x * x) % q == am)
                    square = true;
            int expect = am == 0 ? 0 : (square ? 1 : -1);
            CHECK(legendre(a, q) == expect);
        }
    }
}

TEST_CASE("bernoulli residues") {
    CHECK(bernoulli_mod(0, 11) == 1);
    CHECK(bernoulli_mod(1, 5) == 2);  // -1/2 mod 5
    CHECK(bernoulli_mod(2, 5) == 1);  // 1/6 mod 5
    CHECK_THROWS_AS(bernoulli_mod(3, 5), IndexOutOfRange);

    for (std::uint64_t p : {7ull, 13ull, 47ull, 97ull}) {
        unsigned long top = std::min<unsigned long>(40, p - 3);
        for (unsigned long m = 0; m <= top; ++m) {
            std::uint64_t expect = reduce_rational(bernoulli(m), p, 1).residue_mod(1);
            CHECK(bernoulli_mod(m, p) == expect);
        }
    }
}

TEST_CASE("bernoulli_poly_third") {
    CHECK(bernoulli_poly_third(5) == 3);
    CHECK(bernoulli_poly_third(7) == 6);
    CHECK(bernoulli_poly_third(11) == 4);
    CHECK(bernoulli_poly_third(13) == 7);
    // consistency with the exact H^{(2)}_{floor(p/3)} congruence
    for (std::uint64_t p : {7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull,
                            37ull, 41ull, 43ull, 47ull, 53ull, 59ull}) {
        long leg = legendre((long long)p, 3);
        std::uint64_t expect =
            reduce_rational(ExactRational(2 * leg) * harmonic(p / 3, 2), p, 1)
                .residue_mod(1);
        CHECK(bernoulli_poly_third(p) == expect);
    }
}

TEST_CASE("harmonic reflection mod p") {
    // H^{(2)}_{p-1-k} + H^{(2)}_k = 0 (mod p)
    for (std::uint64_t p : {5ull, 7ull, 11ull, 13ull, 31ull}) {
        for (unsigned long k = 0; k <= p - 1; ++k) {
            ExactRational s = harmonic(p - 1 - k, 2) + harmonic(k, 2);
            CHECK(reduce_rational(s, p, 1).residue_mod(1) == 0);
        }
    }
}

TEST_CASE("bernoulli table persists through the cache dir") {
    std::string dir =
        (std::filesystem::temp_directory_path() / "dombv_cache_test").string();
    std::filesystem::remove_all(dir);
    set_cache_dir(dir);
    std::uint64_t v = bernoulli_mod(10, 211);
    CHECK(std::filesystem::exists(dir + "/bernoulli_mod_211.txt"));
    CHECK(bernoulli_mod(10, 211) == v);
    CHECK(v == reduce_rational(bernoulli(10), 211, 1).residue_mod(1));
    set_cache_dir("");
    std::filesystem::remove_all(dir);
}
