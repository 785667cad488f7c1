#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dombv/identity.hpp"

using namespace dombv;

TEST_CASE("pfaff-saalschutz specialization") {
    IdentityCheck c0 = check_pfaff_saalschutz(0);
    CHECK(c0.pass);
    CHECK(c0.lhs == make_rational(1, 4));
    IdentityCheck c1 = check_pfaff_saalschutz(1);
    CHECK(c1.pass);
    CHECK(c1.lhs == make_rational(-1, 28));
    CHECK(check_pfaff_saalschutz(2).pass);
    for (unsigned long n = 0; n <= 40; ++n)
        CHECK(check_pfaff_saalschutz(n).pass);
}

TEST_CASE("harmonic-difference identity") {
    IdentityCheck c0 = check_harmonic_id(0);
    CHECK(c0.pass);
    CHECK(c0.lhs == 0);
    CHECK(check_harmonic_id(1).pass);
    CHECK(check_harmonic_id(25).pass);
    for (unsigned long n = 0; n <= 40; ++n)
        CHECK(check_harmonic_id(n).pass);
}

TEST_CASE("sigma1 partial sums") {
    IdentityCheck c = check_sigma1(2, 0);
    CHECK(c.pass);
    CHECK(c.lhs == 1);
    CHECK(sigma1_poly(2, 0) == 4);
    IdentityCheck z = check_sigma1(1, 0);
    CHECK(z.pass);
    CHECK(z.lhs == 0);
    CHECK(check_sigma1(5, 1).pass);
    for (unsigned long n = 1; n <= 30; ++n)
        for (unsigned long j = 0; 2 * j + 1 <= n; ++j)
            CHECK(check_sigma1(n, j).pass);
}

TEST_CASE("sigma3 partial sums") {
    IdentityCheck c = check_sigma3(2, 0);
    CHECK(c.pass);
    CHECK(c.lhs == 1);
    CHECK(sigma3_poly(2, 0) == 4);
    IdentityCheck z = check_sigma3(1, 0);
    CHECK(z.pass);
    CHECK(z.lhs == 0);
    CHECK(check_sigma3(6, 2).pass);
    for (unsigned long n = 1; n <= 30; ++n)
        for (unsigned long j = 0; j < n; ++j)
            CHECK(check_sigma3(n, j).pass);
}

TEST_CASE("sigma1 specializes to the proof polynomial plus the cubic term") {
    // Sigma1(p, j) = Sigma2(p, j) + p^3 (j+1)(3j+1)(3j+2)
    for (unsigned long p : {7ul, 13ul, 97ul, 211ul})
        for (unsigned long j = 0; j <= 10; ++j) {
            ExactInteger P(p), J(j);
            ExactInteger sigma2 = J * (J + 1) * (J + 3) + P * (2 - J * J) * (3 * J + 1) -
                                  P * P * (J + 2) * (3 * J + 1) * (3 * J + 2);
            CHECK(sigma1_poly(P, J) ==
                  sigma2 + P * P * P * (J + 1) * (3 * J + 1) * (3 * J + 2));
        }
}

TEST_CASE("aux binomial shift identities") {
    for (unsigned long p : {7ul, 13ul, 19ul}) {
        auto checks = check_aux_binomial_ids(p);
        REQUIRE(checks.size() == 2);
        CHECK(checks[0].pass);
        CHECK(checks[1].pass);
    }
    // primality is irrelevant: every integer = 1 mod 3 works
    for (unsigned long q = 7; q <= 100; q += 3)
        for (const auto& c : check_aux_binomial_ids(q))
            CHECK(c.pass);
    CHECK_THROWS(check_aux_binomial_ids(8));
}

TEST_CASE("transform re-expansions") {
    for (unsigned long n : {0ul, 1ul, 40ul})
        for (const auto& c : check_transforms(n))
            CHECK(c.pass);
    for (unsigned long n = 0; n <= 50; ++n)
        for (const auto& c : check_transforms(n))
            CHECK(c.pass);
}
