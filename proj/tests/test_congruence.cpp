#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "dombv/congruence.hpp"
#include "dombv/padic.hpp"
#include "dombv/quadform.hpp"

using namespace dombv;

namespace {

bool all_pass(const std::vector<VerificationRecord>& recs) {
    for (const auto& r : recs)
        if (r.outcome == Outcome::Fail)
            return false;
    return true;
}

const VerificationRecord& find_rec(const std::vector<VerificationRecord>& recs,
                                   const std::string& id) {
    for (const auto& r : recs)
        if (r.check_id == id)
            return r;
    throw std::runtime_error("record not found: " + id);
}

} // namespace

TEST_CASE("theorem checks at small primes") {
    for (Engine e : {Engine::Exact, Engine::Fast, Engine::Both}) {
        for (std::uint64_t p : {7ull, 11ull, 13ull}) {
            auto r4 = verify_theorem_4(p, e);
            REQUIRE(r4.size() == 1);
            CHECK(r4[0].outcome == Outcome::Pass);
            CHECK(r4[0].modulus_power == (p % 3 == 1 ? 3 : 2));
            auto r16 = verify_theorem_16(p, e);
            CHECK(r16[0].outcome == Outcome::Pass);
        }
        // frozen residues at p=7
        CHECK(verify_theorem_4(7, e)[0].lhs == "8");
        CHECK(verify_theorem_16(7, e)[0].lhs == "269");
    }
}

TEST_CASE("frozen companion residues") {
    auto mu = verify_mu_sun(13, Engine::Both);
    CHECK(mu[0].lhs == "28561");  // = 13^4, the q_p(2) factor vanishes mod 13
    CHECK(mu[0].rhs == "28561");
    auto dp = verify_domb_p_minus_1(11, Engine::Both);
    CHECK(dp[0].lhs == "2267");
}

TEST_CASE("p=5 carries measured residuals and is excluded in both branches") {
    auto r4 = verify_theorem_4(5, Engine::Both);
    REQUIRE(r4.size() == 1);
    CHECK(r4[0].outcome == Outcome::Excluded);
    CHECK(r4[0].lhs == "2");
    CHECK(r4[0].rhs == "12");
    CHECK(r4[0].modulus_power == 2);

    auto r16 = verify_theorem_16(5, Engine::Both);
    CHECK(r16[0].outcome == Outcome::Excluded);
    CHECK(r16[0].lhs == "4");
    CHECK(r16[0].rhs == "9");
}

TEST_CASE("lemma checks pass at sample primes") {
    for (Engine e : {Engine::Exact, Engine::Fast}) {
        CHECK(all_pass(verify_lemma_harmonic(7, e)));
        CHECK(all_pass(verify_lemma_harmonic(11, e)));
        CHECK(all_pass(verify_lemma_binom_pj(5, e)));
        CHECK(all_pass(verify_lemma_binom_pj(7, e)));
        CHECK(all_pass(verify_lemma_binom_pj(13, e)));
        CHECK(all_pass(verify_lemma_mpt(7, e)));
        CHECK(all_pass(verify_lemma_mpt(13, e)));
        CHECK(all_pass(verify_lemma_3k4(7, e)));
        CHECK(all_pass(verify_lemma_3k4(13, e)));
        CHECK(all_pass(verify_lemma_3k4(31, e)));
        CHECK(all_pass(verify_lemma_fuzhu(7, e)));
        CHECK(all_pass(verify_lemma_fuzhu(13, e)));
        CHECK(all_pass(verify_lemma_fuzhu(19, e)));
        CHECK(all_pass(verify_lemma_p2j(7, e)));
        CHECK(all_pass(verify_lemma_p2j(13, e)));
        CHECK(all_pass(verify_lemma_h2jhj(7, e)));
        CHECK(all_pass(verify_lemma_h2jhj(37, e)));
        CHECK(all_pass(verify_aux_congruences(7, e)));
        CHECK(all_pass(verify_aux_congruences(11, e)));
        CHECK(all_pass(verify_aux_congruences(13, e)));
        CHECK(all_pass(verify_domb_p_minus_1(5, e)));
        CHECK(all_pass(verify_domb_p_minus_1(7, e)));
        CHECK(all_pass(verify_domb_p_minus_1(11, e)));
        CHECK(all_pass(verify_mu_sun(5, e)));
        CHECK(all_pass(verify_mu_sun(7, e)));
        CHECK(all_pass(verify_mu_sun(13, e)));
    }
}

TEST_CASE("division hazards are exercised at the stated indices") {
    // 3j+1 = p inside the j-range at p = 1 mod 3: representative shows it
    auto r13 = verify_lemma_binom_pj(13, Engine::Both);
    REQUIRE(r13.size() == 1);
    CHECK(r13[0].outcome == Outcome::Pass);
    CHECK(r13[0].case_label.find("j=4") != std::string::npos);

    auto r7 = verify_lemma_binom_pj(7, Engine::Both);
    CHECK(r7[0].case_label.find("j=2") != std::string::npos);

    // 3k+4 = p: the raw sum is not a p-adic integer, so term-wise reduction
    // must refuse; the p-multiplied form passes
    CHECK_THROWS_AS(reduce_rational(central_sum_exact(7, 4), 7, 3), NegativeValuation);
    CHECK(all_pass(verify_lemma_3k4(7, Engine::Both)));

    // wrong-class calls are signalled and sweeps mark them excluded
    auto excluded = verify_lemma_mpt(11, Engine::Both);
    REQUIRE(excluded.size() == 1);
    CHECK(excluded[0].outcome == Outcome::Excluded);
}

TEST_CASE("lemma p2j covers the large-j hazard for p = 2 mod 3") {
    auto recs = verify_lemma_p2j(11, Engine::Both);
    const auto& large = find_rec(recs, "p2j/large_j");
    CHECK(large.outcome == Outcome::Pass);
    // 3j+1 = 2p at j = (2p-1)/3 = 7
    CHECK(large.case_label.find("j=7") != std::string::npos);

    auto recs13 = verify_lemma_p2j(13, Engine::Both);
    CHECK(find_rec(recs13, "p2j/harmonic_link").outcome == Outcome::Pass);
    CHECK(find_rec(recs13, "p2j/harmonic_link").modulus_power == 3);
    // wrong class: the bridge needs (2p-2)/3 integral
    auto recs11 = verify_lemma_p2j(11, Engine::Both);
    CHECK(find_rec(recs11, "p2j/harmonic_link").outcome == Outcome::Excluded);
}

TEST_CASE("aux congruences record the matching sign of 2x") {
    auto recs = verify_aux_congruences(7, Engine::Both);
    const auto& b2x = find_rec(recs, "aux/binom_2x");
    CHECK(b2x.outcome == Outcome::Pass);
    // binom(3,2) = 3 = -4 mod 7
    CHECK(b2x.case_label.find("sign=-") != std::string::npos);

    auto recs13 = verify_aux_congruences(13, Engine::Both);
    CHECK(find_rec(recs13, "aux/binom_2x").case_label.find("sign=+") != std::string::npos);
}

TEST_CASE("engines agree on every check up to 60") {
    for (std::uint64_t p : primes_in(5, 60))
        for (const auto& id : all_check_ids())
            CHECK(all_pass(run_check(id, p, Engine::Both)));
}

TEST_CASE("engines agree at the top of the lemma sweep range") {
    for (std::uint64_t p : primes_in(290, 300))
        for (const auto& id : all_check_ids())
            CHECK(all_pass(run_check(id, p, Engine::Both)));
}

TEST_CASE("summation order does not matter for the exact sums") {
    const std::uint64_t p = 13;
    ExactRational forward = theorem_lhs_exact(p, 4);
    ExactRational backward(0);
    for (std::uint64_t k = p; k-- > 0;)
        backward += ExactRational(ExactInteger(k) * ExactInteger(k) * ExactInteger(k) *
                                  domb(k)) /
                    ExactRational(pow_int(4, k));
    CHECK(forward == backward);
    // pairwise tree
    std::vector<ExactRational> terms;
    for (std::uint64_t k = 0; k < p; ++k)
        terms.push_back(ExactRational(ExactInteger(k) * ExactInteger(k) *
                                      ExactInteger(k) * domb(k)) /
                        ExactRational(pow_int(4, k)));
    while (terms.size() > 1) {
        std::vector<ExactRational> next;
        for (std::size_t i = 0; i + 1 < terms.size(); i += 2)
            next.push_back(terms[i] + terms[i + 1]);
        if (terms.size() % 2 == 1)
            next.push_back(terms.back());
        terms = std::move(next);
    }
    CHECK(forward == terms[0]);
}

TEST_CASE("a perturbed constant is caught immediately") {
    // 43 -> 44 in the p = 1 mod 3 branch
    const std::uint64_t p = 7;
    QuadRep rep = represent(p);
    ExactRational x2(ExactInteger(rep.x) * ExactInteger(rep.x));
    ExactRational pp((unsigned long)p);
    ExactRational bad = -make_rational(64, 45) * x2 + make_rational(32, 45) * pp +
                        make_rational(44, 90) * pp * pp / x2;
    std::uint64_t lhs = reduce_rational(theorem_lhs_exact(p, 4), p, 3).residue_mod(3);
    CHECK(lhs != reduce_rational(bad, p, 3).residue_mod(3));
}

TEST_CASE("sweep mechanics") {
    SweepConfig cfg;
    cfg.checks = {};
    cfg.pmin = 5;
    cfg.pmax = 50;
    Report empty = sweep(cfg);
    CHECK(empty.records.empty());
    CHECK(empty.summary.failed == 0);

    cfg.checks = {"theorem4", "dombp1"};
    cfg.pmin = 5;
    cfg.pmax = 30;
    cfg.engine = Engine::Both;
    cfg.jobs = 3;
    Report r = sweep(cfg);
    CHECK(r.records.size() == 2 * primes_in(5, 30).size());
    CHECK(std::is_sorted(r.records.begin(), r.records.end(),
                         [](const VerificationRecord& a, const VerificationRecord& b) {
                             return std::tie(a.prime, a.check_id) <
                                    std::tie(b.prime, b.check_id);
                         }));
    CHECK(r.summary.failed == 0);
    CHECK(r.summary.excluded == 1);  // theorem4 at p=5
    CHECK(r.summary.passed + r.summary.excluded == r.records.size());

    // primes below 5 never enter the verification domain
    cfg.pmin = 2;
    cfg.pmax = 6;
    Report low = sweep(cfg);
    for (const auto& rec : low.records)
        CHECK(rec.prime == 5);
}
