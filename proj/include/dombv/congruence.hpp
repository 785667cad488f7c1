#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dombv/exact.hpp"
#include "dombv/report.hpp"

namespace dombv {

// exact: every value is an ExactRational reduced only at the end.
// fast:  truncated p-adic arithmetic end to end.
// both:  run both and fail any record where the engines disagree.
enum class Engine { Exact, Fast, Both };

Engine engine_from_string(const std::string& s);
const char* to_string(Engine e);

// Registry of verifiable congruence families, in canonical order.
const std::vector<std::string>& all_check_ids();
bool is_check_id(const std::string& id);

// Each verifier emits one record per sub-congruence (families quantified
// over an inner parameter j/t fold into a single record whose case label
// names the range and whose residues belong to a fixed representative).
std::vector<VerificationRecord> verify_theorem_4(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_theorem_16(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_harmonic(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_binom_pj(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_mpt(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_3k4(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_fuzhu(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_p2j(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_lemma_h2jhj(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_aux_congruences(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_domb_p_minus_1(std::uint64_t p, Engine e);
std::vector<VerificationRecord> verify_mu_sun(std::uint64_t p, Engine e);

std::vector<VerificationRecord> run_check(const std::string& id, std::uint64_t p,
                                          Engine e);

struct SweepConfig {
    std::vector<std::string> checks;
    std::uint64_t pmin = 5;
    std::uint64_t pmax = 5;
    Engine engine = Engine::Exact;
    unsigned jobs = 1;
    bool no_timing = false;
    std::int64_t seed = 0;
};

// Runs every requested check on every prime in [pmin, pmax] (primes below 5
// are outside the verification domain and skipped). Per-check errors become
// failed records; the sweep itself never aborts.
Report sweep(const SweepConfig& cfg);

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi);

// Exact left-hand sides, exposed so oracle-style tests can pair them with
// independently perturbed right-hand sides.
ExactRational theorem_lhs_exact(std::uint64_t p, unsigned base);
ExactRational musun_lhs_exact(std::uint64_t p);
// sum_{k=0}^{(p-1)/2} binom(2k,k)^2 / ((3k+off) 16^k), and the same with an
// extra (H_{2k} - H_k) factor.
ExactRational central_sum_exact(std::uint64_t p, unsigned off);
ExactRational central_hsum_exact(std::uint64_t p, unsigned off);
// variant with denominator (k+1)
ExactRational central_sum_k1_exact(std::uint64_t p);

} // namespace dombv
