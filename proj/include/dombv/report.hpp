#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dombv {

enum class Outcome { Pass, Fail, Excluded };

const char* to_string(Outcome o);
Outcome outcome_from_string(const std::string& s);

// One verified congruence (or one identity instance, where prime holds the
// integer parameter and modulus_power is 0 for exact equality). Excluded
// records keep any residuals that were computable, with empty strings
// otherwise; they never count as passes.
struct VerificationRecord {
    std::string check_id;
    std::uint64_t prime = 0;
    int modulus_power = 0;
    std::string case_label;
    std::string lhs;          // decimal residue (or exact rational)
    std::string rhs;
    Outcome outcome = Outcome::Fail;
    std::int64_t elapsed_us = 0;

    bool operator==(const VerificationRecord& o) const = default;
};

struct ReportConfig {
    std::string command;                  // "verify" | "identity"
    std::vector<std::string> checks;
    std::uint64_t pmin = 0;
    std::uint64_t pmax = 0;
    std::string engine;                   // "exact" | "fast" | "both" | "" for identity
    unsigned long nmax = 0;
    unsigned jobs = 1;
    bool no_timing = false;
    std::int64_t seed = 0;

    bool operator==(const ReportConfig& o) const = default;
};

struct Summary {
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::uint64_t excluded = 0;
    std::map<std::string, std::array<std::uint64_t, 3>> by_check;  // pass/fail/excluded

    bool operator==(const Summary& o) const = default;
};

struct Report {
    std::string tool;
    std::string tool_version;
    ReportConfig config;
    std::vector<VerificationRecord> records;
    Summary summary;
    std::int64_t total_elapsed_us = 0;

    bool operator==(const Report& o) const = default;

    // Sort records by (prime, check_id), recompute the summary, and zero the
    // timing fields when the config asks for reproducible bytes.
    void finalize();
};

std::string to_json(const Report& report);
Report report_from_json(const std::string& text);
std::string to_csv(const Report& report);

} // namespace dombv
