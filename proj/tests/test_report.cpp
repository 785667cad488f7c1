#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "dombv/congruence.hpp"
#include "dombv/report.hpp"

using namespace dombv;

namespace {

Report sample_report(bool no_timing) {
    SweepConfig cfg;
    cfg.checks = {"theorem4", "aux"};
    cfg.pmin = 5;
    cfg.pmax = 40;
    cfg.engine = Engine::Exact;
    cfg.no_timing = no_timing;
    return sweep(cfg);
}

} // namespace

TEST_CASE("outcome strings round-trip") {
    for (Outcome o : {Outcome::Pass, Outcome::Fail, Outcome::Excluded})
        CHECK(outcome_from_string(to_string(o)) == o);
    CHECK_THROWS(outcome_from_string("maybe"));
}

TEST_CASE("json round-trips the full report") {
    Report r = sample_report(false);
    std::string text = to_json(r);
    Report back = report_from_json(text);
    CHECK(back == r);
    CHECK(to_json(back) == text);
}

TEST_CASE("no-timing reports are byte-identical across runs") {
    Report a = sample_report(true);
    Report b = sample_report(true);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_csv(a) == to_csv(b));
    for (const auto& rec : a.records)
        CHECK(rec.elapsed_us == 0);
    CHECK(a.total_elapsed_us == 0);
}

TEST_CASE("summary tallies match the records") {
    Report r = sample_report(false);
    std::uint64_t pass = 0, fail = 0, excl = 0;
    for (const auto& rec : r.records) {
        pass += rec.outcome == Outcome::Pass;
        fail += rec.outcome == Outcome::Fail;
        excl += rec.outcome == Outcome::Excluded;
    }
    CHECK(r.summary.passed == pass);
    CHECK(r.summary.failed == fail);
    CHECK(r.summary.excluded == excl);
    std::uint64_t from_by_check = 0;
    for (const auto& [id, counts] : r.summary.by_check)
        from_by_check += counts[0] + counts[1] + counts[2];
    CHECK(from_by_check == r.records.size());
}

TEST_CASE("csv has the fixed schema") {
    Report r = sample_report(true);
    std::string csv = to_csv(r);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "check_id,prime,modulus_power,case_label,lhs,rhs,pass,elapsed_ms");
    std::size_t rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty())
            ++rows;
    CHECK(rows == r.records.size());
    CHECK(csv.find("theorem4") != std::string::npos);
    CHECK(csv.find("aux/sum_k1") != std::string::npos);
    // labels contain commas and must come out quoted
    CHECK(csv.find("\"p = x^2+3y^2, x=2, y=1\"") != std::string::npos);
}

TEST_CASE("residues are serialized as decimal strings") {
    Report r = sample_report(true);
    std::string text = to_json(r);
    Report back = report_from_json(text);
    for (const auto& rec : back.records)
        if (rec.outcome != Outcome::Excluded) {
            CHECK(!rec.lhs.empty());
            CHECK(rec.lhs.find_first_not_of("0123456789") == std::string::npos);
        }
}
