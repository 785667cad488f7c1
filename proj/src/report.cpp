#include "dombv/report.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dombv {

using ordered_json = nlohmann::ordered_json;

const char* to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "pass";
        case Outcome::Fail: return "fail";
        case Outcome::Excluded: return "excluded";
    }
    return "?";
}

Outcome outcome_from_string(const std::string& s) {
    if (s == "pass") return Outcome::Pass;
    if (s == "fail") return Outcome::Fail;
    if (s == "excluded") return Outcome::Excluded;
    throw std::invalid_argument("unknown outcome: " + s);
}

void Report::finalize() {
    std::stable_sort(records.begin(), records.end(),
                     [](const VerificationRecord& a, const VerificationRecord& b) {
                         if (a.prime != b.prime)
                             return a.prime < b.prime;
                         return a.check_id < b.check_id;
                     });
    summary = Summary{};
    for (auto& r : records) {
        if (config.no_timing)
            r.elapsed_us = 0;
        auto& counts = summary.by_check.try_emplace(r.check_id).first->second;
        switch (r.outcome) {
            case Outcome::Pass: ++summary.passed; ++counts[0]; break;
            case Outcome::Fail: ++summary.failed; ++counts[1]; break;
            case Outcome::Excluded: ++summary.excluded; ++counts[2]; break;
        }
    }
    if (config.no_timing)
        total_elapsed_us = 0;
}

namespace {

ordered_json config_to_json(const ReportConfig& c) {
    ordered_json j;
    j["command"] = c.command;
    j["checks"] = c.checks;
    j["pmin"] = c.pmin;
    j["pmax"] = c.pmax;
    j["engine"] = c.engine;
    j["nmax"] = c.nmax;
    j["jobs"] = c.jobs;
    j["no_timing"] = c.no_timing;
    j["seed"] = c.seed;
    return j;
}

ReportConfig config_from_json(const ordered_json& j) {
    ReportConfig c;
    c.command = j.at("command").get<std::string>();
    c.checks = j.at("checks").get<std::vector<std::string>>();
    c.pmin = j.at("pmin").get<std::uint64_t>();
    c.pmax = j.at("pmax").get<std::uint64_t>();
    c.engine = j.at("engine").get<std::string>();
    c.nmax = j.at("nmax").get<unsigned long>();
    c.jobs = j.at("jobs").get<unsigned>();
    c.no_timing = j.at("no_timing").get<bool>();
    c.seed = j.at("seed").get<std::int64_t>();
    return c;
}

} // namespace

std::string to_json(const Report& report) {
    ordered_json j;
    j["tool"] = report.tool;
    j["tool_version"] = report.tool_version;
    j["config"] = config_to_json(report.config);
    ordered_json recs = ordered_json::array();
    for (const auto& r : report.records) {
        ordered_json jr;
        jr["check_id"] = r.check_id;
        jr["prime"] = r.prime;
        jr["modulus_power"] = r.modulus_power;
        jr["case_label"] = r.case_label;
        jr["lhs"] = r.lhs;
        jr["rhs"] = r.rhs;
        jr["result"] = to_string(r.outcome);
        jr["elapsed_us"] = r.elapsed_us;
        recs.push_back(std::move(jr));
    }
    j["records"] = std::move(recs);
    ordered_json by_check;
    for (const auto& [id, counts] : report.summary.by_check) {
        by_check[id] = {{"pass", counts[0]}, {"fail", counts[1]}, {"excluded", counts[2]}};
    }
    j["summary"] = {{"pass", report.summary.passed},
                    {"fail", report.summary.failed},
                    {"excluded", report.summary.excluded},
                    {"by_check", std::move(by_check)}};
    j["total_elapsed_us"] = report.total_elapsed_us;
    return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text);
    Report rep;
    rep.tool = j.at("tool").get<std::string>();
    rep.tool_version = j.at("tool_version").get<std::string>();
    rep.config = config_from_json(j.at("config"));
    for (const auto& jr : j.at("records")) {
        VerificationRecord r;
        r.check_id = jr.at("check_id").get<std::string>();
        r.prime = jr.at("prime").get<std::uint64_t>();
        r.modulus_power = jr.at("modulus_power").get<int>();
        r.case_label = jr.at("case_label").get<std::string>();
        r.lhs = jr.at("lhs").get<std::string>();
        r.rhs = jr.at("rhs").get<std::string>();
        r.outcome = outcome_from_string(jr.at("result").get<std::string>());
        r.elapsed_us = jr.at("elapsed_us").get<std::int64_t>();
        rep.records.push_back(std::move(r));
    }
    const auto& js = j.at("summary");
    rep.summary.passed = js.at("pass").get<std::uint64_t>();
    rep.summary.failed = js.at("fail").get<std::uint64_t>();
    rep.summary.excluded = js.at("excluded").get<std::uint64_t>();
    for (const auto& [id, counts] : js.at("by_check").items()) {
        rep.summary.by_check[id] = {counts.at("pass").get<std::uint64_t>(),
                                    counts.at("fail").get<std::uint64_t>(),
                                    counts.at("excluded").get<std::uint64_t>()};
    }
    rep.total_elapsed_us = j.at("total_elapsed_us").get<std::int64_t>();
    return rep;
}

namespace {

// CSV value quoting: labels may contain commas
std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

std::string to_csv(const Report& report) {
    std::ostringstream os;
    os << "check_id,prime,modulus_power,case_label,lhs,rhs,pass,elapsed_ms\n";
    for (const auto& r : report.records) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%lld.%03lld",
                      static_cast<long long>(r.elapsed_us / 1000),
                      static_cast<long long>(r.elapsed_us % 1000));
        os << csv_quote(r.check_id) << ',' << r.prime << ',' << r.modulus_power << ','
           << csv_quote(r.case_label) << ',' << csv_quote(r.lhs) << ','
           << csv_quote(r.rhs) << ',' << to_string(r.outcome) << ',' << ms << '\n';
    }
    return os.str();
}

} // namespace dombv
