#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dombv/report.hpp"

namespace {

std::string binary() {
    const char* b = std::getenv("DOMBVERIFY_BIN");
    REQUIRE(b != nullptr);
    return b;
}

int run(const std::string& args, std::string* out = nullptr,
        const std::string& env = "") {
    std::string tmp =
        (std::filesystem::temp_directory_path() / "dombv_cli_out.txt").string();
    std::string cmd = env + (env.empty() ? "" : " ") + binary() + " " + args + " > " +
                      tmp + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    if (out) {
        std::ifstream in(tmp);
        std::ostringstream ss;
        ss << in.rdbuf();
        *out = ss.str();
    }
    std::filesystem::remove(tmp);
    return WEXITSTATUS(rc);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("seq prints exact values one per line") {
    std::string out;
    CHECK(run("seq --name domb --count 3", &out) == 0);
    CHECK(out == "1\n4\n28\n");
    CHECK(run("seq --name domb --count 1", &out) == 0);
    CHECK(out == "1\n");
    CHECK(run("seq --name liu+ --count 2", &out) == 0);
    CHECK(out == "1\n10\n");
    CHECK(run("seq --name liu- --count 3", &out) == 0);
    CHECK(out == "1\n2\n36\n");
    CHECK(run("seq --name bogus --count 1") == 2);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("verify --pmin 100 --pmax 5") == 2);
    CHECK(run("verify --check nonsense --pmin 5 --pmax 7") == 2);
    CHECK(run("verify --pmin 5 --pmax 7 --engine wrong") == 2);
    CHECK(run("identity --id bogus") == 2);
    CHECK(run("nonexistent-subcommand") == 2);
}

TEST_CASE("io errors exit 3") {
    CHECK(run("verify --check theorem4 --pmin 5 --pmax 7 --out /nonexistent-dir/x.json") == 3);
}

TEST_CASE("verify writes a report and exits by failure count") {
    auto dir = std::filesystem::temp_directory_path() / "dombv_cli_test";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "r.json").string();

    CHECK(run("verify --check all --pmin 5 --pmax 100 --engine both --format json --out " +
              path) == 0);
    dombv::Report r = dombv::report_from_json(slurp(path));
    CHECK(r.summary.failed == 0);
    CHECK(r.records.size() > 100);
    CHECK(r.config.engine == "both");

    // p=5 in the 16^k branch: excluded record, exit stays 0
    CHECK(run("verify --check theorem16 --pmin 5 --pmax 5 --out " + path) == 0);
    r = dombv::report_from_json(slurp(path));
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].outcome == dombv::Outcome::Excluded);
    CHECK(r.records[0].lhs == "4");
    CHECK(r.records[0].rhs == "9");

    std::filesystem::remove_all(dir);
}

TEST_CASE("no-timing reports are byte-identical") {
    auto dir = std::filesystem::temp_directory_path() / "dombv_cli_bytes";
    std::filesystem::create_directories(dir);
    std::string a = (dir / "a.json").string(), b = (dir / "b.json").string();
    CHECK(run("verify --check musun --pmin 5 --pmax 60 --no-timing --out " + a) == 0);
    CHECK(run("verify --check musun --pmin 5 --pmax 60 --no-timing --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv format has the fixed header") {
    auto dir = std::filesystem::temp_directory_path() / "dombv_cli_csv";
    std::filesystem::create_directories(dir);
    std::string path = (dir / "r.csv").string();
    CHECK(run("verify --check harmonic --pmin 5 --pmax 30 --format csv --out " + path) == 0);
    std::string csv = slurp(path);
    CHECK(csv.rfind("check_id,prime,modulus_power,case_label,lhs,rhs,pass,elapsed_ms\n", 0) == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("DOMB_CACHE_DIR persists the per-prime tables") {
    auto dir = std::filesystem::temp_directory_path() / "dombv_cli_cache";
    std::filesystem::remove_all(dir);
    std::string env = "DOMB_CACHE_DIR=" + dir.string();
    CHECK(run("verify --check harmonic --pmin 199 --pmax 199 --engine fast", nullptr,
              env) == 0);
    CHECK(std::filesystem::exists(dir / "bernoulli_mod_199.txt"));
    // second run loads the cached table and still passes
    std::string out;
    CHECK(run("verify --check harmonic --pmin 199 --pmax 199 --engine both", &out,
              env) == 0);
    dombv::Report r = dombv::report_from_json(out);
    CHECK(r.summary.failed == 0);
    std::filesystem::remove_all(dir);
}

TEST_CASE("identity subcommand spans the documented ids") {
    std::string out;
    CHECK(run("identity --id transforms --nmax 60 --no-timing", &out) == 0);
    dombv::Report r = dombv::report_from_json(out);
    CHECK(r.summary.failed == 0);
    CHECK(r.records.size() == 2 * 61);

    CHECK(run("identity --id pfaff --nmax 0", &out) == 0);
    r = dombv::report_from_json(out);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].prime == 0);
    CHECK(r.records[0].outcome == dombv::Outcome::Pass);
}
