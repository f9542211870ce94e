#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "extremal/cli.hpp"
#include "extremal/report.hpp"
#include "extremal/verify.hpp"

using namespace extremal;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string line; std::getline(in, line);)
        out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("format_real")
{
    CHECK(format_real(0.5) == "0.5");
    CHECK(format_real(6.5) == "6.5");
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1e300) == "1.0000000000000001e+300");
    CHECK(format_real(-2.0) == "-2");
}

TEST_CASE("json round trip")
{
    AssertionReport r;
    r.assertion = "a2";
    r.kernels = {"n_over_phi"};
    r.range_hi = 1000;
    r.checked = 999;
    r.skip_reasons = {{"kernel_domain", 3}};
    r.violations = {{17, 1.5, 1.25, -0.25}};
    r.violation_count = 4;
    r.min_slack = SlackPoint{17, -0.25};
    r.equality_witnesses = {2, 6, 30};
    r.equality_count = 3;
    r.diagnostics = {{"max_pw_over_ln_n", 1.4426950408889634}, {"max_pw_over_ln_n_n", 2}};
    const auto back = report_from_json(nlohmann::json::parse(to_json(r).dump()));
    CHECK(back == r);

    AssertionReport empty;
    empty.assertion = "maxord";
    const auto j = to_json(empty);
    CHECK(j.at("min_slack").is_null());
    CHECK(report_from_json(j) == empty);
}

TEST_CASE("csv rows")
{
    CHECK(kernel_label(std::vector<std::string>{"ln_phi", "ln_sigma"}) == "ln_phi+ln_sigma");
    AssertionReport r;
    r.assertion = "a6";
    r.kernels = {"ratio2"};
    r.range_hi = 1000;
    r.checked = 499;
    r.skipped = 500;
    r.min_slack = SlackPoint{5, 0.0};
    r.equality_count = 4;
    CHECK(summary_csv_row(r) == "a6,ratio2,2,1000,499,500,0,5,0,4");
    const auto c = make_exact_check(AssertionId::a8, 12, 12, 28, Direction::le);
    CHECK(tabulate_csv_row(c, "sigma_k:1") == "12,a8,sigma_k:1,12,28,16,true");
}

TEST_CASE("cli verify json")
{
    const auto r = cli({"verify", "--assertion", "a6", "--kernel", "ratio2", "--max", "1000"});
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("checked") == 499);
    CHECK(j.at("equality_witnesses") == nlohmann::json::array({5, 25, 125, 625}));
    CHECK(j.at("range") == nlohmann::json::array({2, 1000}));
}

TEST_CASE("cli verify csv for several assertions")
{
    const auto r = cli({"verify", "--assertion", "a5", "--assertion", "a8", "--max", "2000", "--format", "csv"});
    CHECK(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 1 + default_kernel_selections(AssertionId::a5).size() +
                             default_kernel_selections(AssertionId::a8).size());
    CHECK(ls[0] == kSummaryCsvHeader);
    CHECK(ls[1].starts_with("a5,ln_phi,2,2000,"));
}

TEST_CASE("cli verify writes a file")
{
    const auto path = std::filesystem::temp_directory_path() / "extremal_cli_test.json";
    const auto r = cli({"verify", "--assertion", "a2", "--max", "500", "--out", path.string()});
    CHECK(r.code == kExitOk);
    std::ifstream in(path);
    const auto j = nlohmann::json::parse(in);
    CHECK(j.is_array());
    CHECK(j.size() == default_kernel_selections(AssertionId::a2).size());
    CHECK_FALSE(r.out.empty());
    std::filesystem::remove(path);
}

TEST_CASE("cli usage errors exit 2")
{
    CHECK(cli({}).code == kExitUsage);
    CHECK(cli({"verify", "--assertion", "a2", "--kernel", "ln_phi", "--max", "100"}).code == kExitUsage);
    CHECK(cli({"verify", "--assertion", "a1", "--kernel", "nope", "--max", "100"}).code == kExitUsage);
    CHECK(cli({"verify", "--assertion", "zz"}).code == kExitUsage);
    CHECK(cli({"verify", "--max", "abc"}).code == kExitUsage);
    CHECK(cli({"verify", "--assertion", "a1", "--max", "100", "--format", "xml"}).code == kExitUsage);
    CHECK(cli({"tabulate", "--assertion", "a1", "--min", "10", "--max", "5"}).code == kExitUsage);
    CHECK(cli({"tabulate", "--assertion", "a1", "--max", "5", "--format", "json"}).code == kExitUsage);
    const auto misuse = cli({"verify", "--assertion", "a2", "--kernel", "ln_phi", "--max", "100"});
    CHECK(misuse.err.find("decreasing") != std::string::npos);
}

TEST_CASE("cli tabulate")
{
    const auto r = cli({"tabulate", "--assertion", "a8", "--kernel", "sigma_k:1", "--min", "11", "--max", "12"});
    CHECK(r.code == kExitOk);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == kTabulateCsvHeader);
    CHECK(ls[1] == "11,a8,sigma_k:1,12,12,0,true");
    CHECK(ls[2] == "12,a8,sigma_k:1,12,28,16,true");
}

TEST_CASE("cli extremal")
{
    const auto r = cli({"extremal", "--assertion", "a5", "--kernel", "ratio1", "--max", "1000"});
    CHECK(r.code == kExitOk);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("witnesses") == nlohmann::json::array({3, 9, 27, 81, 243, 729}));
    CHECK(j.at("extremal_lhs") == 6.5);
    const auto csv = cli({"extremal", "--assertion", "a6", "--kernel", "sigma_k:2", "--max", "100", "--format",
                          "csv"});
    CHECK(lines(csv.out) == std::vector<std::string>{"n", "2", "4", "8", "16", "32", "64"});
}

TEST_CASE("cli worked examples")
{
    const auto r = cli({"worked-examples", "--max", "20000", "--workers", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("ratio2-minimum") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("table limit environment variable")
{
    ::setenv(kTableLimitEnv, "not-a-number", 1);
    CHECK(cli({"verify", "--assertion", "a5", "--max", "100"}).code == kExitUsage);
    ::setenv(kTableLimitEnv, "2000000", 1);
    CHECK(cli({"verify", "--assertion", "a5", "--kernel", "ratio1", "--max", "100"}).code == kExitOk);
    ::unsetenv(kTableLimitEnv);
}
