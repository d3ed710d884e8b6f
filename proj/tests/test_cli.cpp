#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <stdexcept>

#include "hkt/cli.hpp"

using namespace hkt;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "hkverify");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("usage errors exit 2 and list valid ids")
{
    CHECK(run({}).code == 2);
    const Run bad_model = run({"verify", "--model", "nosuch"});
    CHECK(bad_model.code == 2);
    CHECK(bad_model.err.find("flat1") != std::string::npos);
    const Run bad_example = run({"cocycle", "--example", "nosuch"});
    CHECK(bad_example.code == 2);
    CHECK(bad_example.err.find("taub-nut") != std::string::npos);
    CHECK(run({"special", "--format", "xml"}).code == 2);
    CHECK(run({"verify", "--points", "0"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"contact", "--example", "theta"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify flat1 passes and reports sorted checks")
{
    const Run r = run({"verify", "--model", "flat1", "--points", "64", "--seed", "42", "--tol", "1e-7", "--format", "json"});
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["command"] == "verify");
    CHECK(j["model"] == "flat1");
    CHECK(j["seed"] == 42);
    CHECK(j["pass"] == true);
    std::vector<std::string> ids;
    for (const auto& c : j["checks"]) {
        ids.push_back(c["id"]);
        CHECK(c["pass"] == true);
        CHECK(c["points"] == 64);
    }
    CHECK(ids.size() == 16);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(std::find(ids.begin(), ids.end(), "flat1.ASD4") != ids.end());
}

TEST_CASE("key order of the structured report is fixed")
{
    const json j = json::parse(run({"cocycle", "--example", "elliptic", "--format", "json"}).out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    // nlohmann::json sorts keys; compare against the raw text order instead.
    const std::string raw = run({"cocycle", "--example", "elliptic", "--format", "json"}).out;
    std::size_t last = 0;
    for (const char* k : {"\"version\"", "\"command\"", "\"model\"", "\"seed\"", "\"tolerance\"", "\"checks\"", "\"pass\""}) {
        const std::size_t pos = raw.find(k);
        REQUIRE(pos != std::string::npos);
        CHECK(pos >= last);
        last = pos;
    }
    CHECK(j["model"].is_null());
    CHECK(keys.size() == 7);
}

TEST_CASE("taub-nut reports the displayed identity as one exact check")
{
    const Run r = run({"cocycle", "--example", "taub-nut", "--format", "json"});
    const json j = json::parse(r.out);
    REQUIRE(j["checks"].size() == 1);
    const auto& c = j["checks"][0];
    CHECK(c["id"] == "taub-nut");
    CHECK(c["tol"] == 0.0);
    // The quadratic coefficient 1 leaves surviving terms; 1/2 is the one that holds.
    CHECK(c["pass"] == false);
    CHECK(c["max_defect"] == 6.0);
    CHECK(r.code == 1);
}

TEST_CASE("symbolic examples pass with zero defect")
{
    for (const char* id : {"flat-cocycle", "legendre", "feix", "elliptic"}) {
        const Run r = run({"cocycle", "--example", id, "--format", "json", "--points", "8"});
        CHECK_MESSAGE(r.code == 0, id);
        CHECK(json::parse(r.out)["checks"][0]["max_defect"] == 0.0);
    }
    CHECK(run({"contact", "--example", "iYA"}).code == 0);
}

TEST_CASE("identical seeded runs give byte-identical reports")
{
    const std::vector<std::string> args{"all", "--points", "16", "--seed", "9", "--format", "json"};
    const Run a = run(args), b = run(args);
    CHECK(a.out == b.out);
    const Run c = run({"all", "--points", "16", "--seed", "10", "--format", "json"});
    CHECK(c.out != a.out);

    const std::string path = "hkverify_test_report.json";
    const Run d = run({"special", "--points", "8", "--seed", "3", "--out", path});
    std::ifstream f(path);
    std::stringstream buf;
    buf << f.rdbuf();
    CHECK(buf.str() == run({"special", "--points", "8", "--seed", "3", "--format", "json"}).out);
    CHECK(d.out.find("PASS") != std::string::npos);
    std::remove(path.c_str());
    CHECK(run({"special", "--out", "/nonexistent-dir/x.json"}).code == 2);
}

TEST_CASE("all covers every registered check id")
{
    const json j = json::parse(run({"all", "--points", "4", "--format", "json"}).out);
    std::vector<std::string> ids;
    for (const auto& c : j["checks"]) ids.push_back(c["id"]);
    CHECK(ids == registered_ids());
    for (const char* want : {"flat-cocycle", "taub-nut", "legendre", "feix", "monopole-newton", "monopole-eq15",
                             "elliptic", "eh-constraint", "eh-quotient", "contact", "moment-quadric", "iYA", "theta",
                             "eta", "ray-singer", "flat1.validate", "flat2.validate", "semiflat1.validate"})
        CHECK_MESSAGE(std::find(ids.begin(), ids.end(), want) != ids.end(), want);
    std::size_t grouped = 0;
    for (const char* g : {"verify", "cocycle", "contact", "special"}) grouped += registered_ids(g).size();
    CHECK(grouped == ids.size());
}

TEST_CASE("a throwing check is reported as failed")
{
    const RegisteredCheck boom{"boom", "special", "", [](const RunOptions&) -> CheckEntry {
                                   throw std::runtime_error("boom");
                               }};
    const CheckReport r = run_checks("special", {&boom}, RunOptions{});
    REQUIRE(r.checks.size() == 1);
    CHECK_FALSE(r.pass);
    CHECK(std::isinf(r.checks[0].max_defect));
    CHECK(report_text(r).find("FAIL") != std::string::npos);
}
