#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "asymconv/cli.hpp"
#include "asymconv/errors.hpp"
#include "asymconv/json_io.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

using namespace asymconv;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "asymconv");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("asymconv_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path_ / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_CASE("types") {
    TempDir dir;
    const auto a = dir.write("a.json", R"({"-1/2": 1})");
    auto r = run({"types", a, a});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out) == Json{{"0", 3}});

    const auto e = dir.write("e.json", "{}");
    r = run({"types", e, e});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out) == Json::object());

    const auto bad = dir.write("bad.json", "{\"-1/2\":\n  1,,}");
    r = run({"types", bad, a});
    CHECK(r.code == kExitParse);
    CHECK(r.err.find("bad.json:2:") != std::string::npos);

    CHECK(run({"types", dir.file("missing.json"), a}).code != kExitOk);
    CHECK(run({"nonsense"}).code == kExitParse);
}

TEST_CASE("constant") {
    auto r = run({"constant", "-a", "-1/2", "-b", "-1/2", "-p", "0", "-q", "0"});
    REQUIRE(r.code == kExitOk);
    auto j = parse_json(r.out);
    CHECK(j["case"] == "Resonant");
    CHECK(j["degree"] == 1);
    CHECK(j["leading_coeff"][0].get<double>() == doctest::Approx(-kRhoNorm));

    r = run({"constant", "-a", "0", "-b", "0", "-p", "0", "-q", "0", "-j", "1", "-k", "1"});
    REQUIRE(r.code == kExitOk);
    j = parse_json(r.out);
    CHECK(j["case"] == "BothInteger");
    CHECK(j["raw"].get<double>() == doctest::Approx(-0.25));
    CHECK(j["leading_coeff"][0].get<double>() == doctest::Approx(-0.25 * kIntegerCaseScale));

    r = run({"constant", "-a", "0", "-b", "-1/2", "-j", "0"});
    REQUIRE(r.code == kExitOk);
    CHECK(parse_json(r.out)["case"] == "Smooth");

    r = run({"constant", "-a", "-3/2", "-b", "0"});
    CHECK(r.code == kExitDomain);
    CHECK(r.err.find("a + p/2 > -1") != std::string::npos);
    CHECK(run({"constant", "-a", "0.5", "-b", "0"}).code == kExitParse);
    CHECK(run({"constant", "-a", "0", "-b", "0", "-c", "left"}).code == kExitParse);
}

TEST_CASE("convolve") {
    TempDir dir;
    const auto e = dir.write("e.json", R"({"terms": [{"r": "-1/2", "m": 0, "n": 0, "log_coeffs": [[1, 0]]}], "smooth_order": 3})");
    auto r = run({"convolve", e, e});
    REQUIRE(r.code == kExitOk);
    auto j = parse_json(r.out);
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["r"] == "0");
    CHECK(j["terms"][0]["log_coeffs"].size() == 2);
    CHECK(j["terms"][0]["log_coeffs"][1][0].get<double>() == doctest::Approx(-kRhoNorm));

    const auto bad = dir.write("bad.json", R"({"terms": [], "smooth_order": 3, "extra": 1})");
    CHECK(run({"convolve", bad, e}).code == kExitParse);
}

TEST_CASE("bernstein") {
    TempDir dir;
    const auto a = dir.write("a.json", R"(["-1/2"])");
    const auto b = dir.write("b.json", R"(["-1/3", "-2/3"])");
    auto r = run({"bernstein", a, b});
    REQUIRE(r.code == kExitOk);
    auto j = parse_json(r.out);
    CHECK(j["raw"] == Json{"-7/6", "-5/6"});
    CHECK(j["canonical"] == Json{"-5/6", "-1/6"});

    r = run({"bernstein", a, a});
    CHECK(parse_json(r.out)["canonical"] == Json{"-1"});

    const auto z = dir.write("z.json", R"(["0"])");
    CHECK(run({"bernstein", z, b}).code == kExitDomain);
}

TEST_CASE("verify") {
    TempDir dir;
    const auto empty = dir.write("empty.json", "[]");
    auto r = run({"verify", empty});
    CHECK(r.code == kExitOk);
    CHECK(parse_json(r.out)["reports"].empty());

    const auto bad = dir.write("bad.json", R"([{"a": "-3/2", "b": "0"}])");
    CHECK(run({"verify", bad}).code == kExitDomain);

    const auto specs = dir.write("specs.json", R"([{"a": "-1/3", "b": "-1/4"}, {"a": "0", "b": "0", "j": 1, "k": 1}])");
    r = run({"verify", specs, "-o", dir.file("rep"), "--jobs", "2"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("rho_norm") != std::string::npos);
    const auto first = slurp(dir.file("rep.json"));
    auto j = parse_json(first);
    CHECK(j["reports"].size() == 2);
    CHECK(slurp(dir.file("rep.csv")).find('\n') != std::string::npos);

    r = run({"verify", specs, "-o", dir.file("rep2")});
    CHECK(slurp(dir.file("rep2.json")) == first);

    r = run({"--tolerance", "1e-30", "verify", specs});
    CHECK(r.code == kExitVerifyFailed);
    CHECK(r.err.find("specs failed") != std::string::npos);
}

TEST_CASE("ASYMCONV_TOL") {
    ::unsetenv("ASYMCONV_TOL");
    CHECK(tolerance_from_env() == kDefaultTolerance);
    ::setenv("ASYMCONV_TOL", "0.05", 1);
    CHECK(tolerance_from_env() == 0.05);
    ::setenv("ASYMCONV_TOL", "abc", 1);
    CHECK_THROWS_AS(tolerance_from_env(), ParseError);
    ::setenv("ASYMCONV_TOL", "-1", 1);
    CHECK_THROWS_AS(tolerance_from_env(), DomainError);

    TempDir dir;
    const auto specs = dir.write("specs.json", R"([{"a": "-1/3", "b": "-1/4"}])");
    ::setenv("ASYMCONV_TOL", "1e-30", 1);
    CHECK(run({"verify", specs}).code == kExitVerifyFailed);
    CHECK(run({"--tolerance", "0.01", "verify", specs}).code == kExitOk);
    ::unsetenv("ASYMCONV_TOL");
}

TEST_CASE("demo monomial") {
    TempDir dir;
    auto r = run({"demo", "monomial", "--n", "2", "--m", "3", "-o", dir.file("demo")});
    CHECK(r.code == kExitOk);
    auto j = parse_json(slurp(dir.file("demo.json")));
    CHECK(j["case"] == "Generic");
    CHECK(j["predicted_exponent"] == "-1/6");
    CHECK(slurp(dir.file("demo.csv")).size() > 0);
    CHECK(run({"demo", "monomial", "--n", "0"}).code == kExitParse);
}
