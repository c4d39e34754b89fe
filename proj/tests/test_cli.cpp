#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

#include "skewortho/cli.hpp"

using namespace skewortho;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "skewortho");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string last_field(const std::string& line) { return line.substr(line.rfind(',') + 1); }

}  // namespace

TEST_CASE("verify prints one PASS line per check") {
    const auto r = run({"verify", "--weight", "jacobi", "--a", "0", "--b", "0", "--beta", "4", "--N", "4"});
    CHECK(r.code == kExitOk);
    for (const char* name : {"ortho1", "antidual", "gcd-vs-sum", "recursion-residual"})
        CHECK(r.out.find(std::string("PASS ") + name) != std::string::npos);
}

TEST_CASE("a failing check exits 1 and names the check") {
    const auto r = run({"verify", "--weight", "gaussian", "--beta", "1", "--N", "4", "--tol-ortho", "1e-30"});
    CHECK(r.code == kExitCheckFailed);
    CHECK(r.out.find("FAIL ortho1") != std::string::npos);
    CHECK(r.err.find("ortho1") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run({"verify", "--beta", "2"}).code == kExitUsage);
    CHECK(run({"density", "--weight", "jacobi", "--a", "-3", "--beta", "1", "--N", "4"}).code == kExitUsage);
    CHECK(run({"nonsense"}).code == kExitUsage);
    CHECK(run({"density", "--weight", "laguerre", "--format", "xml"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
}

TEST_CASE("density table has the documented columns") {
    const auto r = run({"density", "--weight", "laguerre", "--a", "0.5", "--beta", "1", "--N", "50", "--points", "200", "--format",
                        "csv"});
    REQUIRE(r.code == kExitOk);
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,S_exact,S_asymptotic");
    int rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 200);
}

TEST_CASE("gcd and sum kernels agree through the tool") {
    const std::vector<std::string> base = {"kernel", "--weight", "jacobi", "--a", "0.3", "--b", "0.7", "--beta", "1",
                                           "--N", "4", "--x", "0.2", "--y", "-0.3"};
    auto gcd = base, sum = base;
    gcd.insert(gcd.end(), {"--method", "gcd"});
    sum.insert(sum.end(), {"--method", "sum"});
    const auto a = run(gcd), b = run(sum);
    REQUIRE(a.code == kExitOk);
    REQUIRE(b.code == kExitOk);
    const auto value = [](const std::string& out) {
        std::istringstream in(out);
        std::string line, last;
        while (std::getline(in, line))
            if (!line.empty()) last = line;
        return std::stod(last_field(last));
    };
    CHECK(std::abs(value(a.out) - value(b.out)) < 1e-10);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::string> args = {"eval", "--weight", "gaussian", "--beta", "4", "--order", "5", "--points", "17",
                                           "--format", "json"};
    const auto a = run(args), b = run(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"metadata\"") != std::string::npos);
    CHECK(a.out.find("\"tool_version\"") != std::string::npos);
}

TEST_CASE("partition function through the tool") {
    const auto r = run({"partition", "--weight", "gaussian", "--beta", "4", "--N", "1"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out.find("25.13274122871834") != std::string::npos);
}
