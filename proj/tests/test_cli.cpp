#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "swhw/cli.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int c = swhw::cli::run(args, out, err);
    return {c, out.str(), err.str()};
}

json call_json(std::vector<std::string> args) {
    args.push_back("--json");
    return json::parse(call(args).out);
}

std::string temp_file(const std::string& name, const std::string& body) {
    std::string path = "swhw_cli_" + name;
    std::ofstream(path) << body;
    return path;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("symbol") {
    auto r = call({"symbol", "-1", "-1"});
    CHECK(r.code == 0);
    CHECK(r.out == "{2, inf}\n");
    CHECK(call({"symbol", "2", "7"}).out == "0\n");
    // {3, 5} ramifies at 3 and 5 only; (3,5)_3 = (5/3) = -1
    auto s = call({"symbol", "3", "5", "--place", "3"});
    CHECK(s.out == "{3, 5}\n(3,5)_3 = -1\n");
    auto j = call_json({"symbol", "-1", "-1"});
    CHECK(j["class"] == json::array({"2", "inf"}));
    CHECK(j["exit_code"] == 0);
    CHECK(call({"symbol", "-1", "-1", "--field", "R"}).out == "1\n");
    CHECK(call({"symbol", "-1", "-1", "--field", "Qp:3"}).out == "0\n");
}

TEST_CASE("input errors exit 2") {
    CHECK(call({}).code == 2);
    CHECK(call({"symbol", "1"}).code == 2);
    CHECK(call({"symbol", "0", "1"}).code == 2);
    CHECK(call({"symbol", "2", "3", "--field", "Qp:4"}).code == 2);
    CHECK(call({"hw", "--gram", "no_such_file.json"}).code == 2);
    CHECK(call({"serre", "--poly", "x^2-2x+1"}).code == 2);
    CHECK(call({"serre", "--poly", "(x^2-2)(x^2-3)", "--split", "q2,q5"}).code == 2);
    CHECK(call({"sw", "--hyp", "chi5"}).code == 2);
    CHECK(call({"profile", "hypersurface", "--n", "3", "--d", "4"}).code == 2);
    auto r = call({"frobnicate"});
    CHECK(r.code == 2);
    CHECK_FALSE(r.err.empty());
    CHECK(call({"--help"}).code == 0);
}

TEST_CASE("hw") {
    auto g = temp_file("gram.json", R"([[2,0,0],[0,-3,0],[0,0,"-5"]])");
    auto r = call({"hw", "--gram", g});
    CHECK(r.code == 0);
    CHECK(r.out == "dim=3\ndiagonal=<2, -3, -5>\nhw1=30\nhw2={3, inf}\nsignature=(1,2)\n");
    auto j = call_json({"hw", "--gram", g});
    CHECK(j["hw1"] == "30");
    CHECK(j["hw2"] == json::array({"3", "inf"}));
    CHECK(call({"hw", "--gram", g, "--field", "R"}).out.find("hw2=1\n") != std::string::npos);
    // hyperbolic plane: <1, -1>
    auto h = temp_file("hyp.json", "[[0,1],[1,0]]");
    CHECK(call({"hw", "--gram", h}).out.find("hw1=-1\nhw2=0\n") != std::string::npos);
    auto bad = temp_file("deg.json", "[[1,1],[1,1]]");
    CHECK(call({"hw", "--gram", bad}).code == 2);
    auto asym = temp_file("asym.json", "[[1,2],[0,1]]");
    CHECK(call({"hw", "--gram", asym}).code == 2);
    for (auto* f : {"gram.json", "hyp.json", "deg.json", "asym.json"}) std::remove((std::string("swhw_cli_") + f).c_str());
}

TEST_CASE("sw") {
    CHECK(call({"sw", "--chars", "-1,-1"}).out == "dim=2\nsw1=1\nsw2={2, inf}\n");
    // hyperbolic summand with det chi_5 contributes c_5
    CHECK(call({"sw", "--hyp", "chi5:1"}).out == "dim=2\nsw1=1\nsw2={5, inf}\n");
    CHECK(call({"sw", "--hyp", "chi5^2:1"}).out == "dim=2\nsw1=1\nsw2=0\n");
    auto j = call_json({"sw", "--chars", "2,3", "--hyp", "-1*chi7:2"});
    CHECK(j["dim"] == 6);
    CHECK(j["sw1"] == "6");
}

TEST_CASE("serre") {
    auto r = call({"serre", "--poly", "(x^2-2)(x^2-3)", "--split", "q2,q3"});
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "lhs={2, 3} rhs={2, 3} EQUAL");
    CHECK(call({"serre", "--poly", "x^3-3x-1", "--split", "o3"}).out == "lhs=0 rhs=0 EQUAL\ndisc=1\n");
    auto u = call({"serre", "--poly", "x^3-2"});
    CHECK(u.code == 0);
    CHECK(first_line(u.out) == "lhs=? rhs=0 oracle-unavailable");
    auto j = call_json({"serre", "--poly", "(x^2-2)(x^2-3)", "--split", "q2,q3"});
    CHECK(j["status"] == "EQUAL");
    CHECK(j["lhs"] == j["rhs"]);
    CHECK(j["disc"] == "6");
    CHECK(call({"serre", "--poly", "x^5-x-1", "--max-degree", "4"}).code == 2);
}

TEST_CASE("profile") {
    auto r = call({"profile", "hypersurface", "--n", "2", "--d", "4", "--check", "congruences"});
    CHECK(r.code == 0);
    CHECK(r.out.find("hodge middle=1 20 1") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
    auto c = call({"profile", "hypersurface", "--n", "2", "--d", "4", "--field", "Qp:5", "--hw2", "0", "--check", "crystalline"});
    CHECK(c.code == 0);
    auto j = call_json({"profile", "hypersurface", "--n", "4", "--d", "3"});
    CHECK(j["profile"]["n"] == 4);
    CHECK(call({"profile", "congruences"}).code == 0);
    auto rs = call({"profile", "real-selftest", "--count", "20"});
    CHECK(rs.code == 0);
    CHECK(rs.out == "cases=20 failures=0\n");

    // quartic surface; the identity predicts sw2 = {5, inf} from hw2 = {2, inf}
    std::string body = R"({"n":2,"betti":[1,0,22,0,1],"hodge":[[1,0,1],[0,20,0],[1,0,1]],"dX":"-1","eq":["1","1"],)"
                       R"("hw2":["2","inf"],"sw2":SW,"ell":5,"field":"Q"})";
    auto with_sw2 = [&](const std::string& v) {
        std::string b = body;
        b.replace(b.find("SW"), 2, v);
        return temp_file("profile.json", b);
    };
    auto pred = call({"profile", "eval", "--file", with_sw2("null"), "--form", "graded"});
    CHECK(pred.code == 0);
    CHECK(pred.out.find("predicted sw2={5, inf}") != std::string::npos);
    for (const char* form : {"plain", "primed", "graded"}) {
        auto ok = call({"profile", "eval", "--file", with_sw2(R"(["5","inf"])"), "--form", form});
        CHECK(ok.code == 0);
        CHECK(ok.out.find("HOLDS") != std::string::npos);
        auto bad = call({"profile", "eval", "--file", with_sw2(R"(["2","inf"])"), "--form", form});
        CHECK(bad.code == 1);
        CHECK(bad.out.find("difference={2, 5}") != std::string::npos);
    }
    auto jb = call_json({"profile", "eval", "--file", with_sw2(R"(["2","inf"])"), "--form", "graded"});
    CHECK(jb["difference"] == json::array({"2", "5"}));
    CHECK(jb["exit_code"] == 1);
    CHECK(call({"profile", "eval", "--file", with_sw2("null"), "--form", "sideways"}).code == 2);
    std::remove("swhw_cli_profile.json");
}

TEST_CASE("boundary") {
    // <3, 7*5> over Q_7: r = 1, boundary is the class of 3
    auto r = call({"boundary", "hw", "--p", "7", "--diag", "3,35"});
    CHECK(r.code == 0);
    CHECK(r.out == "hw p=7 diag=3,35: formula=3 direct=3 EQUAL\n");
    // r = 2, det V1 = {2}: {-1} + {2} = {-2}, which is the class of 2 in F_5
    CHECK(call({"boundary", "sw", "--p", "5", "--v1", "2,1", "--chi", "5"}).out.find("formula=2 direct=2 EQUAL") !=
          std::string::npos);
    CHECK(call({"boundary", "hw", "--p", "7", "--diag", "49"}).code == 0);
    CHECK(call({"boundary", "sw", "--p", "5", "--v1", "2", "--chi", "2"}).code == 2);
    auto s = call({"boundary", "selftest", "--cases", "30"});
    CHECK(s.code == 0);
    CHECK(s.out == "cases=60 failures=0\n");
    for (const auto& c : swhw::cli::boundary_selftest(5, 30)) CHECK(c.equal());
}

TEST_CASE("symcx selftest") {
    auto r = call({"symcx", "selftest", "--seeds", "5", "--max-dim", "8"});
    CHECK(r.code == 0);
    CHECK(r.out.find("seeds=5") == 0);
    CHECK(r.out.find("failures=0") != std::string::npos);
    auto j = call_json({"symcx", "selftest", "--seeds", "3"});
    CHECK(j["failures"].empty());
    CHECK(j["max_dim"] == 12);
}
