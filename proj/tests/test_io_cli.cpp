#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "ekm/io.hpp"
#include "test_util.hpp"

using ekm::AdmissibleSetup;
using ekm::Rational;

namespace {

bool setups_equal(const AdmissibleSetup& a, const AdmissibleSetup& b) {
    if (a.d0 != b.d0 || a.dinf != b.dinf || a.factors.size() != b.factors.size()) return false;
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        const auto& fa = a.factors[i];
        const auto& fb = b.factors[i];
        if (fa.dim != fb.dim || fa.x != fb.x || fa.s != fb.s) return false;
        if (fa.integrality.has_value() != fb.integrality.has_value()) return false;
        if (fa.integrality &&
            (fa.integrality->p != fb.integrality->p || fa.integrality->q != fb.integrality->q))
            return false;
    }
    return true;
}

#ifdef EKM_CLI_PATH
int run_cli(const std::string& args, std::string* out_path = nullptr) {
    std::string cmd = std::string(EKM_CLI_PATH) + " " + args + " 2>/dev/null";
    if (out_path) cmd += " > " + *out_path;
    else cmd += " > /dev/null";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string data_file(const std::string& name) {
    return std::string(EKM_TEST_DATA) + "/" + name;
}
#endif

} // namespace

TEST_CASE("setup JSON round trip is bit-exact") {
    ekm::testutil::Rng rng(51);
    for (int i = 0; i < 50; ++i) {
        AdmissibleSetup s = ekm::testutil::random_setup(rng, 4);
        if (!s.factors.empty() && i % 2 == 0)
            s.factors[0].integrality = ekm::IntegralityDatum{s.factors[0].s * Rational(3), 3};
        const ekm::json j = ekm::setup_to_json(s);
        const AdmissibleSetup back = ekm::setup_from_json(j);
        CHECK(setups_equal(s, back));
        // serialized form round-trips byte-identically as well
        CHECK(ekm::setup_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("parse errors are reported") {
    CHECK_THROWS_AS(ekm::setup_from_json(ekm::json::parse("[1,2]")), ekm::ParseError);
    CHECK_THROWS_AS(ekm::setup_from_json(ekm::json::parse(R"({"factors":[{"dim":1}]})")),
                    ekm::ParseError);
    CHECK_THROWS_AS(ekm::setup_from_json(ekm::json::parse(
                        R"({"factors":[{"dim":1,"x":"1/2","s":"2","p":2}]})")),
                    ekm::ParseError);
    CHECK_THROWS_AS(ekm::setup_from_json(ekm::json::parse(
                        R"({"factors":[{"dim":1,"x":"0.5","s":2}]})")),
                    ekm::ParseError);
}

TEST_CASE("verdict serialization carries the full record") {
    AdmissibleSetup ks;
    ks.factors = {{1, Rational(1, 2), Rational(2), std::nullopt},
                  {1, Rational(-1, 2), Rational(-2), std::nullopt}};
    const ekm::json j = ekm::verdict_to_json(ekm::classify(ks));
    CHECK(j["kind"] == "ExtremalCSC");
    CHECK(j["A"] == 0);
    CHECK(j["futaki"] == 0);
    CHECK(j["F"].size() == 5);
    CHECK(j["F"][0] == "7/8");
    CHECK(j["root_count"] == 0);
}

#ifdef EKM_CLI_PATH

TEST_CASE("cli classify: exit codes and determinism") {
    CHECK(run_cli("classify " + data_file("koiso-sakane.json")) == 0);
    CHECK(run_cli("classify " + data_file("genus2-unstable.json")) == 10);
    CHECK(run_cli("classify " + data_file("malformed.json")) == 2);
    CHECK(run_cli("classify " + data_file("does-not-exist.json")) == 2);

    std::string out1 = "/tmp/ekm_test_classify1.json", out2 = "/tmp/ekm_test_classify2.json";
    CHECK(run_cli("classify " + data_file("koiso-sakane.json"), &out1) == 0);
    CHECK(run_cli("classify " + data_file("koiso-sakane.json"), &out2) == 0);
    std::ifstream f1(out1), f2(out2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    CHECK(s1.str().find("ExtremalCSC") != std::string::npos);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
}

TEST_CASE("cli scan: header-only for empty result, rows in grid order") {
    std::string out = "/tmp/ekm_test_scan.csv";
    CHECK(run_cli("scan " + data_file("koiso-sakane.json") +
                      " --axis 0:1/10:9/10:8 --threads 2",
                  &out) == 0);
    std::ifstream f(out);
    std::string header;
    std::getline(f, header);
    CHECK(header == "x1,kind,A,futaki");
    int rows = 0;
    std::string line, first;
    while (std::getline(f, line)) {
        if (rows == 0) first = line;
        ++rows;
    }
    CHECK(rows == 9);
    CHECK(first.substr(0, 5) == "1/10,");
    std::remove(out.c_str());
}

TEST_CASE("cli stability and kenergy run") {
    CHECK(run_cli("stability " + data_file("koiso-sakane.json") + " --steps 10") == 0);
    CHECK(run_cli("kenergy " + data_file("koiso-sakane.json") + " --nodes 32") == 0);
    CHECK(run_cli("kenergy " + data_file("genus2-unstable.json") +
                  " --kmax 20 --bump-center -1/2 --bump-width 1/10") == 0);
}

TEST_CASE("cli counterexample and appendix") {
    CHECK(run_cli("counterexample --x1 9/10 --x2 1/2 --r 2") == 0);
    CHECK(run_cli("counterexample --x1 1/2 --x2 1/4 --r 2") == 1); // outside validity region
    CHECK(run_cli("appendix --rmax 5 --mmax 4") == 0);
}

TEST_CASE("cli csc-locus: locus, scalar-flat mode, hypothesis errors") {
    CHECK(run_cli("csc-locus --s1 2 --s2 -2 --steps 6") == 0);
    CHECK(run_cli("csc-locus --s1 0 --s2 1 --scalar-flat --tol 1/10000") == 0);
    CHECK(run_cli("csc-locus --s1 1 --s2 1 --scalar-flat") == 2); // needs s1 <= 0 < s2
}

TEST_CASE("cli version flag") {
    CHECK(run_cli("--version") == 0);
}

TEST_CASE("cli scan with no admissible cells emits only the header") {
    std::string out = "/tmp/ekm_test_scan_empty.csv";
    CHECK(run_cli("scan " + data_file("koiso-sakane.json") + " --axis 0:2:3:4", &out) == 0);
    std::ifstream f(out);
    std::string content, line;
    while (std::getline(f, line)) content += line + "\n";
    CHECK(content == "x1,kind,A,futaki\n");
    std::remove(out.c_str());
}

#endif
