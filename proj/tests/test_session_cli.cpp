#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nubshift/session.hpp"
#include "test_support.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace nubshift;
using nubshift::testing::thrown_code;

namespace {

struct CliResult {
    int exit_code;
    std::string out;
};

CliResult cli(std::vector<std::string> args) {
    std::vector<const char*> argv;
    argv.push_back("nubshift");
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream captured;
    std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
    int rc = -1;
    try {
        rc = run_cli(static_cast<int>(argv.size()), argv.data());
    } catch (...) {
        std::cout.rdbuf(old);
        throw;
    }
    std::cout.rdbuf(old);
    return CliResult{rc, captured.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream f(path);
    f << content;
    return path;
}

} // namespace

TEST_CASE("sessions expose the builtin corpus") {
    Session s;
    CHECK(s.group("C2")->order() == 2);
    CHECK(s.group("S3")->order() == 6);
    CHECK(s.group("C2xC2")->order() == 4);
    CHECK(s.has_sft("h1"));
    CHECK(s.has_sft("hphi"));
    CHECK(s.has_sft("h2"));
    CHECK(s.has_sft("second-constant"));
    CHECK(s.sft("c2xc2").alphabet()->order() == 4);
    CHECK(point_equal(product_shift(s.sft("h1"), s.sft("hphi")), s.sft("c2xc2")));
    CHECK(thrown_code([&] { s.group("nope"); }) == Errc::InvalidDescriptor);
    CHECK(thrown_code([&] { s.sft("nope"); }) == Errc::InvalidDescriptor);
}

TEST_CASE("sessions resolve parameterised shifts") {
    Session s;
    const GroupShiftSFT full = s.resolve_sft("builtin:full-shift", "S3");
    CHECK(full.alphabet()->order() == 6);
    const GroupShiftSFT con = s.resolve_sft("constants", "C2");
    CHECK(con.finite_order() == 2);
    CHECK(point_equal(s.resolve_sft("builtin:hphi", ""), s.sft("hphi")));
    // parameterised names need a group
    CHECK(thrown_code([&] { s.resolve_sft("full-shift", ""); }) ==
          Errc::InvalidDescriptor);
    CHECK(s.resolve_group("cyclic:9")->order() == 9);
}

TEST_CASE("definition lines") {
    Session s;
    s.define_line("g7 = cyclic(7)");
    CHECK(s.group("g7")->order() == 7);
    s.define_line("gg = direct_product(g7, C2)");
    CHECK(s.group("gg")->order() == 14);
    s.define_line("f = full_shift(gg)");
    CHECK(s.sft("f").alphabet()->order() == 14);
    s.define_line("w = fs_word(C3, -1, 1, 2)");
    CHECK(s.word("w") == EPWord::finitely_supported(s.group("C3"), -1, {1, 2}));
    s.define_line("pw = periodic_word(C2, 1, 0)");
    CHECK(s.word("pw") == EPWord::periodic(s.group("C2"), {1, 0}));
    s.define_line("tower = difference_tower(2, 3)");
    CHECK(s.system("tower").connectors.size() == 3);
    s.define_line("alias = builtin(hphi)");
    CHECK(point_equal(s.sft("alias"), s.sft("hphi")));
    s.define_line("# comment only");
    s.define_line("");

    CHECK(thrown_code([&] { s.define_line("g7 = cyclic(5)"); }) == Errc::InvalidDescriptor);
    CHECK(thrown_code([&] { s.define_line("x = conjure(1)"); }) == Errc::InvalidDescriptor);
    CHECK(thrown_code([&] { s.define_line("no equals sign"); }) == Errc::InvalidDescriptor);
    CHECK(thrown_code([&] { s.define_line("bad name! = cyclic(2)"); }) ==
          Errc::InvalidDescriptor);
}

TEST_CASE("definition files carry line numbers in errors") {
    const auto path = temp_file("nubshift_defs_bad.txt", "a = cyclic(3)\nb = cyclic(nope)\n");
    Session s;
    try {
        s.load_definitions(path.string());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
    std::filesystem::remove(path);
}

TEST_CASE("cli depth examples") {
    const CliResult full = cli({"depth", "--sft", "builtin:full-shift", "--group", "S3"});
    CHECK(full.exit_code == 0);
    CHECK(full.out == "6\n");

    const CliResult fin = cli({"depth", "--sft", "builtin:constants", "--group", "C2"});
    CHECK(fin.exit_code == 3);

    // parameterised builtin without a group is a usage error
    const CliResult usage = cli({"depth", "--sft", "builtin:full-shift"});
    CHECK(usage.exit_code == 2);
}

TEST_CASE("cli series comparison") {
    const CliResult eq =
        cli({"jh-compare", "--host", "builtin:c2xc2", "--series", "h1", "--series", "hphi"});
    CHECK(eq.exit_code == 0);
    CHECK(eq.out.find("equivalent=true") != std::string::npos);
}

TEST_CASE("cli transitive and nub") {
    CHECK(cli({"transitive", "--sft", "builtin:hphi"}).exit_code == 0);
    const CliResult not_tr = cli({"transitive", "--sft", "builtin:second-constant"});
    CHECK(not_tr.exit_code == 0);
    CHECK(not_tr.out.find("false") != std::string::npos);

    const CliResult n = cli({"nub", "--sft", "builtin:second-constant"});
    CHECK(n.exit_code == 0);
    CHECK(n.out.find("index") != std::string::npos);
}

TEST_CASE("cli homoclinic count") {
    const CliResult r = cli({"homoclinic", "--sft", "builtin:hphi", "--lo", "0", "--hi", "1"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("2") != std::string::npos);
}

TEST_CASE("cli abelian classification") {
    const CliResult r = cli({"classify-abelian", "--sft", "builtin:constants", "--group", "C2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("finite-recurrence") != std::string::npos);

    const CliResult full = cli({"classify-abelian", "--sft", "builtin:full-shift", "--group", "C3"});
    CHECK(full.exit_code == 0);
    CHECK(full.out.find("full") != std::string::npos);

    const CliResult bad = cli({"classify-abelian", "--sft", "builtin:full-shift", "--group", "S3"});
    CHECK(bad.exit_code == 3);
}

TEST_CASE("cli eta solver round trip via session file") {
    const auto path = temp_file("nubshift_eta_defs.txt", "w = fs_word(S3, 0, 3, 4, 1)\n");
    const CliResult r = cli({"eta", "--session", path.string(), "--word", "w", "--k", "2"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verified") != std::string::npos);
    std::filesystem::remove(path);
}

TEST_CASE("cli scale of the restricted shift") {
    const CliResult fwd = cli({"scale-restricted", "--group", "C4", "--direction", "fwd"});
    CHECK(fwd.exit_code == 0);
    CHECK(fwd.out == "1\n");
    const CliResult rev = cli({"scale-restricted", "--group", "C4", "--direction", "rev"});
    CHECK(rev.exit_code == 0);
    CHECK(rev.out == "4\n");
    CHECK(cli({"scale-restricted", "--group", "C4", "--direction", "sideways"}).exit_code == 2);
}

TEST_CASE("cli limit examples") {
    const CliResult tower = cli({"limits", "run-example", "5.6", "--p", "2", "--levels", "4",
                                 "--budget", "3"});
    CHECK(tower.exit_code == 0);
    CHECK(tower.out.find("levels: 4") != std::string::npos);
    CHECK(tower.out.find("connectors-verified: true") != std::string::npos);
    CHECK(tower.out.find("homoclinic-trivial: true (budget 3, words 4, longest chain 2)") !=
          std::string::npos);

    const CliResult c4 = cli({"limits", "run-example", "c4", "--levels", "2"});
    CHECK(c4.exit_code == 0);

    // the finite-centre example honestly reports the claim mismatch
    const CliResult fc = cli({"limits", "run-example", "finite-centre", "--n", "1"});
    CHECK(fc.exit_code == 1);
    CHECK(fc.out.find("centre") != std::string::npos);

    CHECK(cli({"limits", "run-example", "unknown-example"}).exit_code == 2);
}

TEST_CASE("cli reports are deterministic and structured") {
    const auto out1 = std::filesystem::temp_directory_path() / "nubshift_report1.json";
    const auto out2 = std::filesystem::temp_directory_path() / "nubshift_report2.json";
    const CliResult r1 =
        cli({"depth", "--sft", "builtin:full-shift", "--group", "C3", "--out", out1.string()});
    const CliResult r2 =
        cli({"depth", "--sft", "builtin:full-shift", "--group", "C3", "--out", out2.string()});
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);

    std::ifstream f1(out1), f2(out2);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    // identical invocation (apart from the output path echoed in "command")
    std::string t1 = s1.str(), t2 = s2.str();
    const auto strip = [](std::string& t, const std::string& needle) {
        for (std::size_t pos = t.find(needle); pos != std::string::npos;
             pos = t.find(needle))
            t.erase(pos, needle.size());
    };
    strip(t1, out1.string());
    strip(t2, out2.string());
    CHECK(t1 == t2);
    CHECK(t1.find("\"results\"") != std::string::npos);
    CHECK(t1.find("\"certificates\"") != std::string::npos);
    CHECK(t1.find("\"verdicts\"") != std::string::npos);
    CHECK(t1.find("\"exit\"") != std::string::npos);
    std::filesystem::remove(out1);
    std::filesystem::remove(out2);
}

TEST_CASE("cli usage errors") {
    CHECK(cli({}).exit_code == 2);
    CHECK(cli({"frobnicate"}).exit_code == 2);
    CHECK(cli({"depth"}).exit_code == 2);
}

TEST_CASE("suite filter and fault injection") {
    const auto rs = run_verification_suite("1", false, false);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].id == 1);
    CHECK(rs[0].pass);

    const auto faulty = run_verification_suite("1", true, false);
    REQUIRE(faulty.size() == 1);
    CHECK_FALSE(faulty[0].pass);
    CHECK(faulty[0].detail.find("MISMATCH") != std::string::npos);

    // name substrings select criteria too
    const auto by_name = run_verification_suite("scale", false, false);
    REQUIRE(by_name.size() == 1);
    CHECK(by_name[0].id == 1);
}
