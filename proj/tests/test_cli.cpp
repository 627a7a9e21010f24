// End-to-end checks of the command-line tool: exit codes, golden output,
// deterministic reruns and report schemas. The binary path arrives in
// RANDERS2D_CLI.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string cli_path() {
    const char* p = std::getenv("RANDERS2D_CLI");
    REQUIRE_MESSAGE(p != nullptr, "RANDERS2D_CLI must point at the CLI binary");
    return p;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    std::size_t n = 0;
    while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_lines(const std::string& s) {
    int n = 0;
    for (const char c : s)
        if (c == '\n') ++n;
    return n;
}

}  // namespace

TEST_CASE("eval golden output") {
    const RunResult r = run("eval --model pdisk --point 0.5,0 --vector 1,0");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "{\"F\":4.7999999999999998,\"alpha\":2.6666666666666665,"
          "\"beta\":2.1333333333333333,\"randers_bound\":0.80000000000000004,"
          "\"model\":\"pdisk\",\"reversible\":false,\"point\":[0.5,0],\"vector\":[1,0]}\n");
}

TEST_CASE("eval at the disk center") {
    const RunResult r = run("eval --model funk --point 0,0 --vector 3,4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"F\":5,") != std::string::npos);
    CHECK(r.out.find("\"beta\":0,") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run("eval --model hplane --point 0,-1 --vector 1,0").exit_code == 2);
    CHECK(run("eval --model marsian --point 0,0 --vector 1,0").exit_code == 1);
    CHECK(run("eval --model funk --point 0,0").exit_code == 1);  // missing --vector
    CHECK(run("distance --model funk --from 0.1,0.1 --to 0.1,0.1").exit_code == 1);
    CHECK(run("indicatrix --model funk --point 0,0 --nodes 3 --out /tmp/ind_bad.svg").exit_code ==
          1);
    CHECK(run("nonsense").exit_code == 1);
}

TEST_CASE("verify small run passes and reruns byte-identically") {
    namespace fs = std::filesystem;
    const std::string out1 = (fs::temp_directory_path() / "verify_a.csv").string();
    const std::string out2 = (fs::temp_directory_path() / "verify_b.csv").string();
    const std::string flags = "verify --samples 2000 --seed 7 --truncation 0.99 --out ";
    const RunResult r1 = run(flags + out1);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.substr(0, 4) == "PASS");
    const RunResult r2 = run(flags + out2);
    CHECK(r2.exit_code == 0);

    const std::string csv1 = slurp(out1);
    CHECK(csv1 == slurp(out2));
    CHECK(count_lines(csv1) == 8);  // header + six maps + diagram row
    CHECK(csv1.rfind("map,samples,max_rel_err,mean_rel_err,worst_x1,worst_x2,worst_v1,worst_v2\n",
                     0) == 0);
    CHECK(csv1.find("pdisk_to_funk,2000,") != std::string::npos);
    CHECK(csv1.find("diagram,2000,") != std::string::npos);
}

TEST_CASE("verify with zero tolerance fails") {
    namespace fs = std::filesystem;
    const std::string out = (fs::temp_directory_path() / "verify_tol0.csv").string();
    const RunResult r = run("verify --samples 200 --seed 7 --tol 0 --out " + out);
    CHECK(r.exit_code == 3);
    CHECK(r.out.substr(0, 4) == "FAIL");
}

TEST_CASE("indicatrix svg diagnostics") {
    namespace fs = std::filesystem;
    const std::string out = (fs::temp_directory_path() / "ind_center.svg").string();
    const RunResult r = run("indicatrix --model funk --point 0,0 --nodes 128 --out " + out);
    CHECK(r.exit_code == 0);
    const std::string svg = slurp(out);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);
    // at the center the curve coincides with the reference circle
    const auto pos = svg.find("max_radial_deviation_vs_unit_circle=");
    REQUIRE(pos != std::string::npos);
    const double dev = std::stod(svg.substr(pos + 36));
    CHECK(dev < 1e-9);

    const std::string out2 = (fs::temp_directory_path() / "ind_off.svg").string();
    CHECK(run("indicatrix --model funk --point 0.5,0 --nodes 128 --out " + out2).exit_code == 0);
    const std::string svg2 = slurp(out2);
    const auto fpos = svg2.find("forward_minus_backward=");
    REQUIRE(fpos != std::string::npos);
    // outward motion is the expensive direction, so the forward radius is the
    // short one: r(0) = 1/2 versus r(pi) = 3/2
    const double diff = std::stod(svg2.substr(fpos + 23));
    CHECK(diff < -0.9);
    CHECK(diff > -1.1);
}

TEST_CASE("gap table schema on a tiny run") {
    namespace fs = std::filesystem;
    const std::string out1 = (fs::temp_directory_path() / "gap_a.csv").string();
    const std::string out2 = (fs::temp_directory_path() / "gap_b.csv").string();
    const std::string flags =
        "gap --models funk --truncations 0.9 --h 0.1 --seed 7 --iters 40 --out ";
    const RunResult r1 = run(flags + out1);
    CHECK(r1.exit_code == 0);
    const std::string csv = slurp(out1);
    CHECK(csv.rfind("model,reversible,truncation,h,final_quotient,iters_used\n", 0) == 0);
    CHECK(count_lines(csv) == 4);  // header + finsler row + reversible row + summary
    CHECK(csv.find("funk,0,0.90000000000000002,") != std::string::npos);
    CHECK(csv.find("funk,1,") != std::string::npos);
    CHECK(csv.find("# summary ") != std::string::npos);
    // single truncation: no monotonicity flag
    CHECK(csv.find("monotone_nonincreasing") == std::string::npos);
    CHECK(csv.find("reversible_floor_0.23") != std::string::npos);

    const RunResult r2 = run(flags + out2);
    CHECK(r2.exit_code == 0);
    CHECK(csv == slurp(out2));
    CHECK(r1.out == r2.out);
}

TEST_CASE("distance json") {
    const RunResult r = run("distance --model funk --from 0,0 --to 0.5,0 --control 2 --iters 40");
    CHECK(r.exit_code == 0);
    const auto fpos = r.out.find("\"forward\":");
    const auto rpos = r.out.find("\"reverse\":");
    const auto apos = r.out.find("\"asymmetry\":");
    REQUIRE(fpos != std::string::npos);
    REQUIRE(rpos != std::string::npos);
    REQUIRE(apos != std::string::npos);
    const double fwd = std::stod(r.out.substr(fpos + 10));
    const double rev = std::stod(r.out.substr(rpos + 10));
    const double asym = std::stod(r.out.substr(apos + 12));
    CHECK(fwd > rev);
    CHECK(asym > 0.1);

    const RunResult sym =
        run("distance --model pdisk --reversible --from 0.3,0.1 --to -0.2,0.4 --control 2");
    CHECK(sym.exit_code == 0);
    const double asym2 =
        std::stod(sym.out.substr(sym.out.find("\"asymmetry\":") + 12));
    CHECK(asym2 < 1e-8);
}
