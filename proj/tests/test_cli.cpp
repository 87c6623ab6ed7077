// Exercises the installed command-line contract: exit codes, byte-level
// determinism and the documented CSV formats. The binary path arrives in the
// SUPERSPLIT_CLI environment variable (set by ctest).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("SUPERSPLIT_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SUPERSPLIT_CLI must point at the binary");
    return p;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run(const std::string& args) {
    static int counter = 0;
    const std::string out_file = "cli_stdout_" + std::to_string(counter) + ".txt";
    const std::string err_file = "cli_stderr_" + std::to_string(counter) + ".txt";
    ++counter;
    const std::string cmd =
        "\"" + cli_path() + "\" " + args + " >" + out_file + " 2>" + err_file;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(rc);
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    r.out = slurp(out_file);
    r.err = slurp(err_file);
    return r;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int count_data_rows(const std::string& text) {
    std::istringstream lines(text);
    std::string line;
    int n = 0;
    while (std::getline(lines, line))
        if (!line.empty() && line[0] != '#') ++n;
    return n;
}

} // namespace

TEST_CASE("eigen: reference reports and json output") {
    const auto r = run("eigen --big-gamma 19 --lamb-shift 0 --phi 0 --json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const double re_a = j["lambda_plus"][0].get<double>();
    const double re_b = j["lambda_minus"][0].get<double>();
    CHECK(std::min(re_a, re_b) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::max(re_a, re_b) == doctest::Approx(19.0).epsilon(1e-12));

    const auto r2 = run("eigen --big-gamma 19 --lamb-shift 0 --phi 15 --json");
    CHECK(nlohmann::json::parse(r2.out)["regime"] == "EIT_LIKE");

    const auto r3 = run("eigen --big-gamma 1 --lamb-shift 6.6 --phi 10 --json");
    CHECK(nlohmann::json::parse(r3.out)["splitting"].get<double>() ==
          doctest::Approx(11.981652640600128).epsilon(1e-12));
}

TEST_CASE("exit code 2 on invalid parameters") {
    CHECK(run("eigen --big-gamma 0.5 --phi 1").exit_code == 2);
    CHECK(run("eigen").exit_code == 2);          // missing required flag
    CHECK(run("eigen --bogus 1").exit_code == 2); // unknown flag
}

TEST_CASE("spectrum: deterministic bytes and exact row count") {
    const auto r1 = run(
        "spectrum --big-gamma 19 --lamb-shift 0 --phi 15 --span 60 --points 16 "
        "--out spec_a.csv");
    CHECK(r1.exit_code == 0);
    const auto r2 = run(
        "spectrum --big-gamma 19 --lamb-shift 0 --phi 15 --span 60 --points 16 "
        "--out spec_b.csv");
    CHECK(r2.exit_code == 0);
    const std::string a = slurp_file("spec_a.csv");
    const std::string b = slurp_file("spec_b.csv");
    CHECK(a == b); // byte identical
    CHECK(count_data_rows(a) == 16);
    CHECK(a.rfind("# supersplit-spectrum v1\n", 0) == 0);
}

TEST_CASE("spectrum: minimum-at-zero is recoverable by re-parsing the file") {
    const auto r = run(
        "spectrum --big-gamma 19 --lamb-shift 0 --phi 15 --span 60 --points 4001 "
        "--out spec_eit.csv");
    CHECK(r.exit_code == 0);
    const std::string text = slurp_file("spec_eit.csv");
    bool has_central_min = false;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.rfind("# extremum,minimum,", 0) == 0) {
            const auto second_comma = line.find(',', 12);
            const auto third_comma = line.find(',', second_comma + 1);
            const double pos = std::stod(
                line.substr(second_comma + 1, third_comma - second_comma - 1));
            if (std::abs(pos) < 1e-3) has_central_min = true;
        }
    }
    CHECK(has_central_min);
}

TEST_CASE("spectrum: exit 3 when the output cannot be written") {
    const auto r = run(
        "spectrum --big-gamma 2 --span 10 --out /nonexistent_dir_xyz/out.csv");
    CHECK(r.exit_code == 3);
}

TEST_CASE("plot script emission") {
    const auto r = run(
        "spectrum --big-gamma 2 --span 10 --points 64 --out spec_p.csv "
        "--emit-plot-script spec_p.gp");
    CHECK(r.exit_code == 0);
    CHECK(slurp_file("spec_p.gp").find("spec_p.csv") != std::string::npos);
}

TEST_CASE("cavity: reference operating points") {
    // on resonance, moderate field: peak-type double structure
    const auto r1 = run(
        "cavity --delta-phi-urad 0 --b-field 8 --span 60 --points 2001 "
        "--out cav_d.csv");
    CHECK(r1.exit_code == 0);
    const std::string d = slurp_file("cav_d.csv");
    CHECK(d.rfind("# supersplit-cavity v1\n", 0) == 0);
    CHECK(d.find("# derived,L,0\n") != std::string::npos);
    CHECK(d.find("# extremum,maximum,") != std::string::npos);

    // off resonance: dips recorded in the comment block with separation > 10
    const auto r2 = run(
        "cavity --delta-phi-urad 80 --b-field 5.3 --span 80 --points 4001 "
        "--out cav_f.csv");
    CHECK(r2.exit_code == 0);
    const std::string f = slurp_file("cav_f.csv");
    const auto pos = f.find("# derived,dip_separation,");
    REQUIRE(pos != std::string::npos);
    const auto eol = f.find('\n', pos);
    const double sep = std::stod(f.substr(pos + 25, eol - pos - 25));
    CHECK(sep > 10.0);

    // determinism across repeated runs
    const auto r3 = run(
        "cavity --delta-phi-urad 80 --b-field 5.3 --span 80 --points 4001 "
        "--out cav_f2.csv");
    CHECK(r3.exit_code == 0);
    CHECK(slurp_file("cav_f.csv") == slurp_file("cav_f2.csv"));

    // single line at zero field
    const auto r4 = run(
        "cavity --delta-phi-urad 0 --b-field 0 --span 400 --points 2001 "
        "--out cav_0.csv");
    CHECK(r4.exit_code == 0);
    const std::string z = slurp_file("cav_0.csv");
    CHECK(z.find("# derived,phi,0\n") != std::string::npos);
}

TEST_CASE("cavity: config file control and exit codes") {
    {
        std::ofstream cfg("cav_test.cfg");
        cfg << "[cavity]\nkappa_over_gamma = 3e5\nq_mag = 0.3\nq_phase = -1.2\n";
    }
    const auto ok = run(
        "cavity --config cav_test.cfg --delta-phi-urad 80 --b-field 5.3 "
        "--calibrate-L 6.6 --calibrate-angle 80 --span 80 --points 501 "
        "--out cav_cfg.csv");
    CHECK(ok.exit_code == 0);

    {
        std::ofstream cfg("cav_bad.cfg");
        cfg << "unknown_key = 1\n";
    }
    const auto bad = run(
        "cavity --config cav_bad.cfg --delta-phi-urad 0 --b-field 1 --span 10 "
        "--out cav_bad.csv");
    CHECK(bad.exit_code == 2);

    const auto infeasible = run(
        "cavity --delta-phi-urad 80 --b-field 5.3 --calibrate-L -6.6 "
        "--calibrate-angle 80 --span 10 --out cav_inf.csv");
    CHECK(infeasible.exit_code == 4);
}

TEST_CASE("manifest JSON is written on request and excluded from determinism") {
    const auto r = run(
        "spectrum --big-gamma 2 --span 10 --points 64 --out spec_m.csv "
        "--manifest spec_m.json");
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp_file("spec_m.json"));
    CHECK(j["command"] == "spectrum");
    CHECK(j["parameters"]["big_gamma"] == "2");
    CHECK(j["timestamp"].get<std::string>().size() == 20); // RFC 3339 UTC
}

TEST_CASE("scan: flags, argmax stability under refinement and zero-width ranges") {
    const auto r1 = run(
        "scan --delta-phi-range 40:120 --b-range 4:7 --steps 9 --out scan_a.csv");
    CHECK(r1.exit_code == 0);
    const std::string a = slurp_file("scan_a.csv");
    CHECK(a.find("# delta_phi_urad,b_tesla,phi,L,Gamma,splitting,deviation\n") !=
          std::string::npos);
    CHECK(r1.out.find("argmax deviation") != std::string::npos);

    // doubling the resolution moves the argmax cell by at most one spacing
    const auto r2 = run(
        "scan --delta-phi-range 40:120 --b-range 4:7 --steps 18 --out scan_b.csv");
    CHECK(r2.exit_code == 0);
    auto parse_argmax = [](const std::string& text) {
        const auto p1 = text.find("delta_phi = ");
        const auto p2 = text.find(" urad", p1);
        const auto p3 = text.find("B = ", p1);
        const auto p4 = text.find(" T,", p3);
        return std::pair<double, double>(
            std::stod(text.substr(p1 + 12, p2 - p1 - 12)),
            std::stod(text.substr(p3 + 4, p4 - p3 - 4)));
    };
    const auto [dp1, b1] = parse_argmax(r1.out);
    const auto [dp2, b2] = parse_argmax(r2.out);
    CHECK(std::abs(dp1 - dp2) <= 10.0 + 1e-9); // one coarse-grid spacing
    CHECK(std::abs(b1 - b2) <= 0.375 + 1e-9);

    // zero-width field range at B = 0: single-line rows are flagged
    const auto r3 = run(
        "scan --delta-phi-range 40:120 --b-range 0:0 --steps 5 --out scan_z.csv");
    CHECK(r3.exit_code == 0);
    const std::string z = slurp_file("scan_z.csv");
    CHECK(z.find("# flag,single_line,") != std::string::npos);

    // the reference operating point is a resolvable positive-deviation cell
    const auto r4 = run(
        "scan --delta-phi-range 80:80 --b-range 5.3:5.3 --steps 1 --out scan_c.csv");
    CHECK(r4.exit_code == 0);
    const auto [dpc, bc] = parse_argmax(r4.out); // argmax = the lone cell
    CHECK(dpc == 80.0);
    CHECK(bc == 5.3);
    const auto dev_pos = r4.out.find("deviation = ");
    REQUIRE(dev_pos != std::string::npos);
    CHECK(std::stod(r4.out.substr(dev_pos + 12)) > 0.0);

    CHECK(run("scan --delta-phi-range 40:120 --b-range bad --steps 3 --out s.csv")
              .exit_code == 2);
}

TEST_CASE("oracle-check: deterministic bytes, skip path, exit codes") {
    const auto r1 = run("oracle-check --n-max 128 --seed 7");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("convergence fit skipped") != std::string::npos);
    const auto r2 = run("oracle-check --n-max 128 --seed 7");
    CHECK(r2.exit_code == 0);
    CHECK(r1.out == r2.out); // identical report bytes for a fixed seed

    const auto r3 = run("oracle-check --n-max 4 --seed 7");
    CHECK(r3.exit_code == 0);
    CHECK(r3.out.find("convergence fit skipped") != std::string::npos);

    CHECK(run("oracle-check --n-max 4096").exit_code == 2);
}
