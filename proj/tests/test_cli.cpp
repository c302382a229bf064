// Drives the installed command line binary end to end: exit codes, summary
// output, file formats and byte determinism.
#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(QCCS_CLI_PATH) + " " + args + " 2>&1";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (fgets(buf.data(), static_cast<int>(buf.size()), pipe)) out += buf.data();
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

double parse_line_value(const std::string& text, const std::string& key) {
    const auto pos = text.find(key);
    REQUIRE(pos != std::string::npos);
    return std::stod(text.substr(pos + key.size()));
}

} // namespace

TEST_CASE("state subcommand writes a file and a passing summary") {
    const auto r = run_cli("state --k 3 --qbar 2 --xi 0.7 --q 0.9 --out cli_state_a.txt");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("charge-check: pass") != std::string::npos);
    const std::string file = slurp("cli_state_a.txt");
    CHECK(!file.empty());
    std::istringstream header(file);
    int k, qbar, j, nm;
    double xr, xi, q;
    header >> k >> qbar >> j >> xr >> xi >> q >> nm;
    CHECK(k == 3);
    CHECK(qbar == 2);
    CHECK(q == 0.9);
    std::remove("cli_state_a.txt");
}

TEST_CASE("degenerate state parameters exit with the argument code") {
    const auto r = run_cli("state --k 2 --qbar 0 --xi 0 --j 1 --out cli_state_b.txt");
    CHECK(r.exit_code == 2);
}

TEST_CASE("negative charge summary reports the occupation difference") {
    const auto r = run_cli("state --k 1 --qbar -3 --xi 0.5 --q 0.8 --out cli_state_c.txt");
    CHECK(r.exit_code == 0);
    const double n1 = parse_line_value(r.output, "mean-n1:");
    const double n2 = parse_line_value(r.output, "mean-n2:");
    CHECK(std::abs(n1 - n2 + 3.0) < 1e-8);
    std::remove("cli_state_c.txt");
}

TEST_CASE("verify subcommands exit clean on passing suites") {
    auto r = run_cli("verify --suite moments --q 0.8 --pmax 2 --numax 2");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);

    r = run_cli("verify --suite dalgebra --k 4 --qbar -2 --xi 0.6 --q 0.9");
    CHECK(r.exit_code == 0);

    r = run_cli("verify --suite algebra --q 0.9 --json cli_verify.json");
    CHECK(r.exit_code == 0);
    const std::string doc = slurp("cli_verify.json");
    CHECK(doc.find("\"all_passed\": true") != std::string::npos);
    std::remove("cli_verify.json");

    r = run_cli("verify --suite nonsense");
    CHECK(r.exit_code == 2);
}

TEST_CASE("scan emits the CSV schema and honours explicit grids") {
    const auto r = run_cli("scan --k 3 --qbar 2 --q 1.0 --xs 0.5,1,2");
    CHECK(r.exit_code == 0);
    std::istringstream ss(r.output);
    std::string line;
    REQUIRE(std::getline(ss, line));
    CHECK(line.rfind("# k=3 qbar=2 q=1", 0) == 0);
    REQUIRE(std::getline(ss, line));
    CHECK(line == "x,g_0,g_1,g_2,antibunched_0,antibunched_1,antibunched_2");
    int rows = 0;
    while (std::getline(ss, line) && !line.empty() && line[0] != '#') ++rows;
    CHECK(rows == 3);
}

TEST_CASE("preset scans are byte-identical across runs") {
    const auto r1 = run_cli("scan --fig1a --out cli_fig1a_run1.csv");
    const auto r2 = run_cli("scan --fig1a --out cli_fig1a_run2.csv");
    CHECK(r1.exit_code == 0);
    CHECK(r2.exit_code == 0);
    const std::string a = slurp("cli_fig1a_run1.csv");
    const std::string b = slurp("cli_fig1a_run2.csv");
    CHECK(!a.empty());
    CHECK(a == b);
    // both signs and all three component counts are present
    CHECK(a.find("# k=3 qbar=2 ") != std::string::npos);
    CHECK(a.find("# k=3 qbar=-2 ") != std::string::npos);
    CHECK(a.find("# k=5 qbar=-2 ") != std::string::npos);
    CHECK(a.find("# g0 crossing near x=") != std::string::npos);
    std::remove("cli_fig1a_run1.csv");
    std::remove("cli_fig1a_run2.csv");
}

TEST_CASE("bad flags exit with the argument code") {
    const auto r = run_cli("scan --k 3 --qbar 2 --xs not,numbers");
    CHECK(r.exit_code == 2);
    const auto r2 = run_cli("frobnicate");
    CHECK(r2.exit_code == 2);
}

TEST_CASE("the full default verification suite passes") {
    const auto r = run_cli("verify --suite all --q 0.9");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);
    CHECK(r.output.find("0 failed") != std::string::npos);
}

TEST_CASE("parameters can come from a config file") {
    {
        std::ofstream cfg("cli_test.ini");
        cfg << "q=0.8\n";
    }
    const auto r = run_cli("state --config cli_test.ini --k 1 --qbar -3 --xi 0.5 "
                           "--out cli_state_cfg.txt");
    CHECK(r.exit_code == 0);
    const double n1 = parse_line_value(r.output, "mean-n1:");
    const double n2 = parse_line_value(r.output, "mean-n2:");
    CHECK(std::abs(n1 - n2 + 3.0) < 1e-8);
    // the config's q=0.8 must show up in the serialized header
    const std::string file = slurp("cli_state_cfg.txt");
    std::istringstream header(file);
    int k, qbar, j, nm;
    double xr, xi, q;
    header >> k >> qbar >> j >> xr >> xi >> q >> nm;
    CHECK(q == 0.8);
    std::remove("cli_state_cfg.txt");
    std::remove("cli_test.ini");
}
