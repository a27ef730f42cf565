// End-to-end checks against the installed binary: exit codes and exact bytes.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "bb84sec/sweep_table.hpp"
#include "test_util.hpp"

namespace {

struct ProcessResult {
    int exit_code;
    std::string output;
};

ProcessResult run_cli(const std::string& args) {
    const std::string command = std::string(BB84SEC_CLI_PATH) + " " + args +
                                " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t n;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        output.append(buffer, n);
    }
    const int status = pclose(pipe);
    REQUIRE(WIFEXITED(status));
    return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_CASE("critical-p: clean exit, stable bytes, expected value") {
    const ProcessResult first = run_cli("critical-p");
    CHECK(first.exit_code == 0);
    const bb84sec::SweepTable table = bb84sec::SweepTable::from_csv(first.output);
    CHECK(table.columns() == std::vector<std::string>{"p_critical"});
    CHECK(table.at(0, 0).number_value() == approx(0.165041796657539, 1e-9));
    CHECK(run_cli("critical-p").output == first.output);
}

TEST_CASE("assess example runs end to end") {
    const ProcessResult r =
        run_cli("assess --p 0.1 --omegas 0.8,0.5 --q 0.2,0.5,0.3");
    CHECK(r.exit_code == 0);
    CHECK(r.output.rfind("i_ab,i_ae_max,h_delta,i_lost,p_err,secured\n", 0) == 0);
    CHECK(r.output.find("false") != std::string::npos);
    CHECK(r.output.find('\r') == std::string::npos);
}

TEST_CASE("usage problems exit with code 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("no-such-command").exit_code == 2);
    CHECK(run_cli("assess").exit_code == 2);
    CHECK(run_cli("assess --p 2.0").exit_code == 2);
    CHECK(run_cli("qber-curve --bogus").exit_code == 2);
}

TEST_CASE("runtime failures exit with code 1") {
    CHECK(run_cli("critical-p --out /nonexistent-dir/x.csv").exit_code == 1);
}

TEST_CASE("--help exits cleanly and lists subcommands") {
    const ProcessResult r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("qber-curve") != std::string::npos);
    CHECK(r.output.find("verify") != std::string::npos);
}

TEST_CASE("verify subcommand passes its cross-check suite") {
    const ProcessResult r = run_cli("verify --n-eves 2 --trials 100 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("fail") == std::string::npos);
    CHECK(run_cli("verify --n-eves 2 --trials 100 --seed 7").output == r.output);
}

TEST_CASE("simulate is byte-identical across thread counts and repeats") {
    const std::string args = "simulate --p 0.1 --omegas 0.8 --q 0.5,0.5 "
                             "--photons 50000 --seed 42";
    const ProcessResult one = run_cli(args + " --threads 1");
    const ProcessResult four = run_cli(args + " --threads 4");
    const ProcessResult again = run_cli(args + " --threads 4");
    CHECK(one.exit_code == 0);
    CHECK(one.output == four.output);
    CHECK(four.output == again.output);
    CHECK(one.output.rfind("party,agreement_hat,stderr,z_score\n", 0) == 0);
}

TEST_CASE("--out and stdout carry identical bytes") {
    namespace fs = std::filesystem;
    const fs::path path = fs::temp_directory_path() / "bb84sec_process_out.csv";
    const ProcessResult direct = run_cli("phase2d --n-eves 1 --p-min 0.05 "
                                         "--p-max 0.1 --p-steps 3");
    const ProcessResult redirected =
        run_cli("phase2d --n-eves 1 --p-min 0.05 --p-max 0.1 --p-steps 3 --out " +
                path.string());
    CHECK(direct.exit_code == 0);
    CHECK(redirected.exit_code == 0);
    CHECK(redirected.output.empty());
    std::ifstream in(path, std::ios::binary);
    std::stringstream bytes;
    bytes << in.rdbuf();
    CHECK(bytes.str() == direct.output);
    fs::remove(path);
}
