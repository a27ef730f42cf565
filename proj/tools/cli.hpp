#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace bb84sec::cli {

enum class Command {
    assess,
    qber_curve,
    lost_info,
    phase2d,
    phase3d,
    simulate,
    verify,
    critical_p,
};

// Exit codes: 0 success, 1 numeric failure, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNumericFailure = 1;
inline constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// `--help` and friends: carries the text to print before a clean exit.
struct HelpRequested {
    std::string text;
};

// One fully resolved invocation.  Only the fields of the selected command are
// meaningful; defaults are applied during parsing.
struct CommandInvocation {
    Command command;
    std::string out_path;     // empty: stdout
    std::string config_path;  // JSON defaults file, already folded in by parse_args

    // point-evaluation parameters
    double p = 0.0;
    std::vector<double> omegas;
    std::vector<double> qs;  // empty: uniform over the N+1 segments

    // sweep parameters
    std::size_t n_eves = 1;
    double p_min = 0.0;
    double p_max = 0.2;
    std::size_t p_steps = 200;
    double omega = 0.0;
    std::vector<double> q1_values;
    double omega1_min = 0.0, omega1_max = 1.0;
    double omega2_min = 0.0, omega2_max = 1.0;
    std::size_t omega1_steps = 50, omega2_steps = 50;

    // simulation / verification parameters
    std::uint64_t photons = 1000000;
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::size_t trials = 1000;
};

// Parses argv (program name removed).  A `--config file.json` anywhere in the
// arguments loads per-flag defaults from a JSON object; flags given on the
// command line win.  Throws UsageError on bad input, HelpRequested for
// --help/--version.
CommandInvocation parse_args(const std::vector<std::string>& args);

// Executes the invocation, writing CSV to --out or to default_out.
// Returns kExitOk or kExitNumericFailure (verify mismatches); exceptions from
// the core bubble up to the caller.
int run_command(const CommandInvocation& invocation, std::ostream& default_out);

}  // namespace bb84sec::cli
