#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include "bb84sec/bb84sec.hpp"

namespace bb84sec::cli {

namespace {

// ---------------------------------------------------------------------------
// --config handling: a JSON object supplies defaults for long flags (keys are
// the flag names without the leading --).  Values given on the command line
// win; the q/q-rule pair is treated as one group so a config file's q cannot
// fight an explicit --q-rule.

bool has_flag(const std::vector<std::string>& args, const std::string& name) {
    const std::string plain = "--" + name;
    const std::string assigned = plain + "=";
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
        return a == plain || a.rfind(assigned, 0) == 0;
    });
}

std::string json_scalar_to_token(const nlohmann::json& value) {
    if (value.is_string()) return value.get<std::string>();
    if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
    if (value.is_number()) return value.dump();
    throw UsageError("config: unsupported value type: " + value.dump());
}

std::string json_to_token(const nlohmann::json& value) {
    if (!value.is_array()) return json_scalar_to_token(value);
    std::string joined;
    for (const auto& element : value) {
        if (!joined.empty()) joined += ',';
        joined += json_scalar_to_token(element);
    }
    return joined;
}

std::vector<std::string> apply_config_defaults(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config needs a file path");
            path = args[i + 1];
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config: " + path + ": " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config: top level must be an object");

    static const std::vector<std::vector<std::string>> exclusive_groups = {
        {"q", "q-rule"}};
    for (const auto& [key, value] : doc.items()) {
        bool shadowed = has_flag(args, key);
        for (const auto& group : exclusive_groups) {
            if (std::find(group.begin(), group.end(), key) == group.end()) continue;
            for (const auto& member : group) shadowed = shadowed || has_flag(args, member);
        }
        if (shadowed) continue;
        args.push_back("--" + key);
        args.push_back(json_to_token(value));
    }
    return args;
}

// ---------------------------------------------------------------------------
// Flag definitions

void add_common_flags(CLI::App* sub, CommandInvocation& inv) {
    sub->add_option("--out", inv.out_path, "write CSV here instead of stdout");
    // the file's contents were already folded into the argument list; the
    // option is registered so the flag parses and shows up in --help
    sub->add_option("--config", inv.config_path,
                    "JSON file with default values for these flags");
}

void add_q_flags(CLI::App* sub, CommandInvocation& inv, std::string& q_rule) {
    auto* q = sub->add_option("--q", inv.qs,
                              "noise placement weights, one per line segment")
                  ->delimiter(',')
                  ->check(CLI::Range(0.0, 1.0));
    auto* rule = sub->add_option("--q-rule", q_rule,
                                 "named placement rule (uniform)")
                     ->check(CLI::IsMember({"uniform"}));
    q->excludes(rule);
}

void add_p_grid_flags(CLI::App* sub, CommandInvocation& inv) {
    sub->add_option("--p-min", inv.p_min, "grid start")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--p-max", inv.p_max, "grid end")->check(CLI::Range(0.0, 1.0));
    sub->add_option("--p-steps", inv.p_steps, "number of grid points")
        ->check(CLI::PositiveNumber);
}

void check_q_vector(const std::vector<double>& qs) {
    const double total = std::accumulate(qs.begin(), qs.end(), 0.0);
    if (std::abs(total - 1.0) > 1e-9) {
        throw UsageError("--q values must sum to 1");
    }
}

AttackChain make_chain(const std::vector<double>& omegas, const std::vector<double>& qs) {
    if (qs.empty()) {
        return AttackChain(omegas, QRule::uniform().resolve(omegas.size()));
    }
    return AttackChain(omegas, qs);
}

QRule make_q_rule(const std::vector<double>& qs) {
    return qs.empty() ? QRule::uniform() : QRule::explicit_qs(qs);
}

// ---------------------------------------------------------------------------
// Command bodies

SweepCell bool_cell(bool value) {
    return SweepCell::text(value ? "true" : "false");
}

int run_assess(const CommandInvocation& inv, std::ostream& out) {
    const ChannelNoise channel(inv.p);
    const AttackChain chain = make_chain(inv.omegas, inv.qs);
    const SecurityAssessment a = assess(channel, chain);
    SweepTable table({"i_ab", "i_ae_max", "h_delta", "i_lost", "p_err", "secured"});
    table.add_row({SweepCell::number(a.i_ab), SweepCell::number(a.i_ae_max),
                   SweepCell::number(a.h_delta), SweepCell::number(a.i_lost),
                   SweepCell::number(a.added_error), bool_cell(a.secured)});
    table.write_csv(out);
    return kExitOk;
}

int run_qber_curve(const CommandInvocation& inv, std::ostream& out) {
    const std::vector<double> grid = linspace(inv.p_min, inv.p_max, inv.p_steps);
    qber_curve(grid, inv.n_eves, make_q_rule(inv.qs)).write_csv(out);
    return kExitOk;
}

int run_lost_info(const CommandInvocation& inv, std::ostream& out) {
    const std::vector<double> grid = linspace(inv.p_min, inv.p_max, inv.p_steps);
    lost_info_curve(grid, inv.omega, inv.q1_values).write_csv(out);
    return kExitOk;
}

int run_phase2d(const CommandInvocation& inv, std::ostream& out) {
    const std::vector<double> grid = linspace(inv.p_min, inv.p_max, inv.p_steps);
    phase_boundary_2d(grid, inv.n_eves, make_q_rule(inv.qs)).write_csv(out);
    return kExitOk;
}

int run_phase3d(const CommandInvocation& inv, std::ostream& out) {
    const std::vector<double> w1 = linspace(inv.omega1_min, inv.omega1_max, inv.omega1_steps);
    const std::vector<double> w2 = linspace(inv.omega2_min, inv.omega2_max, inv.omega2_steps);
    const std::vector<double> qs = inv.qs.empty() ? QRule::uniform().resolve(3) : inv.qs;
    phase_surface_3d(w1, w2, inv.p, qs).write_csv(out);
    return kExitOk;
}

int run_simulate(const CommandInvocation& inv, std::ostream& out) {
    const ChannelNoise channel(inv.p);
    const AttackChain chain = make_chain(inv.omegas, inv.qs);
    const mc::SimConfig config{inv.photons, inv.seed, inv.threads};
    const mc::SimEstimate estimate = mc::run(config, channel, chain);
    const mc::ComparisonReport report = mc::compare_to_closed_form(estimate, channel, chain);
    SweepTable table({"party", "agreement_hat", "stderr", "z_score"});
    for (const auto& entry : report.entries) {
        table.add_row({SweepCell::text(entry.party), SweepCell::number(entry.estimate),
                       SweepCell::number(entry.std_error), SweepCell::number(entry.z)});
    }
    table.write_csv(out);
    return kExitOk;
}

int run_critical_p(const CommandInvocation&, std::ostream& out) {
    SweepTable table({"p_critical"});
    table.add_row({SweepCell::number(critical_noise_no_attack())});
    table.write_csv(out);
    return kExitOk;
}

// verify: re-derive every closed form along an independent route and report
// the worst disagreement per check over `trials` random parameter draws.
struct VerifyCheck {
    std::string name;
    std::size_t samples = 0;
    double max_abs_error = 0.0;

    void feed(double a, double b) {
        ++samples;
        max_abs_error = std::max(max_abs_error, std::abs(a - b));
    }
};

int run_verify(const CommandInvocation& inv, std::ostream& out) {
    constexpr double tolerance = 1e-12;
    std::mt19937_64 rng(inv.seed);
    const auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    VerifyCheck noiseless_check{"noiseless_bob_vs_bruteforce"};
    VerifyCheck bob_check{"bob_vs_bruteforce"};
    std::vector<VerifyCheck> eve_checks;
    for (std::size_t m = 1; m <= inv.n_eves; ++m) {
        eve_checks.push_back({"eve" + std::to_string(m) + "_vs_bruteforce"});
    }
    VerifyCheck compact_check{"eve_vs_compact_identity"};
    VerifyCheck single_bob_check{"single_eve_bob_formula"};
    VerifyCheck single_eve_check{"single_eve_eve_formula"};

    for (std::size_t t = 0; t < inv.trials; ++t) {
        const double p = u01();
        std::vector<double> omegas(inv.n_eves);
        for (double& w : omegas) w = u01();
        std::vector<double> qs(inv.n_eves + 1);
        double q_total = 0.0;
        for (double& q : qs) {
            q = u01();
            q_total += q;
        }
        if (q_total == 0.0) {
            qs.assign(inv.n_eves + 1, 1.0 / static_cast<double>(inv.n_eves + 1));
        } else {
            for (double& q : qs) q /= q_total;
        }
        const ChannelNoise channel(p);
        const AttackChain chain(omegas, qs);

        const double brute = noiseless_bob_agreement_bruteforce(omegas).value();
        noiseless_check.feed(noiseless_bob_agreement(omegas).value(), brute);
        bob_check.feed(bob_agreement(channel, omegas).value(),
                       depolarize_agreement(brute, channel));

        double prior_prod = 1.0;
        for (std::size_t m = 1; m <= inv.n_eves; ++m) {
            const double product = eve_agreement(m, channel, chain).value();
            eve_checks[m - 1].feed(product,
                                   eve_agreement_bruteforce(m, channel, chain).value());
            // Correlation form of the same probability: the intercepted
            // excess over a coin toss, contracted when the noise sits
            // upstream of eavesdropper m.
            const double compact =
                0.5 + omegas[m - 1] * 0.25 * prior_prod *
                          (1.0 - (4.0 * p / 3.0) * chain.cumulative_q(m));
            compact_check.feed(product, compact);
            prior_prod *= 1.0 - omegas[m - 1] / 2.0;
        }
    }

    for (std::size_t t = 0; t < inv.trials; ++t) {
        const double p = u01();
        const double w = u01();
        const double q1 = u01();
        const ChannelNoise channel(p);
        const AttackChain chain({w}, {q1, 1.0 - q1});
        // Spelled-out single-eavesdropper expressions.
        const double bob_ref =
            (0.5 + 0.5 * (1.0 - w / 2.0)) * (1.0 - 4.0 * p / 3.0) + 2.0 * p / 3.0;
        single_bob_check.feed(bob_agreement(channel, chain.omegas()).value(), bob_ref);
        const double eve_ref =
            q1 * ((1.0 - 4.0 * p / 3.0) * 0.75 * w + (1.0 - w) / 2.0 +
                  (2.0 * p / 3.0) * w) +
            (1.0 - q1) * ((1.0 - w) / 2.0 + 0.75 * w);
        single_eve_check.feed(eve_agreement(1, channel, chain).value(), eve_ref);
    }

    std::vector<VerifyCheck> checks{noiseless_check, bob_check};
    checks.insert(checks.end(), eve_checks.begin(), eve_checks.end());
    checks.push_back(compact_check);
    checks.push_back(single_bob_check);
    checks.push_back(single_eve_check);

    bool all_pass = true;
    SweepTable table({"check", "samples", "max_abs_error", "tolerance", "status"});
    for (const auto& check : checks) {
        const bool pass = check.max_abs_error <= tolerance;
        all_pass = all_pass && pass;
        table.add_row({SweepCell::text(check.name),
                       SweepCell::number(static_cast<double>(check.samples)),
                       SweepCell::number(check.max_abs_error),
                       SweepCell::number(tolerance),
                       SweepCell::text(pass ? "pass" : "fail")});
    }
    table.write_csv(out);
    return all_pass ? kExitOk : kExitNumericFailure;
}

}  // namespace

CommandInvocation parse_args(const std::vector<std::string>& args) {
    CommandInvocation inv;
    std::string q_rule;

    CLI::App app{"four-state QKD security analysis under chained intercept-resend attacks",
                 "bb84sec"};
    app.require_subcommand(1);
    app.add_option("--config", inv.config_path, "JSON file with default flag values");

    auto* cmd_assess =
        app.add_subcommand("assess", "security assessment for one parameter set");
    cmd_assess->add_option("--p", inv.p, "depolarizing strength")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd_assess->add_option("--omegas", inv.omegas, "interception probabilities")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    std::string assess_rule;
    add_q_flags(cmd_assess, inv, assess_rule);
    add_common_flags(cmd_assess, inv);

    auto* cmd_qber = app.add_subcommand(
        "qber-curve", "threshold QBER versus channel noise for N equal eavesdroppers");
    cmd_qber->add_option("--n-eves", inv.n_eves, "number of eavesdroppers")
        ->check(CLI::PositiveNumber);
    add_p_grid_flags(cmd_qber, inv);
    std::string qber_rule;
    add_q_flags(cmd_qber, inv, qber_rule);
    add_common_flags(cmd_qber, inv);

    auto* cmd_lost = app.add_subcommand(
        "lost-info", "leaked information versus noise for one eavesdropper");
    cmd_lost->add_option("--omega", inv.omega, "interception probability")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd_lost->add_option("--q1", inv.q1_values, "noise placements to tabulate")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    add_p_grid_flags(cmd_lost, inv);
    add_common_flags(cmd_lost, inv);

    auto* cmd_phase2d = app.add_subcommand(
        "phase2d", "threshold omega versus channel noise for N equal eavesdroppers");
    cmd_phase2d->add_option("--n-eves", inv.n_eves, "number of eavesdroppers")
        ->check(CLI::PositiveNumber);
    add_p_grid_flags(cmd_phase2d, inv);
    std::string phase2d_rule;
    add_q_flags(cmd_phase2d, inv, phase2d_rule);
    add_common_flags(cmd_phase2d, inv);

    auto* cmd_phase3d = app.add_subcommand(
        "phase3d", "threshold omega3 over the (omega1, omega2) plane, three eavesdroppers");
    cmd_phase3d->add_option("--p", inv.p, "depolarizing strength")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd_phase3d->add_option("--omega1-min", inv.omega1_min)->check(CLI::Range(0.0, 1.0));
    cmd_phase3d->add_option("--omega1-max", inv.omega1_max)->check(CLI::Range(0.0, 1.0));
    cmd_phase3d->add_option("--omega1-steps", inv.omega1_steps, "grid points for omega1")
        ->check(CLI::PositiveNumber);
    cmd_phase3d->add_option("--omega2-min", inv.omega2_min)->check(CLI::Range(0.0, 1.0));
    cmd_phase3d->add_option("--omega2-max", inv.omega2_max)->check(CLI::Range(0.0, 1.0));
    cmd_phase3d->add_option("--omega2-steps", inv.omega2_steps, "grid points for omega2")
        ->check(CLI::PositiveNumber);
    std::string phase3d_rule;
    add_q_flags(cmd_phase3d, inv, phase3d_rule);
    add_common_flags(cmd_phase3d, inv);

    auto* cmd_simulate = app.add_subcommand(
        "simulate", "photon-level Monte Carlo cross-check of the closed forms");
    cmd_simulate->add_option("--p", inv.p, "depolarizing strength")
        ->required()
        ->check(CLI::Range(0.0, 1.0));
    cmd_simulate->add_option("--omegas", inv.omegas, "interception probabilities")
        ->delimiter(',')
        ->check(CLI::Range(0.0, 1.0));
    std::string simulate_rule;
    add_q_flags(cmd_simulate, inv, simulate_rule);
    cmd_simulate->add_option("--photons", inv.photons, "photons to transmit")
        ->check(CLI::PositiveNumber);
    cmd_simulate->add_option("--seed", inv.seed, "RNG seed");
    cmd_simulate->add_option("--threads", inv.threads, "worker threads (0: hardware)");
    add_common_flags(cmd_simulate, inv);

    auto* cmd_verify = app.add_subcommand(
        "verify", "cross-check product closed forms against subset enumeration");
    cmd_verify->add_option("--n-eves", inv.n_eves, "number of eavesdroppers")
        ->check(CLI::Range(1, 20));
    cmd_verify->add_option("--trials", inv.trials, "random parameter draws")
        ->check(CLI::PositiveNumber);
    cmd_verify->add_option("--seed", inv.seed, "RNG seed");
    add_common_flags(cmd_verify, inv);

    auto* cmd_critical =
        app.add_subcommand("critical-p", "channel noise that alone defeats the protocol");
    add_common_flags(cmd_critical, inv);

    std::vector<std::string> full_args;
    try {
        full_args = apply_config_defaults(args);
        std::vector<std::string> reversed(full_args.rbegin(), full_args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp& e) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    if (cmd_assess->parsed()) inv.command = Command::assess;
    if (cmd_qber->parsed()) inv.command = Command::qber_curve;
    if (cmd_lost->parsed()) inv.command = Command::lost_info;
    if (cmd_phase2d->parsed()) inv.command = Command::phase2d;
    if (cmd_phase3d->parsed()) inv.command = Command::phase3d;
    if (cmd_simulate->parsed()) inv.command = Command::simulate;
    if (cmd_verify->parsed()) inv.command = Command::verify;
    if (cmd_critical->parsed()) inv.command = Command::critical_p;

    // Per-command defaults and consistency rules CLI11 cannot express.
    switch (inv.command) {
        case Command::assess:
        case Command::simulate: {
            if (!inv.qs.empty()) {
                if (inv.qs.size() != inv.omegas.size() + 1) {
                    throw UsageError("--q needs one weight per line segment "
                                     "(one more entry than --omegas)");
                }
                check_q_vector(inv.qs);
            }
            break;
        }
        case Command::qber_curve:
        case Command::phase2d: {
            CLI::App* sub = inv.command == Command::qber_curve ? cmd_qber : cmd_phase2d;
            if (!inv.qs.empty()) {
                check_q_vector(inv.qs);
                const std::size_t implied = inv.qs.size() - 1;
                if (implied == 0) throw UsageError("--q implies at least one eavesdropper");
                if (sub->count("--n-eves") != 0 && inv.n_eves != implied) {
                    throw UsageError("--n-eves conflicts with the length of --q");
                }
                inv.n_eves = implied;
            }
            if (inv.p_steps > 1 && !(inv.p_max > inv.p_min)) {
                throw UsageError("need --p-max > --p-min");
            }
            break;
        }
        case Command::lost_info: {
            if (cmd_lost->count("--p-max") == 0) inv.p_max = 1.0;
            if (inv.q1_values.empty()) inv.q1_values = {0.0, 0.25, 0.5, 0.75, 1.0};
            if (inv.p_steps > 1 && !(inv.p_max > inv.p_min)) {
                throw UsageError("need --p-max > --p-min");
            }
            break;
        }
        case Command::phase3d: {
            if (!inv.qs.empty()) {
                if (inv.qs.size() != 4) {
                    throw UsageError("--q needs four weights for three eavesdroppers");
                }
                check_q_vector(inv.qs);
            }
            break;
        }
        case Command::verify:
        case Command::critical_p:
            break;
    }
    return inv;
}

int run_command(const CommandInvocation& inv, std::ostream& default_out) {
    std::ofstream file;
    std::ostream* out = &default_out;
    if (!inv.out_path.empty()) {
        file.open(inv.out_path, std::ios::binary);
        if (!file) {
            throw std::runtime_error("cannot open output file " + inv.out_path);
        }
        out = &file;
    }
    switch (inv.command) {
        case Command::assess: return run_assess(inv, *out);
        case Command::qber_curve: return run_qber_curve(inv, *out);
        case Command::lost_info: return run_lost_info(inv, *out);
        case Command::phase2d: return run_phase2d(inv, *out);
        case Command::phase3d: return run_phase3d(inv, *out);
        case Command::simulate: return run_simulate(inv, *out);
        case Command::verify: return run_verify(inv, *out);
        case Command::critical_p: return run_critical_p(inv, *out);
    }
    throw std::logic_error("run_command: bad command");
}

}  // namespace bb84sec::cli
