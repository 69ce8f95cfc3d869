// Command-line front end: capacity, rate-curve, sweep and verify, all
// reading the same channel definition from a JSON config file and/or flags
// (flags win).  Exit codes: 0 ok, 1 verification failed, 2 invalid input,
// 3 indeterminate capacity.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "statecap/capacity.hpp"
#include "statecap/cli.hpp"

namespace {

using statecap::cli::ChannelConfig;
using statecap::cli::CommandOutcome;
using statecap::cli::Format;

struct ChannelFlags {
    std::string config_path;
    double p = 0, q1 = 0, q2 = 0, n = 0, rho_xs1 = 0, rho_s2z = 0;
    std::string unit, format = "json";
    CLI::Option *p_opt = nullptr, *q1_opt = nullptr, *q2_opt = nullptr,
                *n_opt = nullptr, *rho_xs1_opt = nullptr, *rho_s2z_opt = nullptr,
                *config_opt = nullptr, *unit_opt = nullptr;
    std::uint64_t seed = 1;
    std::size_t samples = 200000;

    void attach(CLI::App* cmd) {
        config_opt = cmd->add_option("--config", config_path,
                                     "JSON channel config file");
        p_opt = cmd->add_option("--p", p, "input power bound");
        q1_opt = cmd->add_option("--q1", q1, "variance of S1");
        q2_opt = cmd->add_option("--q2", q2, "variance of S2");
        n_opt = cmd->add_option("--n", n, "noise variance");
        rho_xs1_opt = cmd->add_option("--rho-xs1", rho_xs1,
                                      "correlation between X and S1");
        rho_s2z_opt = cmd->add_option("--rho-s2z", rho_s2z,
                                      "correlation between S2 and Z");
        unit_opt = cmd->add_option("--unit", unit, "output unit: bits or nats");
        cmd->add_option("--format", format, "output format: json or csv");
        cmd->add_option("--seed", seed, "random seed (verify)");
        cmd->add_option("--samples", samples, "Monte Carlo sample count (verify)");
    }

    ChannelConfig resolve() const {
        ChannelConfig cfg;
        if (*config_opt) cfg = statecap::cli::load_config_file(config_path);
        if (*p_opt) cfg.params.p = p;
        if (*q1_opt) cfg.params.q1 = q1;
        if (*q2_opt) cfg.params.q2 = q2;
        if (*n_opt) cfg.params.n = n;
        if (*rho_xs1_opt) cfg.params.rho_xs1 = rho_xs1;
        if (*rho_s2z_opt) cfg.params.rho_s2z = rho_s2z;
        if (*unit_opt) cfg.unit = statecap::cli::parse_unit(unit);
        return cfg;
    }
};

int emit(const CommandOutcome& outcome) {
    std::cout << outcome.out;
    std::cerr << outcome.err;
    return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "capacity of the Gaussian channel with two-sided state information"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(statecap::cli::kVersion));

    ChannelFlags cap_flags, curve_flags, sweep_flags, verify_flags;

    CLI::App* cap_cmd = app.add_subcommand(
        "capacity", "capacity, both bounds, alpha* and the Costa reference");
    cap_flags.attach(cap_cmd);

    CLI::App* curve_cmd = app.add_subcommand(
        "rate-curve", "achievable rate as a function of alpha");
    curve_flags.attach(curve_cmd);
    double alpha_lo = 0, alpha_hi = 0;
    int curve_steps = 101;
    CLI::Option* lo_opt =
        curve_cmd->add_option("--alpha-lo", alpha_lo, "grid start (default alpha*-1)");
    CLI::Option* hi_opt =
        curve_cmd->add_option("--alpha-hi", alpha_hi, "grid end (default alpha*+1)");
    curve_cmd->add_option("--steps", curve_steps, "grid size");

    CLI::App* sweep_cmd =
        app.add_subcommand("sweep", "capacity along a parameter grid");
    sweep_flags.attach(sweep_cmd);
    std::string sweep_parameter;
    double sweep_from = 0, sweep_to = 0;
    int sweep_steps = 101;
    sweep_cmd->add_option("--parameter", sweep_parameter,
                          "rho_s2z, rho_xs1 or snr (snr varies p = snr*n)")
        ->required();
    sweep_cmd->add_option("--from", sweep_from, "grid start")->required();
    sweep_cmd->add_option("--to", sweep_to, "grid end")->required();
    sweep_cmd->add_option("--steps", sweep_steps, "grid size");

    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "Monte Carlo check of every closed form");
    verify_flags.attach(verify_cmd);
    double verify_alpha = 0;
    CLI::Option* alpha_opt = verify_cmd->add_option(
        "--alpha", verify_alpha, "auxiliary coefficient (default alpha*)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return statecap::cli::kExitInvalidInput;
    }

    try {
        if (cap_cmd->parsed()) {
            return emit(statecap::cli::run_capacity(
                cap_flags.resolve(), statecap::cli::parse_format(cap_flags.format)));
        }
        if (curve_cmd->parsed()) {
            const ChannelConfig cfg = curve_flags.resolve();
            if (!*lo_opt || !*hi_opt) {
                // Default window centered on the optimum.
                const double astar =
                    statecap::alpha_star(statecap::validate(cfg.params));
                if (!*lo_opt) alpha_lo = astar - 1.0;
                if (!*hi_opt) alpha_hi = astar + 1.0;
            }
            return emit(statecap::cli::run_rate_curve(
                cfg, alpha_lo, alpha_hi, curve_steps,
                statecap::cli::parse_format(curve_flags.format)));
        }
        if (sweep_cmd->parsed()) {
            return emit(statecap::cli::run_sweep(
                sweep_flags.resolve(), sweep_parameter, sweep_from, sweep_to,
                sweep_steps, statecap::cli::parse_format(sweep_flags.format)));
        }
        std::optional<double> alpha;
        if (*alpha_opt) alpha = verify_alpha;
        return emit(statecap::cli::run_verify(
            verify_flags.resolve(), alpha, verify_flags.samples,
            verify_flags.seed, statecap::cli::parse_format(verify_flags.format)));
    } catch (const statecap::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return statecap::cli::kExitInvalidInput;
    }
}
