// fermitrap: command-line front end.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using fermitrap::cli::ConfigError;
using fermitrap::cli::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

void add_options(CLI::App& app, RunConfig& cfg) {
    app.add_option("--N", cfg.N, "particles per component")->capture_default_str();
    app.add_option("--model", cfg.model, "im1 | im2 | free")->capture_default_str();
    app.add_option("--alpha-bar-1", cfg.alpha_bar_1, "effective coupling of mode 1 (<= 0)")->capture_default_str();
    app.add_option("--r", cfg.r, "IM2 decay constant (default 0.3 at N = 14, else 1/sqrt(N))");
    app.add_option("--p-max", cfg.p_max, "fixed off-diagonal window (default: grown to convergence)");
    app.add_option("--m-max", cfg.m_max, "fixed oscillator-level window (default: grown to convergence)");
    app.add_option("--grid-step", cfg.grid_step, "profile grid step (default: 2001 points)");
    app.add_option("--grid-range", cfg.grid_range, "profile half range (default: L_F + 6)");
    app.add_option("--tolerance", cfg.tolerance, "quadrature relative tolerance");
    app.add_option("--out-dir", cfg.out_dir, "output directory")->capture_default_str();
    app.add_option("--gamma-bar-0", cfg.gamma_bar_0, "edge: IM2 gamma-bar_0 (default from the couplings)");
    app.add_option("--mu-bohr", cfg.mu_bohr, "dipole: magnetic moment in Bohr magnetons")->capture_default_str();
    app.add_option("--mass-u", cfg.mass_u, "dipole: atomic mass in u")->capture_default_str();
    app.add_option("--omega-ell", cfg.omega_ell, "dipole: longitudinal trap frequency, rad/s")
        ->capture_default_str();
    auto* omega_t = app.add_option("--omega-t", cfg.omega_t, "dipole: transverse trap frequency, rad/s");
    auto* filling = app.add_option("--F", cfg.filling, "dipole: filling factor N omega_l / omega_t (default 0.01)");
    omega_t->excludes(filling);
    app.set_config("--config", "", "key = value file; flags override it");
    // every output header records the subcommand; accepted in config files and ignored
    static std::string recorded_command;
    app.add_option("--command", recorded_command)->group("");
    app.allow_config_extras(CLI::config_extras_mode::error);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bosonized two-component Fermi gas in a harmonic trap"};
    app.set_version_flag("--version", fermitrap::cli::kVersion);
    app.require_subcommand(1);
    RunConfig cfg;
    add_options(app, cfg);

    const std::pair<const char*, const char*> commands[] = {
        {"couplings", "effective couplings for --model and --alpha-bar-1"},
        {"table", "matrix elements M(m, p)"},
        {"occupation", "occupation probabilities P(m)"},
        {"density", "particle density n(z)"},
        {"momentum", "momentum density p(k)"},
        {"edge", "linearized Fermi-edge occupation"},
        {"dipole", "dipolar V(1) estimate and 1D potential"},
        {"figures", "data for fig1 .. fig6"},
    };
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help)->fallthrough()->callback([&cfg, n = name] { cfg.command = n; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        fermitrap::cli::run(cfg, std::cout);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const fermitrap::Error& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
