#pragma once

// Subcommand bodies.  Each writes one or more CSV files into out_dir, every
// file headed by the configuration that produced it, and a short summary to
// the log stream.

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "fermitrap/fermitrap.hpp"
#include "run_config.hpp"

namespace fermitrap::cli {

namespace detail {

inline EffectiveCouplings couplings_for(const RunConfig& cfg, const std::string& model, double alpha_bar_1) {
    try {
        if (model == "free") return im1_couplings(0.0);
        if (model == "im2") return im2_couplings(alpha_bar_1, cfg.decay());
        return im1_couplings(alpha_bar_1);
    } catch (const fermitrap::DomainError& e) {
        throw ConfigError(e.what());
    } catch (const fermitrap::InstabilityError& e) {
        throw ConfigError(e.what());
    }
}

inline EffectiveCouplings couplings_for(const RunConfig& cfg) {
    return couplings_for(cfg, cfg.model, cfg.alpha_bar_1);
}

inline QuadratureSpec quadrature_for(const RunConfig& cfg, const EffectiveCouplings& c) {
    auto spec = default_quadrature(c);
    if (cfg.tolerance) spec.rel_tolerance = *cfg.tolerance;
    return spec;
}

// Explicit --m-max / --p-max fix the window; otherwise it grows until the
// boundary entries are negligible.
inline MatrixElementTable table_for(const RunConfig& cfg, const TrapSpec& trap, const EffectiveCouplings& c) {
    const auto spec = quadrature_for(cfg, c);
    if (cfg.m_max || cfg.p_max) {
        const int m_max = cfg.m_max.value_or(default_m_max(trap));
        const int p_max = std::min(cfg.p_max.value_or(8), m_max);
        return build_table(trap, c, m_max, p_max, spec);
    }
    TableOptions opts;
    opts.quadrature = spec;
    return build_converged_table(trap, c, opts);
}

inline UniformGrid grid_for(const RunConfig& cfg, const TrapSpec& trap) {
    const double half = cfg.grid_range.value_or(trap.half_width() + 6.0);
    return cfg.grid_step ? UniformGrid::symmetric_with_step(half, *cfg.grid_step) : UniformGrid::symmetric(half, 2001);
}

inline void write_file(const RunConfig& cfg, const std::string& name, const std::string& content,
                       const std::function<void(std::ostream&)>& body) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    const auto path = std::filesystem::path(cfg.out_dir) / name;
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw ConfigError("cannot write " + path.string() + " (check --out-dir)");
    write_header(os, cfg.resolved(), content);
    body(os);
    if (!os) throw ConfigError("write to " + path.string() + " failed");
}

inline void write_row(std::ostream& os, double x, std::initializer_list<double> values) {
    os << csv::format(x);
    for (double v : values) os << ',' << csv::format(v);
    os << '\n';
}

} // namespace detail

inline void run_couplings(const RunConfig& cfg, std::ostream& log) {
    const auto c = detail::couplings_for(cfg);
    std::vector<std::pair<std::string, double>> rows;
    const double V = c.strengths.empty() ? 0.0 : c.strengths.front();
    rows.emplace_back("V1", V);
    rows.emplace_back("alpha_bar_1", c.alpha_bar_at(1));
    rows.emplace_back("gamma_bar_1", c.gamma_bar_at(1));
    if (!c.modes.empty()) {
        const auto& b = c.modes.front().branch;
        rows.emplace_back("zeta_plus", b.plus.zeta);
        rows.emplace_back("zeta_minus", b.minus.zeta);
        rows.emplace_back("alpha_plus", b.plus.alpha);
        rows.emplace_back("alpha_minus", b.minus.alpha);
        rows.emplace_back("gamma_plus", b.plus.gamma);
        rows.emplace_back("gamma_minus", b.minus.gamma);
        rows.emplace_back("epsilon_plus", b.plus.epsilon);
        rows.emplace_back("epsilon_minus", b.minus.epsilon);
    }
    rows.emplace_back("modes", c.truncation());
    if (c.decay) {
        rows.emplace_back("r_alpha", c.decay->r_alpha);
        rows.emplace_back("r_gamma", c.decay->r_gamma);
        rows.emplace_back("alpha_bar_0", c.decay->alpha_bar_0);
        rows.emplace_back("gamma_bar_0", c.decay->gamma_bar_0);
        rows.emplace_back("Z_alpha", c.decay->Z_alpha);
        rows.emplace_back("Z_gamma", c.decay->Z_gamma);
    }
    detail::write_file(cfg, "couplings.csv", "effective couplings of mode 1 (and decay data)", [&](std::ostream& os) {
        os << "quantity,value\n";
        for (const auto& [k, v] : rows) os << k << ',' << csv::format(v) << '\n';
    });
    for (const auto& [k, v] : rows) log << k << " = " << csv::format(v) << '\n';
}

inline void run_table(const RunConfig& cfg, std::ostream& log) {
    const TrapSpec trap(cfg.N);
    const auto table = detail::table_for(cfg, trap, detail::couplings_for(cfg));
    detail::write_file(cfg, "table.csv", "matrix elements M(m, p), p >= 0",
                       [&](std::ostream& os) { write_csv(os, table); });
    log << "table: m_max = " << table.m_max << ", p_max = " << table.p_max << '\n';
}

inline void run_occupation(const RunConfig& cfg, std::ostream& log) {
    const TrapSpec trap(cfg.N);
    const auto table = detail::table_for(cfg, trap, detail::couplings_for(cfg));
    const auto P = occupation_probabilities(table);
    detail::write_file(cfg, "occupation.csv", "occupation probabilities P(m) = M(m, 0)",
                       [&](std::ostream& os) { write_occupation_csv(os, P); });
    log << "sum_m P(m) - N = " << csv::format(sum_rule_excess(P, cfg.N)) << '\n';
}

inline void run_profile(const RunConfig& cfg, std::ostream& log, Axis axis) {
    const TrapSpec trap(cfg.N);
    const auto table = detail::table_for(cfg, trap, detail::couplings_for(cfg));
    const auto grid = detail::grid_for(cfg, trap);
    const auto profile = axis == Axis::position ? particle_density(table, grid) : momentum_density(table, grid);
    const std::string name = axis == Axis::position ? "density" : "momentum";
    detail::write_file(cfg, name + ".csv",
                       axis == Axis::position ? "particle density n(z)" : "momentum density p(k)",
                       [&](std::ostream& os) { write_csv(os, profile); });
    log << name << ": integral = " << csv::format(integrate(profile)) << " over " << grid.size() << " points\n";
}

inline void run_edge(const RunConfig& cfg, std::ostream& log) {
    double g = 0.0;
    if (cfg.gamma_bar_0) {
        g = *cfg.gamma_bar_0;
    } else {
        g = detail::couplings_for(cfg, "im2", cfg.alpha_bar_1).decay->gamma_bar_0;
    }
    const auto model = make_edge_model(cfg.N, cfg.decay(), g);
    const double limit = 0.5 / model.slope;
    constexpr int points = 41;
    detail::write_file(cfg, "edge.csv", "linearized Fermi-edge occupation P(dk) = 1/2 - slope dk",
                       [&](std::ostream& os) {
                           os << "dk,P\n";
                           for (int i = 0; i < points; ++i) {
                               const double dk = -limit + 2.0 * limit * i / (points - 1);
                               detail::write_row(os, dk, {edge_occupation(dk, model)});
                           }
                       });
    log << "gamma_bar_0 = " << csv::format(g) << '\n'
        << "r_gamma = " << csv::format(model.r_gamma) << '\n'
        << "slope = " << csv::format(model.slope) << '\n'
        << "linear window |dk| <= " << csv::format(limit) << '\n';
}

inline dipole::PhysicalParams physical_params(const RunConfig& cfg) {
    dipole::PhysicalParams p;
    p.mu = cfg.mu_bohr * dipole::kBohrMagneton;
    p.mass = cfg.mass_u * dipole::kAtomicMassUnit;
    p.omega_ell = cfg.omega_ell;
    p.N = cfg.N;
    if (cfg.omega_t) {
        p.omega_t = *cfg.omega_t;
        return p;
    }
    return p.with_filling(cfg.resolved().filling.value());
}

inline void run_dipole(const RunConfig& cfg, std::ostream& log) {
    const auto p = physical_params(cfg);
    const auto est = dipole::v1_estimate(p);
    const double at = p.alpha_t();
    constexpr int points = 201;
    detail::write_file(cfg, "dipole.csv", "1D dipolar potential vs k / alpha_t (bracket and J m)",
                       [&](std::ostream& os) {
                           os << "k_over_alpha_t,bracket,v1d\n";
                           for (int i = 0; i < points; ++i) {
                               const double q = 10.0 * i / (points - 1);
                               detail::write_row(os, q, {dipole::v1d_bracket(0.5 * q * q),
                                                         dipole::v1d_momentum(q * at, p)});
                           }
                       });
    log << "V1 = " << csv::format(est.value) << '\n'
        << "F = " << csv::format(est.filling) << '\n'
        << "alpha_t = " << csv::format(at) << " 1/m\n"
        << "note: " << est.provenance << '\n';
}

inline void run_figures(const RunConfig& cfg, std::ostream& log) {
    const TrapSpec trap(cfg.N);
    const auto grid = detail::grid_for(cfg, trap);
    auto table = [&](const std::string& model, double a) {
        return detail::table_for(cfg, trap, detail::couplings_for(cfg, model, a));
    };
    auto guarded = [&](const char* name, const std::function<void()>& f) {
        try {
            f();
        } catch (const fermitrap::Error& e) {
            throw fermitrap::Error(std::string(name) + ": " + e.what());
        }
        log << name << " written\n";
    };
    auto two_profiles = [&](const std::string& name, const std::string& content, const DensityProfile& free,
                            const DensityProfile& inter) {
        detail::write_file(cfg, name + ".csv", content, [&](std::ostream& os) {
            os << "x,free,interacting\n";
            for (std::size_t i = 0; i < grid.size(); ++i)
                detail::write_row(os, grid[i], {free.values[i], inter.values[i]});
        });
    };

    std::optional<MatrixElementTable> free_table, im1, im1_strong, im2;
    guarded("fig1", [&] {
        im1 = table("im1", -1.0);
        const auto P = occupation_probabilities(*im1);
        detail::write_file(cfg, "fig1.csv", "fig1: occupation P(m), IM1, alpha_bar_1 = -1",
                           [&](std::ostream& os) { write_occupation_csv(os, P); });
    });
    guarded("fig2", [&] {
        detail::write_file(cfg, "fig2.csv", "fig2: off-diagonal M(m, 1), IM1, alpha_bar_1 = -1",
                           [&](std::ostream& os) {
                               os << "m,M1\n";
                               for (int m = 1; m <= im1->m_max; ++m)
                                   os << m << ',' << csv::format(im1->at(m, 1)) << '\n';
                           });
    });
    guarded("fig3", [&] {
        free_table = table("free", 0.0);
        two_profiles("fig3", "fig3: particle density n(z), free and IM1 with alpha_bar_1 = -1",
                     particle_density(*free_table, grid), particle_density(*im1, grid));
    });
    guarded("fig4", [&] {
        im1_strong = table("im1", -10.0);
        two_profiles("fig4", "fig4: momentum density p(k), free and IM1 with alpha_bar_1 = -10",
                     momentum_density(*free_table, grid), momentum_density(*im1_strong, grid));
    });
    guarded("fig5", [&] {
        im2 = table("im2", -1.0);
        const auto P = occupation_probabilities(*im2);
        detail::write_file(cfg, "fig5.csv", "fig5: occupation P(m), IM2, alpha_bar_1 = -1",
                           [&](std::ostream& os) { write_occupation_csv(os, P); });
    });
    guarded("fig6", [&] {
        two_profiles("fig6", "fig6: momentum density p(k), free and IM2 with alpha_bar_1 = -1",
                     momentum_density(*free_table, grid), momentum_density(*im2, grid));
    });
}

inline void run(const RunConfig& cfg, std::ostream& log) {
    cfg.validate();
    if (cfg.command == "couplings") return run_couplings(cfg, log);
    if (cfg.command == "table") return run_table(cfg, log);
    if (cfg.command == "occupation") return run_occupation(cfg, log);
    if (cfg.command == "density") return run_profile(cfg, log, Axis::position);
    if (cfg.command == "momentum") return run_profile(cfg, log, Axis::momentum);
    if (cfg.command == "edge") return run_edge(cfg, log);
    if (cfg.command == "dipole") return run_dipole(cfg, log);
    return run_figures(cfg, log);
}

} // namespace fermitrap::cli
