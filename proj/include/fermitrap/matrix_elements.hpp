#pragma once

// One-particle matrix elements M(m, p) = <c+_{m-p} c_{m+p}> at zero temperature.
//
// Two closed forms (single-mode IM1, exponentially decaying IM2) and the
// mode-sum route exp(-W) that both reduce from.  All integrals run over
// [-pi, pi] with the periodic trapezoid rule.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fermitrap/couplings.hpp"
#include "fermitrap/csv.hpp"
#include "fermitrap/errors.hpp"
#include "fermitrap/quadrature.hpp"
#include "fermitrap/specfun.hpp"

namespace fermitrap {

namespace detail {

inline void require_indices(int m, int p, const char* who) {
    if (m < 0 || std::abs(p) > m)
        throw DomainError(std::string(who) + ": need m >= |p| >= 0, got m = " + std::to_string(m) +
                          ", p = " + std::to_string(p));
}

inline void require_model(const EffectiveCouplings& c, InteractionModel model, const char* who) {
    if (c.model != model)
        throw DomainError(std::string(who) + ": couplings are " + to_string(c.model) + ", expected " +
                          to_string(model));
}

inline const DecayParameters& require_decay(const EffectiveCouplings& c, const char* who) {
    require_model(c, InteractionModel::im2, who);
    if (!c.decay) throw DomainError(std::string(who) + ": IM2 couplings carry no decay parameters");
    const auto& d = *c.decay;
    if (d.gamma_bar_0 > 0.0 && !(d.Z_gamma > 0.0))
        throw SingularKernelError(std::string(who) + ": Z_gamma = 0 with gamma_bar_0 > 0 (decay constant must be positive)");
    if (d.alpha_bar_0 != 0.0 && !(d.Z_alpha > 0.0))
        throw SingularKernelError(std::string(who) + ": Z_alpha = 0 with alpha_bar_0 != 0 (decay constant must be positive)");
    return d;
}

inline double checked_log(double base) {
    if (!(base > 0.0)) throw SingularKernelError("power-law kernel base " + std::to_string(base) + " is not positive");
    return std::log(base);
}

// Logarithm of the s-only factor [Z_gamma / (1 + Z_gamma - cos s)]^gamma_bar_0.
inline double log_gamma_factor(const DecayParameters& d, double cos_s) {
    if (d.gamma_bar_0 == 0.0) return 0.0;
    return d.gamma_bar_0 * (std::log(d.Z_gamma) - checked_log(1.0 + d.Z_gamma - cos_s));
}

// Logarithm of [1 + Z_a - cos t]^(-a0) [(1 + Z_a - cos(t-s)) (1 + Z_a - cos(t+s))]^(a0/2).
inline double log_alpha_factor(const DecayParameters& d, double cos_s, double sin_s, double cos_t, double sin_t) {
    if (d.alpha_bar_0 == 0.0) return 0.0;
    const double base = 1.0 + d.Z_alpha;
    const double minus = base - (cos_t * cos_s + sin_t * sin_s); // 1 + Z - cos(t - s)
    const double plus = base - (cos_t * cos_s - sin_t * sin_s);  // 1 + Z - cos(t + s)
    return -d.alpha_bar_0 * checked_log(base - cos_t) + 0.5 * d.alpha_bar_0 * checked_log(minus * plus);
}

} // namespace detail

/// Quadrature defaults tuned to each model's integrand sharpness.
inline QuadratureSpec default_quadrature(const EffectiveCouplings& c) {
    QuadratureSpec q;
    switch (c.model) {
    case InteractionModel::im1:
        q.initial_nodes = std::abs(c.alpha_bar_at(1)) > 2.0 ? 1024 : 512;
        q.max_doublings = 8;
        break;
    case InteractionModel::im2:
        q.initial_nodes = (c.decay && std::abs(c.decay->alpha_bar_0) > 2.0) ? 1024 : 256;
        q.max_doublings = 5;
        break;
    case InteractionModel::generic:
        q.initial_nodes = 256;
        q.max_doublings = 4;
        break;
    }
    return q;
}

/// Single-mode closed form:
/// M = delta_p0 / 2 - (1/2pi) int ds D_m(s) exp[-2 g1 (1 - cos s)] I_p(2 a1 (1 - cos s)).
inline double im1_matrix_element(int m, int p, const TrapSpec& trap, const EffectiveCouplings& c,
                                 const QuadratureSpec& spec) {
    detail::require_indices(m, p, "im1_matrix_element");
    detail::require_model(c, InteractionModel::im1, "im1_matrix_element");
    p = std::abs(p);
    const int N = trap.particles();
    const double a1 = c.alpha_bar_at(1);
    const double g1 = c.gamma_bar_at(1);
    auto integrand = [&](double s) {
        const double y = 1.0 - std::cos(s);
        return dirichlet_kernel(m, N, s) * std::exp(-2.0 * g1 * y) * bessel_i(p, 2.0 * a1 * y);
    };
    const double integral = periodic_integrate(integrand, spec) / (2.0 * std::numbers::pi);
    return (p == 0 ? 0.5 : 0.0) - integral;
}

inline double im1_matrix_element(int m, int p, const TrapSpec& trap, const EffectiveCouplings& c) {
    return im1_matrix_element(m, p, trap, c, default_quadrature(c));
}

/// Exponentially decaying closed form, a double integral over s and t.
inline double im2_matrix_element(int m, int p, const TrapSpec& trap, const EffectiveCouplings& c,
                                 const QuadratureSpec& spec) {
    detail::require_indices(m, p, "im2_matrix_element");
    const auto& d = detail::require_decay(c, "im2_matrix_element");
    p = std::abs(p);
    const int N = trap.particles();
    auto integrand = [&](double s, double t) {
        const double cs = std::cos(s), ss = std::sin(s), ct = std::cos(t), st = std::sin(t);
        const double log_weight = detail::log_gamma_factor(d, cs) + detail::log_alpha_factor(d, cs, ss, ct, st);
        return dirichlet_kernel(m, N, s) * std::cos(p * t) * std::exp(log_weight);
    };
    const double integral = periodic_integrate(integrand, spec) / (4.0 * std::numbers::pi * std::numbers::pi);
    return (p == 0 ? 0.5 : 0.0) - integral;
}

inline double im2_matrix_element(int m, int p, const TrapSpec& trap, const EffectiveCouplings& c) {
    return im2_matrix_element(m, p, trap, c, default_quadrature(c));
}

/// W(u, v) = sum_m (2/m) [gamma-bar_m - alpha-bar_m cos m(u+v)] [1 - cos m(u-v)],
/// truncated at `max_mode` (defaults to the couplings' own truncation).
inline double w_function(double u, double v, const EffectiveCouplings& c, std::optional<int> max_mode = {}) {
    const int K = max_mode.value_or(c.truncation());
    const double sum_angle = u + v, diff_angle = u - v;
    const double c1 = std::cos(sum_angle), d1 = std::cos(diff_angle);
    // Chebyshev recurrences for cos(k x)
    double c_prev = 1.0, c_cur = c1, d_prev = 1.0, d_cur = d1;
    double w = 0.0;
    for (int k = 1; k <= K; ++k) {
        w += (2.0 / k) * (c.gamma_bar_at(k) - c.alpha_bar_at(k) * c_cur) * (1.0 - d_cur);
        const double c_next = 2.0 * c1 * c_cur - c_prev;
        const double d_next = 2.0 * d1 * d_cur - d_prev;
        c_prev = c_cur;
        c_cur = c_next;
        d_prev = d_cur;
        d_cur = d_next;
    }
    return w;
}

/// Smallest mode count beyond which every remaining coupling is below `cutoff`.
inline int mode_cutoff(const EffectiveCouplings& c, double cutoff = kCouplingCutoff) {
    int K = 0;
    for (int m = 1; m <= c.truncation(); ++m)
        if (std::abs(c.alpha_bar_at(m)) >= cutoff || std::abs(c.gamma_bar_at(m)) >= cutoff) K = m;
    return std::max(K, 1);
}

/// Brute-force route: the explicit mode sum in the exponent, no resummation.
/// M = delta_p0 / 2 - int int ds dt / 4pi^2 D_m(s) cos(p t) exp[-W((t+s)/2, (t-s)/2)].
inline double mode_sum_oracle(int m, int p, const TrapSpec& trap, const EffectiveCouplings& c, int K,
                              const QuadratureSpec& spec) {
    detail::require_indices(m, p, "mode_sum_oracle");
    if (K < 1) throw DomainError("mode_sum_oracle: mode cutoff must be >= 1");
    p = std::abs(p);
    const int N = trap.particles();
    auto integrand = [&](double s, double t) {
        const double w = w_function(0.5 * (t + s), 0.5 * (t - s), c, K);
        return dirichlet_kernel(m, N, s) * std::cos(p * t) * std::exp(-w);
    };
    const double integral = periodic_integrate(integrand, spec) / (4.0 * std::numbers::pi * std::numbers::pi);
    return (p == 0 ? 0.5 : 0.0) - integral;
}

inline double mode_sum_oracle(int m, int p, const TrapSpec& trap, const EffectiveCouplings& c, int K) {
    QuadratureSpec q = default_quadrature(c);
    q.initial_nodes = std::max(q.initial_nodes, 256);
    return mode_sum_oracle(m, p, trap, c, K, q);
}

/// M(m, p) on 0 <= m <= m_max, 0 <= p <= min(m, p_max); negative p by symmetry.
struct MatrixElementTable {
    TrapSpec trap;
    EffectiveCouplings couplings;
    int m_max = 0;
    int p_max = 0;
    QuadratureSpec quadrature;
    std::vector<double> values; // index m * (p_max + 1) + p

    bool contains(int m, int p) const noexcept {
        p = std::abs(p);
        return m >= 0 && m <= m_max && p <= p_max && p <= m;
    }
    /// Stored value, or zero outside the truncated grid.
    double operator()(int m, int p) const noexcept {
        return contains(m, p) ? values[index(m, std::abs(p))] : 0.0;
    }
    double at(int m, int p) const {
        if (!contains(m, p))
            throw DomainError("MatrixElementTable: (" + std::to_string(m) + ", " + std::to_string(p) +
                              ") is outside the table");
        return values[index(m, std::abs(p))];
    }
    std::size_t index(int m, int p) const noexcept {
        return static_cast<std::size_t>(m) * static_cast<std::size_t>(p_max + 1) + static_cast<std::size_t>(p);
    }
};

namespace detail {

struct TableLayout {
    std::vector<int> m, p;
    std::vector<std::size_t> slot;
};

inline TableLayout table_layout(int m_max, int p_max) {
    TableLayout layout;
    for (int m = 0; m <= m_max; ++m)
        for (int p = 0; p <= std::min(m, p_max); ++p) {
            layout.m.push_back(m);
            layout.p.push_back(p);
            layout.slot.push_back(static_cast<std::size_t>(m) * static_cast<std::size_t>(p_max + 1) +
                                  static_cast<std::size_t>(p));
        }
    return layout;
}

// D_m(s) for every m in [0, m_max].
inline void kernel_row(int m_max, int N, double s, std::vector<double>& out) {
    out.resize(static_cast<std::size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) out[static_cast<std::size_t>(m)] = dirichlet_kernel(m, N, s);
}

inline void fill_table(MatrixElementTable& table, const TableLayout& layout, const std::vector<double>& integrals,
                       double norm) {
    table.values.assign(static_cast<std::size_t>(table.m_max + 1) * static_cast<std::size_t>(table.p_max + 1),
                        std::numeric_limits<double>::quiet_NaN());
    for (std::size_t e = 0; e < layout.m.size(); ++e)
        table.values[layout.slot[e]] = (layout.p[e] == 0 ? 0.5 : 0.0) - integrals[e] / norm;
}

inline void build_im1(MatrixElementTable& table, const TableLayout& layout) {
    const int N = table.trap.particles();
    const double a1 = table.couplings.alpha_bar_at(1);
    const double g1 = table.couplings.gamma_bar_at(1);
    std::vector<double> kernel, bessel(static_cast<std::size_t>(table.p_max) + 1);
    auto integrand = [&](double s, std::span<double> out) {
        const double y = 1.0 - std::cos(s);
        bessel_i_sequence(2.0 * a1 * y, bessel);
        const double damping = std::exp(-2.0 * g1 * y);
        kernel_row(table.m_max, N, s, kernel);
        for (std::size_t e = 0; e < out.size(); ++e)
            out[e] = kernel[static_cast<std::size_t>(layout.m[e])] * damping *
                     bessel[static_cast<std::size_t>(layout.p[e])];
    };
    const auto integrals = periodic_integrate_batch(integrand, layout.m.size(), table.quadrature);
    fill_table(table, layout, integrals, 2.0 * std::numbers::pi);
}

// The t-integral does not depend on m, so it is done once per s node for
// every p and shared by all rows of the table.
inline void build_im2(MatrixElementTable& table, const TableLayout& layout) {
    const auto& d = require_decay(table.couplings, "build_table");
    const int N = table.trap.particles();
    const std::size_t np = static_cast<std::size_t>(table.p_max) + 1;
    std::vector<double> kernel;
    auto integrand = [&](double s, std::span<double> out) {
        const double cs = std::cos(s), ss = std::sin(s);
        auto inner = [&](double t, std::span<double> g) {
            const double ct = std::cos(t), st = std::sin(t);
            const double weight = std::exp(log_alpha_factor(d, cs, ss, ct, st));
            double c_prev = 1.0, c_cur = ct; // cos(p t) by recurrence
            g[0] = weight;
            for (std::size_t p = 1; p < np; ++p) {
                g[p] = weight * c_cur;
                const double c_next = 2.0 * ct * c_cur - c_prev;
                c_prev = c_cur;
                c_cur = c_next;
            }
        };
        const auto g = periodic_integrate_batch(inner, np, table.quadrature);
        const double gamma_factor = std::exp(log_gamma_factor(d, cs));
        kernel_row(table.m_max, N, s, kernel);
        for (std::size_t e = 0; e < out.size(); ++e)
            out[e] = kernel[static_cast<std::size_t>(layout.m[e])] * gamma_factor *
                     g[static_cast<std::size_t>(layout.p[e])];
    };
    const auto integrals = periodic_integrate_batch(integrand, layout.m.size(), table.quadrature);
    fill_table(table, layout, integrals, 4.0 * std::numbers::pi * std::numbers::pi);
}

inline void build_generic(MatrixElementTable& table, const TableLayout& layout) {
    const int K = mode_cutoff(table.couplings);
    std::vector<double> integrals(layout.m.size());
    for (std::size_t e = 0; e < layout.m.size(); ++e) {
        const double v = mode_sum_oracle(layout.m[e], layout.p[e], table.trap, table.couplings, K, table.quadrature);
        integrals[e] = (layout.p[e] == 0 ? 0.5 : 0.0) - v;
    }
    fill_table(table, layout, integrals, 1.0);
}

} // namespace detail

/// Fills every valid (m, p >= 0) with the model's closed form.
inline MatrixElementTable build_table(const TrapSpec& trap, const EffectiveCouplings& couplings, int m_max, int p_max,
                                      const QuadratureSpec& spec) {
    if (m_max < 0 || p_max < 0) throw DomainError("build_table: m_max and p_max must be non-negative");
    MatrixElementTable table{trap, couplings, m_max, p_max, spec, {}};
    const auto layout = detail::table_layout(m_max, p_max);
    switch (couplings.model) {
    case InteractionModel::im1: detail::build_im1(table, layout); break;
    case InteractionModel::im2: detail::build_im2(table, layout); break;
    case InteractionModel::generic: detail::build_generic(table, layout); break;
    }
    return table;
}

inline MatrixElementTable build_table(const TrapSpec& trap, const EffectiveCouplings& couplings, int m_max, int p_max) {
    return build_table(trap, couplings, m_max, p_max, default_quadrature(couplings));
}

inline int default_m_max(const TrapSpec& trap) { return 2 * trap.particles() - 1 + 10; }

struct TableOptions {
    std::optional<int> m_max;          // default 2N - 1 + 10
    int p_max = 8;
    double tail_tolerance = 1e-10;     // largest |M| allowed on the truncation boundary
    int m_limit = 4000;
    std::optional<QuadratureSpec> quadrature;
};

/// Largest |M| on the outermost p column and the outermost m row.
struct TableTails {
    double p_edge = 0.0;
    double m_edge = 0.0;
};

inline TableTails table_tails(const MatrixElementTable& t) {
    TableTails tails;
    for (int m = t.p_max; m <= t.m_max; ++m) tails.p_edge = std::max(tails.p_edge, std::abs(t(m, t.p_max)));
    for (int m = std::max(0, t.m_max - 1); m <= t.m_max; ++m)
        for (int p = 0; p <= std::min(m, t.p_max); ++p) tails.m_edge = std::max(tails.m_edge, std::abs(t(m, p)));
    return tails;
}

/// Builds a table and widens p_max / m_max until the boundary entries fall
/// below the tail tolerance, so sums over the table are truncation-safe.
inline MatrixElementTable build_converged_table(const TrapSpec& trap, const EffectiveCouplings& couplings,
                                                const TableOptions& opts = {}) {
    int m_max = opts.m_max.value_or(default_m_max(trap));
    int p_max = std::max(0, opts.p_max);
    const auto spec = opts.quadrature.value_or(default_quadrature(couplings));
    for (;;) {
        auto table = build_table(trap, couplings, m_max, p_max, spec);
        const auto tails = table_tails(table);
        const bool grow_p = tails.p_edge > opts.tail_tolerance && p_max < m_max;
        const bool grow_m = tails.m_edge > opts.tail_tolerance;
        if (!grow_p && !grow_m) return table;
        if (m_max >= opts.m_limit)
            throw ConvergenceError("build_converged_table: tails did not decay before m_max = " +
                                       std::to_string(m_max),
                                   tails.p_edge, tails.m_edge);
        if (grow_p) p_max = std::min(m_max, std::max(2 * p_max, p_max + 4));
        if (grow_m) m_max += 10;
    }
}

/// CSV with header `m,p,value`, rows ordered by m then p >= 0.
inline void write_csv(std::ostream& os, const MatrixElementTable& table) {
    os << "m,p,value\n";
    for (int m = 0; m <= table.m_max; ++m)
        for (int p = 0; p <= std::min(m, table.p_max); ++p)
            os << m << ',' << p << ',' << csv::format(table.at(m, p)) << '\n';
}

} // namespace fermitrap
