#pragma once

// Occupations, particle and momentum densities, and Friedel-oscillation
// statistics built from a matrix-element table.
//
// States are indexed from m = 0 (ground state); plots labelled "state m - 1"
// with m = 1, 2, ... show the same numbers shifted by one.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "fermitrap/couplings.hpp"
#include "fermitrap/csv.hpp"
#include "fermitrap/errors.hpp"
#include "fermitrap/matrix_elements.hpp"
#include "fermitrap/specfun.hpp"

namespace fermitrap {

/// Uniform samples start + i * step, i = 0 .. count - 1.
struct UniformGrid {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double operator[](std::size_t i) const noexcept { return start + static_cast<double>(i) * step; }
    std::size_t size() const noexcept { return count; }

    /// Symmetric grid on [-half_range, half_range] containing the origin.
    static UniformGrid symmetric(double half_range, std::size_t count) {
        if (!(half_range > 0.0) || count < 3 || count % 2 == 0)
            throw DomainError("UniformGrid::symmetric: need half_range > 0 and an odd count >= 3");
        const double step = 2.0 * half_range / static_cast<double>(count - 1);
        return {-half_range, step, count};
    }

    /// Symmetric grid with the given step, covering at least [-half_range, half_range].
    static UniformGrid symmetric_with_step(double half_range, double step) {
        if (!(half_range > 0.0) || !(step > 0.0)) throw DomainError("UniformGrid: range and step must be positive");
        const auto half = static_cast<std::size_t>(std::ceil(half_range / step - 1e-9));
        return {-static_cast<double>(half) * step, step, 2 * half + 1};
    }

    friend bool operator==(const UniformGrid&, const UniformGrid&) = default;
};

enum class Axis { position, momentum };

inline const char* to_string(Axis axis) { return axis == Axis::position ? "position" : "momentum"; }

/// Density sampled on a grid: n(z) in units of 1/l or p(k) in units of l.
struct DensityProfile {
    Axis axis = Axis::position;
    UniformGrid grid;
    std::vector<double> values;
    TrapSpec trap{2};
};

/// 2001 points over |x| <= L_F + 6, covering the classically forbidden tail.
inline UniformGrid default_grid(const TrapSpec& trap) { return UniformGrid::symmetric(trap.half_width() + 6.0, 2001); }

inline UniformGrid grid_with_step(const TrapSpec& trap, double step) {
    return UniformGrid::symmetric_with_step(trap.half_width() + 6.0, step);
}

/// P(m) = M(m, 0) for m = 0 .. m_max.
inline std::vector<double> occupation_probabilities(const MatrixElementTable& table) {
    std::vector<double> P(static_cast<std::size_t>(table.m_max) + 1);
    for (int m = 0; m <= table.m_max; ++m) P[static_cast<std::size_t>(m)] = table.at(m, 0);
    return P;
}

/// Sum_m P(m) - N.
inline double sum_rule_excess(std::span<const double> P, int N) {
    double sum = 0.0;
    // smallest terms first
    for (auto it = P.rbegin(); it != P.rend(); ++it) sum += *it;
    return sum - static_cast<double>(N);
}

struct DensityOptions {
    bool diagonal_only = false; // drop every p != 0 term
};

namespace detail {

// sum_m sum_p s^p psi_{m-p}(x) psi_{m+p}(x) M(m, p), s = +1 (position) or -1 (momentum)
inline DensityProfile density(const MatrixElementTable& table, const UniformGrid& grid, Axis axis,
                              const DensityOptions& opts) {
    const int p_top = opts.diagonal_only ? 0 : table.p_max;
    const double sign = axis == Axis::momentum ? -1.0 : 1.0;
    DensityProfile out{axis, grid, std::vector<double>(grid.size()), table.trap};
    std::vector<double> psi(static_cast<std::size_t>(table.m_max + p_top) + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        oscillator_wavefunctions(grid[i], psi);
        double total = 0.0;
        for (int m = 0; m <= table.m_max; ++m) {
            const auto um = static_cast<std::size_t>(m);
            double row = psi[um] * psi[um] * table(m, 0);
            double off = 0.0, s = 1.0;
            for (int p = 1; p <= std::min(m, p_top); ++p) {
                s *= sign;
                const auto up = static_cast<std::size_t>(p);
                off += s * psi[um - up] * psi[um + up] * table(m, p);
            }
            total += row + 2.0 * off;
        }
        out.values[i] = total;
    }
    return out;
}

} // namespace detail

/// n(z) = sum_m sum_p psi_{m-p}(z) psi_{m+p}(z) M(m, p).
inline DensityProfile particle_density(const MatrixElementTable& table, const UniformGrid& grid,
                                       const DensityOptions& opts = {}) {
    return detail::density(table, grid, Axis::position, opts);
}

/// p(k) = sum_m sum_p (-1)^p psi_{m-p}(k) psi_{m+p}(k) M(m, p).
inline DensityProfile momentum_density(const MatrixElementTable& table, const UniformGrid& grid,
                                       const DensityOptions& opts = {}) {
    return detail::density(table, grid, Axis::momentum, opts);
}

/// Trapezoid rule over the profile's grid.
inline double integrate(const DensityProfile& profile) {
    const auto& v = profile.values;
    if (v.size() < 2) return 0.0;
    double sum = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
    return sum * profile.grid.step;
}

struct FriedelStats {
    int num_maxima = 0;             // strict interior maxima with |x| < L_F
    double amplitude = 0.0;         // max - min of the detrended profile over |x| < L_F / 2
    double relative_amplitude = 0.0; // amplitude over the mean baseline on the same window
    double period_estimate = 0.0;
};

inline constexpr int kPointsPerPeriod = 40;

inline FriedelStats friedel_stats(const DensityProfile& profile) {
    const auto& g = profile.grid;
    const auto& v = profile.values;
    const double L = profile.trap.half_width();
    const double nominal_period = std::numbers::pi / profile.trap.fermi_wavenumber();
    if (v.size() != g.size()) throw DomainError("friedel_stats: grid and values differ in length");
    if (g.step > nominal_period / kPointsPerPeriod)
        throw ResolutionError("friedel_stats: grid step " + std::to_string(g.step) + " exceeds " +
                              std::to_string(nominal_period / kPointsPerPeriod) + " (need " +
                              std::to_string(kPointsPerPeriod) + " points per oscillation period)");

    FriedelStats stats;
    std::vector<double> central_maxima;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const double x = g[i];
        if (std::abs(x) >= L) continue;
        if (v[i] > v[i - 1] && v[i] > v[i + 1]) {
            ++stats.num_maxima;
            if (std::abs(x) < 0.5 * L) central_maxima.push_back(x);
        }
    }
    stats.period_estimate = central_maxima.size() >= 2
                                ? (central_maxima.back() - central_maxima.front()) /
                                      static_cast<double>(central_maxima.size() - 1)
                                : nominal_period;

    // centered moving average over one period, truncated at the ends
    const auto half = static_cast<std::ptrdiff_t>(std::lround(0.5 * stats.period_estimate / g.step));
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    std::vector<double> prefix(v.size() + 1, 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) prefix[i + 1] = prefix[i] + v[i];
    double lo = 0.0, hi = 0.0, baseline_sum = 0.0;
    std::size_t in_window = 0;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        if (std::abs(g[static_cast<std::size_t>(i)]) >= 0.5 * L) continue;
        const auto a = std::max<std::ptrdiff_t>(0, i - half);
        const auto b = std::min<std::ptrdiff_t>(n - 1, i + half);
        const double baseline = (prefix[static_cast<std::size_t>(b + 1)] - prefix[static_cast<std::size_t>(a)]) /
                                static_cast<double>(b - a + 1);
        const double osc = v[static_cast<std::size_t>(i)] - baseline;
        if (in_window == 0) lo = hi = osc;
        lo = std::min(lo, osc);
        hi = std::max(hi, osc);
        baseline_sum += baseline;
        ++in_window;
    }
    if (in_window > 0) {
        stats.amplitude = hi - lo;
        const double mean_baseline = baseline_sum / static_cast<double>(in_window);
        stats.relative_amplitude = mean_baseline != 0.0 ? stats.amplitude / std::abs(mean_baseline) : 0.0;
    }
    return stats;
}

/// CSV `x,value`.
inline void write_csv(std::ostream& os, const DensityProfile& profile) {
    os << "x,value\n";
    for (std::size_t i = 0; i < profile.values.size(); ++i)
        os << csv::format(profile.grid[i]) << ',' << csv::format(profile.values[i]) << '\n';
}

/// CSV `m,P`.
inline void write_occupation_csv(std::ostream& os, std::span<const double> P) {
    os << "m,P\n";
    for (std::size_t m = 0; m < P.size(); ++m) os << m << ',' << csv::format(P[m]) << '\n';
}

} // namespace fermitrap
