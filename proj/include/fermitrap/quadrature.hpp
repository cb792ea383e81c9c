#pragma once

// Trapezoid rule for smooth 2pi-periodic integrands on [-pi, pi]^d.
//
// Each level samples the midpoints (j + 1/2) h of its own grid, so the node
// set is symmetric about the origin and never contains it.  Levels are not
// nested: a nested offset grid is asymmetric, and for even integrands its
// last two levels then agree exactly whatever the resolution.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "fermitrap/errors.hpp"

namespace fermitrap {

struct QuadratureSpec {
    int initial_nodes = 512;
    double rel_tolerance = 1e-12;
    int max_doublings = 8;

    void validate() const {
        if (initial_nodes < 16 || (initial_nodes & (initial_nodes - 1)) != 0)
            throw DomainError("QuadratureSpec: initial_nodes must be a power of two >= 16, got " +
                              std::to_string(initial_nodes));
        if (!(rel_tolerance > 0.0))
            throw DomainError("QuadratureSpec: rel_tolerance must be positive");
        if (max_doublings < 1 || max_doublings > 24)
            throw DomainError("QuadratureSpec: max_doublings must lie in [1, 24]");
    }

    friend bool operator==(const QuadratureSpec&, const QuadratureSpec&) = default;
};

namespace detail {

// Successive estimates agree relative to the larger of the result and the
// integrand's L1 norm; the latter keeps near-zero integrals from stalling.
inline bool estimates_agree(double next, double prev, double l1_norm, double tol) {
    return std::abs(next - prev) <= tol * std::max(std::abs(next), l1_norm);
}

} // namespace detail

/// Integrates a batch of periodic functions sharing the same nodes.
/// `f(s, out)` writes `count` integrand values at node s into `out`.
/// Every component must settle to rel_tolerance times the largest scale in
/// the batch: components share nodes, hence a common rounding floor.
template <class F>
    requires std::invocable<F&, double, std::span<double>>
std::vector<double> periodic_integrate_batch(F&& f, std::size_t count, const QuadratureSpec& spec = {}) {
    spec.validate();
    const double pi = std::numbers::pi;

    std::vector<double> sum(count), abs_sum(count), values(count);
    auto sweep = [&](std::size_t n) {
        std::fill(sum.begin(), sum.end(), 0.0);
        std::fill(abs_sum.begin(), abs_sum.end(), 0.0);
        const double h = 2.0 * pi / static_cast<double>(n);
        for (std::size_t j = 0; j < n; ++j) {
            f(-pi + (static_cast<double>(j) + 0.5) * h, std::span<double>(values));
            for (std::size_t c = 0; c < count; ++c) {
                sum[c] += values[c];
                abs_sum[c] += std::abs(values[c]);
            }
        }
        return h;
    };

    std::size_t n = static_cast<std::size_t>(spec.initial_nodes);
    double h = sweep(n);
    std::vector<double> estimate(count), next(count);
    for (std::size_t c = 0; c < count; ++c) estimate[c] = h * sum[c];

    for (int level = 1; level <= spec.max_doublings; ++level) {
        n *= 2;
        h = sweep(n);

        double scale = 0.0;
        for (std::size_t c = 0; c < count; ++c) {
            next[c] = h * sum[c];
            scale = std::max({scale, std::abs(next[c]), h * abs_sum[c]});
        }
        bool done = true;
        std::size_t worst = 0;
        double worst_gap = -1.0;
        for (std::size_t c = 0; c < count; ++c) {
            if (!detail::estimates_agree(next[c], estimate[c], scale, spec.rel_tolerance)) {
                done = false;
                const double gap = std::abs(next[c] - estimate[c]);
                if (gap > worst_gap) {
                    worst_gap = gap;
                    worst = c;
                }
            }
        }
        if (done) return next;
        if (level == spec.max_doublings)
            throw ConvergenceError("periodic_integrate: no convergence after " + std::to_string(level) + " doublings",
                                   estimate[worst], next[worst]);
        estimate.swap(next);
    }
    return estimate; // unreachable: max_doublings >= 1
}

/// One-dimensional periodic integral of f over [-pi, pi].
template <class F>
    requires std::invocable<F&, double>
double periodic_integrate(F&& f, const QuadratureSpec& spec = {}) {
    auto batch = [&](double s, std::span<double> out) { out[0] = f(s); };
    return periodic_integrate_batch(batch, 1, spec)[0];
}

/// Two-dimensional periodic integral of f(s, t) over [-pi, pi]^2 on a tensor grid.
template <class F>
    requires std::invocable<F&, double, double>
double periodic_integrate(F&& f, const QuadratureSpec& spec = {}) {
    spec.validate();
    const double pi = std::numbers::pi;

    double sum = 0.0, abs_sum = 0.0;
    auto sweep = [&](std::size_t n) {
        sum = 0.0;
        abs_sum = 0.0;
        const double h = 2.0 * pi / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double s = -pi + (static_cast<double>(i) + 0.5) * h;
            for (std::size_t j = 0; j < n; ++j) {
                const double v = f(s, -pi + (static_cast<double>(j) + 0.5) * h);
                sum += v;
                abs_sum += std::abs(v);
            }
        }
        return h * h;
    };

    std::size_t n = static_cast<std::size_t>(spec.initial_nodes);
    double estimate = sweep(n) * sum;
    for (int level = 1; level <= spec.max_doublings; ++level) {
        n *= 2;
        const double area = sweep(n);
        const double next = area * sum;
        if (detail::estimates_agree(next, estimate, area * abs_sum, spec.rel_tolerance)) return next;
        if (level == spec.max_doublings)
            throw ConvergenceError("periodic_integrate (2D): no convergence after " + std::to_string(level) +
                                       " doublings",
                                   estimate, next);
        estimate = next;
    }
    return estimate;
}

} // namespace fermitrap
