#pragma once

// Special functions used by the matrix-element and observable code:
// oscillator eigenfunctions, integer-order modified Bessel functions,
// the exponential integral for negative argument, the reduced 3F2 of the
// Fermi-edge formula, and the Dirichlet-type kernel of the closed forms.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fermitrap/errors.hpp"
#include "fermitrap/quadrature.hpp"

namespace fermitrap {

namespace detail {

inline constexpr double kEulerGamma = 0.57721566490153286060651209008240243;

// Recurrence on phi_n = psi_n / psi_0 with an explicit power-of-two style
// rescale, so large n and |x| never overflow before the Gaussian is applied.
inline void scaled_hermite_functions(double x, std::span<double> out) {
    if (out.empty()) return;
    const double norm = std::pow(std::numbers::pi, -0.25);
    const double gauss_log = -0.5 * x * x;
    constexpr double kBig = 1e150;
    constexpr double kLogBig = 345.38776394910684; // ln(1e150)

    double prev = 0.0;     // phi_{n-2}
    double cur = 1.0;      // phi_{n-1}
    double log_scale = 0.0;
    out[0] = norm * std::exp(gauss_log);
    for (std::size_t n = 1; n < out.size(); ++n) {
        const double dn = static_cast<double>(n);
        const double next = std::sqrt(2.0 / dn) * x * cur - std::sqrt((dn - 1.0) / dn) * prev;
        prev = cur;
        cur = next;
        if (std::abs(cur) > kBig) {
            cur /= kBig;
            prev /= kBig;
            log_scale += kLogBig;
        }
        out[n] = norm * cur * std::exp(log_scale + gauss_log);
    }
}

// I_0..I_{p_max} at x >= 0 into out (size p_max + 1).
inline void bessel_i_nonneg(double x, std::span<double> out) {
    const int p_max = static_cast<int>(out.size()) - 1;
    if (x == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        out[0] = 1.0;
        return;
    }
    if (x <= 15.0) {
        const double half = 0.5 * x;
        const double q = half * half;
        double lead = 1.0; // (x/2)^p / p!
        for (int p = 0; p <= p_max; ++p) {
            if (p > 0) lead *= half / p;
            double term = lead, sum = lead;
            for (int k = 1; k < 500 && term > 1e-17 * sum; ++k) {
                term *= q / (static_cast<double>(k) * static_cast<double>(k + p));
                sum += term;
            }
            out[static_cast<std::size_t>(p)] = sum;
        }
        return;
    }

    // Miller downward recurrence normalised by e^x = I_0 + 2 sum_k I_k.
    const double top = std::max(static_cast<double>(p_max), x);
    int start = static_cast<int>(top) + 20 + static_cast<int>(std::sqrt(40.0 * top));
    start += start % 2;
    constexpr double kRescale = 1e-250;
    double above = 0.0, here = 1.0, norm = 0.0;
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = start; k >= 1; --k) {
        const double below = 2.0 * k / x * here + above;
        above = here;
        here = below; // I_{k-1}
        if (k - 1 <= p_max) out[static_cast<std::size_t>(k - 1)] = here;
        if (k - 1 >= 1) norm += 2.0 * here;
        if (std::abs(here) > 1e250) {
            here *= kRescale;
            above *= kRescale;
            norm *= kRescale;
            for (auto& v : out) v *= kRescale;
        }
    }
    norm += here; // I_0 term
    const double factor = std::exp(x) / norm;
    for (auto& v : out) v *= factor;
}

} // namespace detail

/// Normalized 1D harmonic-oscillator eigenfunction psi_m(x); x in oscillator lengths.
inline double oscillator_wavefunction(int m, double x) {
    if (m < 0) throw DomainError("oscillator_wavefunction: negative quantum number " + std::to_string(m));
    std::vector<double> values(static_cast<std::size_t>(m) + 1);
    detail::scaled_hermite_functions(x, values);
    return values.back();
}

/// psi_0(x) ... psi_{out.size()-1}(x) in one recurrence sweep.
inline void oscillator_wavefunctions(double x, std::span<double> out) { detail::scaled_hermite_functions(x, out); }

/// Modified Bessel function of the first kind, integer order p >= 0, |x| <= 200.
inline double bessel_i(int p, double x) {
    if (p < 0) throw DomainError("bessel_i: negative order " + std::to_string(p) + " (use I_{-p} = I_p)");
    if (!(std::abs(x) <= 200.0)) throw DomainError("bessel_i: |x| > 200 is outside the supported range");
    std::vector<double> values(static_cast<std::size_t>(p) + 1);
    detail::bessel_i_nonneg(std::abs(x), values);
    const double v = values.back();
    return (x < 0.0 && (p % 2) != 0) ? -v : v;
}

/// I_0(x) ... I_{out.size()-1}(x), sharing one series or recurrence pass.
inline void bessel_i_sequence(double x, std::span<double> out) {
    if (out.empty()) return;
    if (!(std::abs(x) <= 200.0)) throw DomainError("bessel_i_sequence: |x| > 200 is outside the supported range");
    detail::bessel_i_nonneg(std::abs(x), out);
    if (x < 0.0)
        for (std::size_t p = 1; p < out.size(); p += 2) out[p] = -out[p];
}

/// e^y E_1(y) for y > 0.  Finite for every positive y, including where e^y overflows.
inline double exp_scaled_e1(double y) {
    if (!(y > 0.0)) throw DomainError("exp_scaled_e1: argument must be positive");
    if (y <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -y / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return std::exp(y) * (-detail::kEulerGamma - std::log(y) - sum);
    }
    // modified Lentz evaluation of the continued fraction for e^y E_1(y)
    constexpr double kTiny = 1e-300;
    double b = y + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

/// Exponential integral Ei(x) for x < 0.
inline double exp_integral_ei(double x) {
    if (!(x < 0.0)) throw DomainError("exp_integral_ei: only negative arguments are supported");
    const double y = -x;
    if (y <= 1.0) {
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 60; ++k) {
            term *= -y / k;
            const double add = term / k;
            sum += add;
            if (std::abs(add) < 1e-17 * std::abs(sum)) break;
        }
        return detail::kEulerGamma + std::log(y) + sum;
    }
    return -std::exp(-y) * exp_scaled_e1(y);
}

/// 3F2(g, 1/2, 1; 1, 3/2; -w) through its reduction to int_0^1 (1 + w u^2)^(-g) du.
inline double edge_hypergeometric(double g, double w) {
    if (!(g >= 0.0)) throw DomainError("edge_hypergeometric: g must be non-negative");
    if (!(w >= 0.0)) throw DomainError("edge_hypergeometric: w must be non-negative");
    if (g == 0.0 || w == 0.0) return 1.0;

    using boost::math::quadrature::gauss_kronrod;
    auto integrand = [g, w](double u) { return std::pow(1.0 + w * u * u, -g); };
    // the integrand falls off on the scale 1/sqrt(w)
    const double knee = std::min(1.0, 1.0 / std::sqrt(w));
    constexpr double kTol = 1e-12;
    double value = gauss_kronrod<double, 31>::integrate(integrand, 0.0, knee, 15, kTol);
    if (knee < 1.0) value += gauss_kronrod<double, 31>::integrate(integrand, knee, 1.0, 15, kTol);
    return value;
}

/// sin((m + 1/2 - N) s) / (2 sin(s/2)) with its removable singularity at s = 0 resolved.
inline double dirichlet_kernel(int m, int N, double s) {
    const double a = static_cast<double>(m - N) + 0.5;
    const double half_sin = std::sin(0.5 * s);
    if (std::abs(half_sin) < 1e-6) {
        const double a2 = a * a;
        const double s2 = s * s;
        return a * (1.0 + s2 * (1.0 / 24.0 - a2 / 6.0) + s2 * s2 * (a2 * a2 / 120.0 - a2 / 144.0 + 7.0 / 5760.0));
    }
    return std::sin(a * s) / (2.0 * half_sin);
}

} // namespace fermitrap
