#pragma once

// Linearized occupation near the Fermi edge in the slowly decaying limit of
// IM2 (r_alpha -> r_gamma << 1, N >> 1), and the Luttinger-liquid exponent
// it is compared with.
//
// The wave-number deviation of state N - 1 + n is dk = n / L_F.

#include <cmath>
#include <numbers>
#include <string>

#include "fermitrap/couplings.hpp"
#include "fermitrap/errors.hpp"
#include "fermitrap/specfun.hpp"

namespace fermitrap {

struct EdgeModel {
    int N = 2;
    double r_gamma = 0.0;
    double gamma_bar_0 = 0.0;
    double slope = 0.0; // coefficient of dk
    double L_F = 0.0;
};

/// 3F2(g, 1/2, 1; 1, 3/2; -(pi / r_gamma)^2) * r_gamma * L_F.
inline double edge_slope(int N, double r_gamma, double gamma_bar_0) {
    if (N < 2) throw DomainError("edge_slope: need N >= 2");
    if (!(r_gamma > 0.0)) throw DomainError("edge_slope: r_gamma must be positive");
    if (!(gamma_bar_0 >= 0.0)) throw DomainError("edge_slope: gamma_bar_0 must be non-negative");
    const double w = std::pow(std::numbers::pi / r_gamma, 2);
    return edge_hypergeometric(gamma_bar_0, w) * r_gamma * TrapSpec(N).half_width();
}

inline EdgeModel make_edge_model(int N, double r_gamma, double gamma_bar_0) {
    return {N, r_gamma, gamma_bar_0, edge_slope(N, r_gamma, gamma_bar_0), TrapSpec(N).half_width()};
}

/// Edge model of IM2 couplings (uses r_gamma and gamma-bar_0).
inline EdgeModel make_edge_model(const TrapSpec& trap, const EffectiveCouplings& c) {
    if (c.model != InteractionModel::im2 || !c.decay)
        throw DomainError("make_edge_model: needs IM2 couplings with decay parameters");
    return make_edge_model(trap.particles(), c.decay->r_gamma, c.decay->gamma_bar_0);
}

/// P(dk) = 1/2 - slope * dk inside the linear window |dk| * slope <= 1/2.
inline double edge_occupation(double delta_k, const EdgeModel& model) {
    const double shift = model.slope * delta_k;
    if (!(std::abs(shift) <= 0.5))
        throw RangeError("edge_occupation: dk = " + std::to_string(delta_k) +
                         " leaves the linear window |dk| <= " + std::to_string(0.5 / model.slope));
    return 0.5 - shift;
}

/// Occupation exponent: 2 gamma_LL below 1/2, then 1.
inline double luttinger_beta(double gamma_LL) {
    if (!(gamma_LL >= 0.0)) throw DomainError("luttinger_beta: coupling must be non-negative");
    return gamma_LL < 0.5 ? 2.0 * gamma_LL : 1.0;
}

} // namespace fermitrap
