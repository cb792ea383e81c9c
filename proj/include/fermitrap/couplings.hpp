#pragma once

// Interaction strengths -> Bogoliubov parameters -> effective couplings.
//
// Energies are in units of hbar*omega_l and lengths in oscillator lengths.
// Branch nu = +1 is the mass (total density) mode, nu = -1 the component
// (relative density) mode.  Intra-component couplings default to zero.

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermitrap/errors.hpp"

namespace fermitrap {

/// N fermions per component in a 1D harmonic trap.
class TrapSpec {
public:
    explicit TrapSpec(int particles, double omega_ell = 1.0) : N_(particles), omega_ell_(omega_ell) {
        if (particles < 2) throw DomainError("TrapSpec: need at least 2 particles per component");
        if (!(omega_ell > 0.0)) throw DomainError("TrapSpec: trap frequency must be positive");
    }

    int particles() const noexcept { return N_; }
    double omega_ell() const noexcept { return omega_ell_; }
    int fermi_index() const noexcept { return N_ - 1; }
    /// Half-width of the classically allowed region at the Fermi energy.
    double half_width() const noexcept { return std::sqrt(2.0 * N_ - 1.0); }
    double fermi_wavenumber() const noexcept { return half_width(); }

    friend bool operator==(const TrapSpec&, const TrapSpec&) = default;

private:
    int N_;
    double omega_ell_;
};

/// Mode-m interaction amplitudes; the `a` terms conserve boson number, the `b` terms pair.
struct ModeInteraction {
    double a_parallel = 0.0;
    double a_perp = 0.0;
    double b_parallel = 0.0;
    double b_perp = 0.0;

    /// Dominant forward scattering between components: V_a_perp = V_b_perp = V.
    static ModeInteraction inter_component(double V) { return {0.0, V, 0.0, V}; }
};

template <class T>
struct BranchPair {
    T plus{};  // nu = +1
    T minus{}; // nu = -1

    T& operator[](int nu) { return nu > 0 ? plus : minus; }
    const T& operator[](int nu) const { return nu > 0 ? plus : minus; }
};

struct BranchCouplings {
    double zeta = 0.0;
    double alpha = 0.0; // sinh(2 zeta) / 2
    double gamma = 0.0; // sinh^2(zeta)
    double epsilon = 1.0;
};

struct ModeCouplings {
    int m = 1;
    BranchPair<BranchCouplings> branch;
};

/// zeta_{m nu} from tanh(2 zeta) = (V_b_par + nu V_b_perp) / (1 + V_a_par + nu V_a_perp).
inline BranchPair<double> bogoliubov_angle(const ModeInteraction& v) {
    BranchPair<double> zeta;
    for (int nu : {+1, -1}) {
        const double num = v.b_parallel + nu * v.b_perp;
        const double den = 1.0 + v.a_parallel + nu * v.a_perp;
        if (!(den > 0.0) || !(std::abs(num) < den))
            throw InstabilityError("diagonalization condition violated for branch nu = " + std::to_string(nu) +
                                   ": |" + std::to_string(num) + "| must be below " + std::to_string(den));
        zeta[nu] = 0.5 * std::atanh(num / den);
    }
    return zeta;
}

/// General spectrum (1 + V_a_par + nu V_a_perp) / cosh(2 zeta).
inline BranchPair<double> excitation_energy(const ModeInteraction& v, const BranchPair<double>& zeta) {
    BranchPair<double> eps;
    for (int nu : {+1, -1}) eps[nu] = (1.0 + v.a_parallel + nu * v.a_perp) / std::cosh(2.0 * zeta[nu]);
    return eps;
}

namespace detail {
inline void require_stable_strength(double V, const char* who) {
    if (!(std::abs(V) < 0.5))
        throw InstabilityError(std::string(who) + ": |V| = " + std::to_string(std::abs(V)) +
                               " violates the stability bound |V| < 1/2");
}
} // namespace detail

/// Spectrum for V_par = 0, V_a_perp = V_b_perp = V: sqrt(1 + 2 nu V).
inline BranchPair<double> excitation_energy(double V) {
    detail::require_stable_strength(V, "excitation_energy");
    return {std::sqrt(1.0 + 2.0 * V), std::sqrt(1.0 - 2.0 * V)};
}

/// alpha_{m nu} = nu V / (2 sqrt(1 + 2 nu V)) for the same simplified interaction.
inline BranchPair<double> branch_alpha(double V) {
    detail::require_stable_strength(V, "branch_alpha");
    return {V / (2.0 * std::sqrt(1.0 + 2.0 * V)), -V / (2.0 * std::sqrt(1.0 - 2.0 * V))};
}

/// Branch-averaged alpha-bar as a function of V.  Never positive, even in V.
inline double effective_alpha_from_V(double V) {
    detail::require_stable_strength(V, "effective_alpha_from_V");
    return 0.25 * V * (1.0 / std::sqrt(1.0 + 2.0 * V) - 1.0 / std::sqrt(1.0 - 2.0 * V));
}

/// Non-negative V in [0, 1/2) with effective_alpha_from_V(V) == target.
inline double invert_alpha_bar(double target) {
    if (!(target <= 0.0)) throw DomainError("invert_alpha_bar: target must be <= 0 (attractive effective coupling)");
    if (target == 0.0) return 0.0;
    double lo = 0.0;            // f(lo) = 0 > target
    double hi = 0.5 - 1e-12;    // f(hi) ~ -1e5
    if (effective_alpha_from_V(hi) > target)
        throw DomainError("invert_alpha_bar: target " + std::to_string(target) + " lies beyond the reachable range");
    // bisect until the bracket collapses: near V = 0 the map is quadratic,
    // so a small residual alone leaves V poorly determined
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        // the map decreases monotonically on [0, 1/2)
        if (effective_alpha_from_V(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    const double rlo = std::abs(effective_alpha_from_V(lo) - target);
    const double rhi = std::abs(effective_alpha_from_V(hi) - target);
    return rlo <= rhi ? lo : hi;
}

/// Full per-branch parameters of one mode with inter-component strength V.
inline ModeCouplings mode_couplings(int m, double V) {
    const auto v = ModeInteraction::inter_component(V);
    const auto zeta = bogoliubov_angle(v);
    const auto eps = excitation_energy(v, zeta);
    ModeCouplings mc;
    mc.m = m;
    for (int nu : {+1, -1}) {
        auto& b = mc.branch[nu];
        b.zeta = zeta[nu];
        b.alpha = 0.5 * std::sinh(2.0 * zeta[nu]);
        b.gamma = 0.5 * (std::sqrt(1.0 + 4.0 * b.alpha * b.alpha) - 1.0);
        b.epsilon = eps[nu];
    }
    return mc;
}

enum class InteractionModel { im1, im2, generic };

inline const char* to_string(InteractionModel model) {
    switch (model) {
    case InteractionModel::im1: return "im1";
    case InteractionModel::im2: return "im2";
    case InteractionModel::generic: return "generic";
    }
    return "?";
}

/// Exponential mode decay of the interaction model IM2.
struct DecayParameters {
    double r_alpha = 0.0;
    double r_gamma = 0.0;
    double alpha_bar_0 = 0.0;
    double gamma_bar_0 = 0.0;
    double Z_alpha = 0.0; // cosh(r_alpha / 2) - 1
    double Z_gamma = 0.0; // cosh(r_gamma) - 1
};

/// Branch-averaged couplings alpha-bar_m, gamma-bar_m for m >= 1 plus the
/// per-branch data they came from.  Sequences end where both drop below 1e-14.
struct EffectiveCouplings {
    InteractionModel model = InteractionModel::im1;
    std::vector<double> alpha_bar; // element m-1 holds alpha-bar_m
    std::vector<double> gamma_bar;
    std::vector<ModeCouplings> modes; // per-branch detail where known
    std::vector<double> strengths;    // V(m) where known
    std::optional<DecayParameters> decay;

    int truncation() const noexcept { return static_cast<int>(alpha_bar.size()); }
    double alpha_bar_at(int m) const noexcept {
        return (m >= 1 && m <= truncation()) ? alpha_bar[static_cast<std::size_t>(m - 1)] : 0.0;
    }
    double gamma_bar_at(int m) const noexcept {
        return (m >= 1 && m <= truncation()) ? gamma_bar[static_cast<std::size_t>(m - 1)] : 0.0;
    }
    bool is_free() const noexcept {
        for (std::size_t i = 0; i < alpha_bar.size(); ++i)
            if (alpha_bar[i] != 0.0 || gamma_bar[i] != 0.0) return false;
        return true;
    }
};

inline constexpr double kCouplingCutoff = 1e-14;

/// Generic mode table V(1), V(2), ... with V_par = 0.
inline EffectiveCouplings generic_couplings(std::span<const double> strengths) {
    EffectiveCouplings ec;
    ec.model = InteractionModel::generic;
    for (std::size_t i = 0; i < strengths.size(); ++i) {
        const auto mc = mode_couplings(static_cast<int>(i) + 1, strengths[i]);
        ec.modes.push_back(mc);
        ec.strengths.push_back(strengths[i]);
        ec.alpha_bar.push_back(0.5 * (mc.branch.plus.alpha + mc.branch.minus.alpha));
        ec.gamma_bar.push_back(0.5 * (mc.branch.plus.gamma + mc.branch.minus.gamma));
    }
    return ec;
}

/// Single-mode model: only V(1) is nonzero.  The input is the target alpha-bar_1.
inline EffectiveCouplings im1_couplings(double alpha_bar_1) {
    const double V = invert_alpha_bar(alpha_bar_1);
    const double strengths[] = {V};
    auto ec = generic_couplings(strengths);
    ec.model = InteractionModel::im1;
    return ec;
}

/// Exponentially decaying modes; the decay law acts on the branch averages.
inline EffectiveCouplings im2_couplings(double alpha_bar_1, double r_alpha, double r_gamma) {
    if (!(r_alpha > 0.0) || !(r_gamma > 0.0)) throw DomainError("im2_couplings: decay constants must be positive");
    const auto first = im1_couplings(alpha_bar_1);

    EffectiveCouplings ec;
    ec.model = InteractionModel::im2;
    ec.modes = first.modes;
    ec.strengths = first.strengths;
    DecayParameters d;
    d.r_alpha = r_alpha;
    d.r_gamma = r_gamma;
    d.alpha_bar_0 = std::exp(0.5 * r_alpha) * first.alpha_bar_at(1);
    d.gamma_bar_0 = std::exp(r_gamma) * first.gamma_bar_at(1);
    d.Z_alpha = std::cosh(0.5 * r_alpha) - 1.0;
    d.Z_gamma = std::cosh(r_gamma) - 1.0;
    ec.decay = d;

    for (int m = 1;; ++m) {
        const double a = std::exp(-0.5 * r_alpha * m) * d.alpha_bar_0;
        const double g = std::exp(-r_gamma * m) * d.gamma_bar_0;
        if (std::abs(a) < kCouplingCutoff && std::abs(g) < kCouplingCutoff) break;
        ec.alpha_bar.push_back(a);
        ec.gamma_bar.push_back(g);
    }
    return ec;
}

inline EffectiveCouplings im2_couplings(double alpha_bar_1, double r) { return im2_couplings(alpha_bar_1, r, r); }

/// Decay-constant estimate r = 1/sqrt(N) from the minimum wave-number increment.
inline double default_decay(int N) {
    if (N < 2) throw DomainError("default_decay: need N >= 2");
    return 1.0 / std::sqrt(static_cast<double>(N));
}

/// Decay constant of the standard figure set: the rounded r = 0.3 at N = 14.
inline double figure_decay(int N) { return N == 14 ? 0.3 : default_decay(N); }

} // namespace fermitrap
