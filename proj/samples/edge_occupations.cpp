// Occupations near the Fermi level for the single-mode and decaying models,
// plus the particle-number sum rule.

#include <cstdio>

#include "fermitrap/fermitrap.hpp"

int main() {
    using namespace fermitrap;
    const TrapSpec trap(14);

    const auto im1 = build_converged_table(trap, im1_couplings(-1.0));
    const auto im2 = build_converged_table(trap, im2_couplings(-1.0, figure_decay(14)));
    const auto P1 = occupation_probabilities(im1);
    const auto P2 = occupation_probabilities(im2);

    std::printf("%4s %12s %12s\n", "m", "P_IM1", "P_IM2");
    for (int m = 8; m <= 19; ++m) std::printf("%4d %12.8f %12.8f\n", m, P1[m], P2[m]);
    std::printf("sum rule excess: IM1 %.3e  IM2 %.3e\n", sum_rule_excess(P1, 14), sum_rule_excess(P2, 14));

    const auto stats = friedel_stats(particle_density(im1, default_grid(trap)));
    std::printf("Friedel maxima %d, amplitude %.4e\n", stats.num_maxima, stats.amplitude);
}
