#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "fermitrap/fermi_edge.hpp"
#include "fermitrap/matrix_elements.hpp"

using namespace fermitrap;

TEST(EdgeSlope, FreeLimitIsBareLength) {
    for (double r : {0.05, 0.3, 2.0}) EXPECT_NEAR(edge_slope(14, r, 0.0), r * std::sqrt(27.0), 1e-15);
}

TEST(EdgeSlope, ArctanReference) {
    const double w = std::pow(std::numbers::pi / 0.3, 2);
    const double integral = std::atan(std::sqrt(w)) / std::sqrt(w);
    EXPECT_NEAR(integral, 0.140908660949589374264998903384, 1e-15);
    EXPECT_NEAR(edge_slope(14, 0.3, 1.0), integral * 0.3 * std::sqrt(27.0), 1e-12);
    EXPECT_NEAR(edge_slope(14, 0.3, 1.0), 0.219654863992066851592042901743, 1e-12);
}

TEST(EdgeSlope, DecreasesWithCoupling) {
    double prev = edge_slope(14, 0.3, 0.0);
    for (double g = 0.1; g <= 4.0; g += 0.1) {
        const double s = edge_slope(14, 0.3, g);
        EXPECT_LT(s, prev) << g;
        EXPECT_GT(s, 0.0);
        prev = s;
    }
}

TEST(EdgeSlope, HypergeometricFactorTendsToOneForFastDecay) {
    double prev_gap = 1.0;
    for (double r : {10.0, 100.0, 1000.0, 1e4}) {
        const double factor = edge_slope(14, r, 1.19) / (r * std::sqrt(27.0));
        const double gap = 1.0 - factor;
        EXPECT_GT(gap, 0.0);
        EXPECT_LT(gap, prev_gap);
        prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 1e-6);
}

TEST(EdgeSlope, Errors) {
    EXPECT_THROW(edge_slope(1, 0.3, 1.0), DomainError);
    EXPECT_THROW(edge_slope(14, 0.0, 1.0), DomainError);
    EXPECT_THROW(edge_slope(14, 0.3, -0.5), DomainError);
}

TEST(EdgeOccupation, LinearWindow) {
    const auto model = make_edge_model(14, 0.3, 1.19);
    EXPECT_GT(model.slope, 0.0);
    EXPECT_EQ(edge_occupation(0.0, model), 0.5);
    const double limit = 0.5 / model.slope;
    for (double dk = -limit; dk <= limit; dk += limit / 17.0) {
        EXPECT_NEAR(edge_occupation(dk, model) + edge_occupation(-dk, model), 1.0, 1e-15);
        EXPECT_NEAR(edge_occupation(dk, model), 0.5 - model.slope * dk, 1e-15);
    }
    EXPECT_THROW(edge_occupation(1.01 * limit, model), RangeError);
    EXPECT_THROW(edge_occupation(-1.01 * limit, model), RangeError);
}

TEST(EdgeOccupation, ModelFromCouplings) {
    const TrapSpec trap(14);
    const auto c = im2_couplings(-1.0, 0.3);
    const auto model = make_edge_model(trap, c);
    EXPECT_EQ(model.N, 14);
    EXPECT_EQ(model.r_gamma, 0.3);
    EXPECT_DOUBLE_EQ(model.gamma_bar_0, c.decay->gamma_bar_0);
    EXPECT_DOUBLE_EQ(model.L_F, std::sqrt(27.0));
    EXPECT_THROW(make_edge_model(trap, im1_couplings(-1.0)), DomainError);
}

TEST(LuttingerBeta, PiecewiseExponent) {
    EXPECT_EQ(luttinger_beta(0.25), 0.5);
    EXPECT_EQ(luttinger_beta(0.5), 1.0);
    EXPECT_EQ(luttinger_beta(0.7), 1.0);
    EXPECT_EQ(luttinger_beta(0.0), 0.0);
    EXPECT_NEAR(luttinger_beta(0.5 - 1e-12), 1.0, 1e-11);
    EXPECT_THROW(luttinger_beta(-0.1), DomainError);
}

TEST(EdgeOccupation, LinearEdgeIsTheStrongCouplingBranch) {
    // an edge linear in dk has exponent one, the gamma_LL >= 1/2 branch
    for (double g : {0.5, 0.8, 3.0}) EXPECT_EQ(luttinger_beta(g), 1.0);
}

TEST(EdgeNumerics, SlowDecayOccupationsDropBySlopeOverLengthPerState) {
    // large N, r << 1: the decaying-model occupations near m_F are linear in
    // dk = n / L_F; their drop per state matches the hypergeometric factor
    // alone, i.e. the closed-form slope divided by r_gamma
    const int N = 200;
    const double r = 0.05;
    const TrapSpec trap(N);
    const auto c = im2_couplings(-1.0, r);
    const auto model = make_edge_model(trap, c);
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int count = 0;
    for (int n = -2; n <= 3; ++n) {
        const double dk = n / model.L_F;
        const double P = im2_matrix_element(N - 1 + n, 0, trap, c);
        sx += dk;
        sy += P;
        sxx += dk * dk;
        sxy += dk * P;
        ++count;
    }
    const double measured = -(count * sxy - sx * sy) / (count * sxx - sx * sx);
    EXPECT_NEAR(measured / (model.slope / r), 1.0, 0.02);
    EXPECT_NEAR(im2_matrix_element(N - 1, 0, trap, c) + im2_matrix_element(N, 0, trap, c), 1.0, 1e-9);
}
