#include <cmath>
#include <numbers>
#include <random>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/expint.hpp>
#include <gtest/gtest.h>

#include "fermitrap/specfun.hpp"

using namespace fermitrap;

namespace {

// independent power series sum_k (x/2)^{2k+p} / (k! (k+p)!) in long double
long double bessel_series_oracle(int p, long double x) {
    long double term = 1.0L;
    for (int j = 1; j <= p; ++j) term *= x / 2.0L / j;
    long double sum = term;
    for (int k = 1; k < 400; ++k) {
        term *= (x * x / 4.0L) / (static_cast<long double>(k) * (k + p));
        sum += term;
        if (std::fabs(term) < 1e-22L * std::fabs(sum)) break;
    }
    return sum;
}

double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

} // namespace

TEST(OscillatorWavefunction, GroundStateNormalization) {
    EXPECT_NEAR(oscillator_wavefunction(0, 0.0), 0.751125544464942482858703, 1e-15);
    EXPECT_EQ(oscillator_wavefunction(1, 0.0), 0.0);
    EXPECT_NEAR(oscillator_wavefunction(3, 0.0), 0.0, 1e-300);
}

TEST(OscillatorWavefunction, NegativeIndexIsDomainError) {
    EXPECT_THROW(oscillator_wavefunction(-1, 0.3), DomainError);
}

TEST(OscillatorWavefunction, OrthonormalOnWideInterval) {
    // trapezoid on [-30, 30]: the Gaussian tails make it spectrally accurate
    constexpr int kMax = 40;
    constexpr int kNodes = 6001;
    const double h = 60.0 / (kNodes - 1);
    std::vector<double> psi(kMax + 1);
    std::vector<double> overlap((kMax + 1) * (kMax + 1), 0.0);
    for (int i = 0; i < kNodes; ++i) {
        const double x = -30.0 + i * h;
        oscillator_wavefunctions(x, psi);
        const double w = (i == 0 || i == kNodes - 1) ? 0.5 * h : h;
        for (int a = 0; a <= kMax; ++a)
            for (int b = 0; b <= kMax; ++b) overlap[a * (kMax + 1) + b] += w * psi[a] * psi[b];
    }
    for (int a = 0; a <= kMax; ++a)
        for (int b = 0; b <= kMax; ++b)
            EXPECT_NEAR(overlap[a * (kMax + 1) + b], a == b ? 1.0 : 0.0, 1e-12) << a << "," << b;
}

TEST(OscillatorWavefunction, BoundedByOneAndFiniteAtHighOrder) {
    for (double x = -30.0; x <= 30.0; x += 0.173) {
        std::vector<double> psi(401);
        oscillator_wavefunctions(x, psi);
        for (std::size_t m = 0; m < psi.size(); ++m) {
            ASSERT_TRUE(std::isfinite(psi[m])) << m << " " << x;
            if (m <= 100) {
                ASSERT_LE(std::abs(psi[m]), 1.0);
            }
        }
    }
}

TEST(OscillatorWavefunction, SequenceMatchesSingleEvaluation) {
    std::vector<double> psi(61);
    oscillator_wavefunctions(2.7, psi);
    for (int m : {0, 7, 33, 60}) EXPECT_DOUBLE_EQ(psi[m], oscillator_wavefunction(m, 2.7));
}

TEST(BesselI, KnownValues) {
    EXPECT_EQ(bessel_i(0, 0.0), 1.0);
    EXPECT_EQ(bessel_i(4, 0.0), 0.0);
    EXPECT_NEAR(bessel_i(0, 1.0), 1.26606587775200833559824, 1e-15);
    EXPECT_DOUBLE_EQ(bessel_i(3, -2.0), -bessel_i(3, 2.0));
    EXPECT_LT(rel_err(bessel_i(3, 2.0), 0.212739959239852655272354), 1e-13);
    EXPECT_LT(rel_err(bessel_i(5, 37.5), 901329057446039.00019745), 1e-12);
    EXPECT_LT(rel_err(bessel_i(0, 40.0), 14894774793419899.924224), 1e-12);
}

TEST(BesselI, MatchesPowerSeriesOracle) {
    for (int p = 0; p <= 12; ++p)
        for (double x : {0.01, 0.5, 1.0, 3.3, 7.0, 11.0, 14.9, 15.1, 18.0, 25.0, 40.0})
            EXPECT_LT(rel_err(bessel_i(p, x), static_cast<double>(bessel_series_oracle(p, x))), 1e-12)
                << "p=" << p << " x=" << x;
}

TEST(BesselI, MatchesBoostAcrossRange) {
    for (int p = 0; p <= 40; p += 3)
        for (double x = 0.25; x <= 200.0; x *= 1.37)
            EXPECT_LT(rel_err(bessel_i(p, x), boost::math::cyl_bessel_i(p, x)), 1e-12) << "p=" << p << " x=" << x;
}

TEST(BesselI, ParityProperty) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> xs(0.0, 40.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = trial % 11;
        const double x = xs(rng);
        const double sign = (p % 2 == 0) ? 1.0 : -1.0;
        EXPECT_DOUBLE_EQ(bessel_i(p, -x), sign * bessel_i(p, x));
    }
}

TEST(BesselI, SequenceAgreesWithSingleOrders) {
    for (double x : {-33.0, -2.5, 0.7, 16.0, 120.0}) {
        std::vector<double> seq(31);
        bessel_i_sequence(x, seq);
        for (int p = 0; p <= 30; ++p) EXPECT_LT(std::abs(seq[p] - bessel_i(p, x)), 1e-14 * std::abs(seq[0]) + 1e-300);
    }
}

TEST(BesselI, Errors) {
    EXPECT_THROW(bessel_i(-1, 1.0), DomainError);
    EXPECT_THROW(bessel_i(0, 250.0), DomainError);
}

TEST(ExpIntegralEi, KnownValues) {
    EXPECT_LT(rel_err(exp_integral_ei(-1.0), -0.219383934395520273677163775), 1e-14);
    EXPECT_LT(rel_err(exp_integral_ei(-8.0), -3.76656228439249017725579959508e-5), 1e-13);
    EXPECT_LT(rel_err(exp_integral_ei(-0.3), -0.905676651675846739846109044231), 1e-14);
    EXPECT_LT(rel_err(exp_integral_ei(-20.0), -9.8355252906498816903969871089e-11), 1e-13);
    EXPECT_LT(rel_err(exp_integral_ei(-50.0), -3.78326402955045901869896785402e-24), 1e-13);
    EXPECT_LT(exp_integral_ei(-1e-8), -17.0);
}

TEST(ExpIntegralEi, AsymptoticExpansionAtLargeArgument) {
    const double x = 20.0;
    double series = 0.0, term = 1.0;
    for (int k = 0; k < 10; ++k) {
        series += term;
        term *= -(k + 1) / x;
    }
    EXPECT_LT(rel_err(exp_integral_ei(-x), -std::exp(-x) / x * series), 1e-6);
}

TEST(ExpIntegralEi, MatchesBoost) {
    for (double y = 1e-6; y < 600.0; y *= 1.29)
        EXPECT_LT(rel_err(exp_integral_ei(-y), boost::math::expint(-y)), 1e-10) << y;
}

TEST(ExpIntegralEi, ScaledE1StaysFiniteWhereExpOverflows) {
    EXPECT_NEAR(exp_scaled_e1(1e7) * 1e7, 1.0 - 1e-7, 1e-12);
    EXPECT_LT(rel_err(exp_scaled_e1(2.0), std::exp(2.0) * -exp_integral_ei(-2.0)), 1e-14);
}

TEST(ExpIntegralEi, NonNegativeArgumentIsDomainError) {
    EXPECT_THROW(exp_integral_ei(0.0), DomainError);
    EXPECT_THROW(exp_integral_ei(2.0), DomainError);
}

TEST(EdgeHypergeometric, ClosedForms) {
    EXPECT_EQ(edge_hypergeometric(0.0, 123.0), 1.0);
    EXPECT_EQ(edge_hypergeometric(2.5, 0.0), 1.0);
    EXPECT_NEAR(edge_hypergeometric(1.0, 1.0), std::numbers::pi / 4.0, 1e-15);
    // g = 1: atan(sqrt w) / sqrt w
    for (double w : {0.01, 3.0, 109.66227112321507, 3947.8417604357433, 1e6}) {
        const double exact = std::atan(std::sqrt(w)) / std::sqrt(w);
        EXPECT_LT(rel_err(edge_hypergeometric(1.0, w), exact), 1e-10) << w;
    }
    // g = 1/2: asinh(sqrt w) / sqrt w
    for (double w : {0.5, 40.0, 4000.0})
        EXPECT_LT(rel_err(edge_hypergeometric(0.5, w), std::asinh(std::sqrt(w)) / std::sqrt(w)), 1e-10) << w;
}

TEST(EdgeHypergeometric, ReferenceValueAtNonIntegerExponent) {
    // 3F2(1.19, 1/2, 1; 1, 3/2; -(pi/0.3)^2), evaluated at 30 digits
    EXPECT_LT(rel_err(edge_hypergeometric(1.19, std::pow(std::numbers::pi / 0.3, 2)), 0.118076682484724789482504990147),
              1e-10);
}

TEST(EdgeHypergeometric, MonotoneDecreasingInBothArguments) {
    double prev_g = 2.0;
    for (double g = 0.0; g <= 5.0; g += 0.25) {
        const double v = edge_hypergeometric(g, 50.0);
        EXPECT_LT(v, prev_g);
        prev_g = v;
    }
    double prev_w = 2.0;
    for (double w = 0.0; w <= 1e4; w = 2.0 * w + 0.5) {
        const double v = edge_hypergeometric(1.3, w);
        EXPECT_LT(v, prev_w);
        prev_w = v;
    }
}

TEST(EdgeHypergeometric, Errors) {
    EXPECT_THROW(edge_hypergeometric(-0.1, 1.0), DomainError);
    EXPECT_THROW(edge_hypergeometric(1.0, -1.0), DomainError);
}

TEST(DirichletKernel, LimitsAndEndpoints) {
    const int N = 14;
    EXPECT_DOUBLE_EQ(dirichlet_kernel(N - 1, N, 0.0), -0.5);
    EXPECT_DOUBLE_EQ(dirichlet_kernel(N + 3, N, 0.0), 3.5);
    EXPECT_NEAR(dirichlet_kernel(N - 1, N, 1e-9), -0.5, 1e-15);
    for (int m = 0; m < 30; ++m)
        EXPECT_NEAR(std::abs(dirichlet_kernel(m, N, std::numbers::pi)), 0.5, 1e-14) << m;
}

TEST(DirichletKernel, TaylorBranchIsContinuous) {
    for (int m : {0, 13, 14, 40, 400}) {
        const double inside = dirichlet_kernel(m, 14, 1.999e-6);
        const double outside = dirichlet_kernel(m, 14, 2.001e-6);
        EXPECT_NEAR(inside, outside, 1e-9 * std::max(1.0, std::abs(m - 13.5)));
    }
}

TEST(DirichletKernel, EqualsFiniteCosineSum) {
    const int N = 9;
    for (int m = N; m <= N + 12; ++m)
        for (double s = -3.1; s <= 3.1; s += 0.0731) {
            double sum = 0.5;
            for (int j = 1; j <= m - N; ++j) sum += std::cos(j * s);
            EXPECT_NEAR(dirichlet_kernel(m, N, s), sum, 1e-12) << m << " " << s;
        }
}

TEST(DirichletKernel, MeanIsPlusMinusHalf) {
    const int N = 14;
    for (int m = 0; m < 40; ++m) {
        const double mean = periodic_integrate([&](double s) { return dirichlet_kernel(m, N, s); }) /
                            (2.0 * std::numbers::pi);
        EXPECT_NEAR(mean, m < N ? -0.5 : 0.5, 1e-13) << m;
    }
}
