#include <cmath>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/bessel_prime.hpp>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdo/bessel.hpp"
#include "tdo/series.hpp"

using namespace tdo;

TEST(Bessel, SatisfiesDefiningOde) {
    for (double rho : {0.0, 1.0 / 3.0, 0.5, 1.0, 2.5})
        for (double x = 0.1; x <= 20.0; x += 0.05)
            EXPECT_LT(std::abs(bessel::bessel_ode_residual(rho, x, bessel::besselj(rho, x))), 1e-8)
                << "rho=" << rho << " x=" << x;
}

TEST(Bessel, KnownValues) {
    EXPECT_NEAR(bessel::besselj(0.0, 1.0).J, 0.7651976865579666, 1e-14);
    EXPECT_NEAR(bessel::besselj(1.0, 2.5).J, 0.4970941024642741, 1e-14);
    EXPECT_NEAR(bessel::besselj(0.0, 15.0).J, -0.01422447282678077, 1e-10);
    // J_{1/2}(x) = sqrt(2/(pi x)) sin x on both branches
    for (double x : {0.7, 5.0, 11.9, 12.1, 18.0})
        EXPECT_NEAR(bessel::besselj(0.5, x).J, std::sqrt(2.0 / (M_PI * x)) * std::sin(x), 1e-12);
    EXPECT_THROW(bessel::besselj(-1.0, 1.0), ParameterError);
    EXPECT_THROW(bessel::besselj(1.0, 0.0), DomainError);
}

TEST(Bessel, BranchesAgreeAtSwitchover) {
    for (double rho : {0.0, 0.4, 1.0}) {
        const auto a = bessel::ascending_series(rho, 12.0);
        const auto b = bessel::asymptotic(rho, 12.0);
        EXPECT_NEAR(a.J, b.J, 1e-11);
        EXPECT_NEAR(a.dJ, b.dJ, 1e-11);
    }
}

TEST(Bessel, MatchesBoostReference) {
    for (double rho : {0.0, 1.0 / 3.0, 0.5, 1.0, 2.5}) {
        for (double x = 0.1; x <= 20.0; x += 0.05) {
            const auto b = bessel::besselj(rho, x);
            EXPECT_NEAR(b.J, boost::math::cyl_bessel_j(rho, x), 1e-11) << rho << ' ' << x;
            EXPECT_NEAR(b.dJ, boost::math::cyl_bessel_j_prime(rho, x), 1e-11) << rho << ' ' << x;
        }
    }
}

TEST(Reduction, Residuals) {
    std::vector<double> g;
    for (double t = 0.5; t <= 10.0; t += 0.05) g.push_back(t);
    EXPECT_LT(bessel_reduction_check(1.0, 1.0, 0.0, g), 1e-10);
    EXPECT_LT(bessel_reduction_check(1.0, 1.0, 0.5, g), 1e-7);
    EXPECT_LT(bessel_reduction_check(2.0, 0.7, 0.1, g), 1e-7);
    EXPECT_LT(bessel_reduction_check_nu2(1.0, 1.0, -0.75, g), 1e-7);
    EXPECT_DOUBLE_EQ(bessel_reduction_nu2(1.0, 1.0, -0.75).rho, 1.0);
    const BesselReduction half = bessel_reduction(1.0, 1.0, 0.0);
    EXPECT_NEAR(half.y(2.0).value, std::sin(2.0), 1e-15);
    EXPECT_THROW(bessel_reduction(1.0, 1.0, 0.6), ParameterError);
}
