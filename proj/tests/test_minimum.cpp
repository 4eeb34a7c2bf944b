#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tdo/minimum.hpp"
#include "tdo/quantum.hpp"

using namespace tdo;

TEST(Criterion, Examples) {
    const CriterionReport e = check_criterion(exp_frequency(1.0, 1.0, 1.0 / std::sqrt(2.0)), 1e-8);
    EXPECT_TRUE(e.is_minimum);
    EXPECT_NEAR(e.c, 0.7071068, 1e-7);
    const CriterionReport k = check_criterion(kanai_caldirola(1.0, 1.0, 1.0), 1e-8);
    EXPECT_FALSE(k.is_minimum);
    EXPECT_GT(k.max_violation, 1.0);
    const CriterionReport h = check_criterion(harmonic(1.0, 1.0), 1e-8);
    EXPECT_TRUE(h.is_minimum);
    EXPECT_NEAR(h.c, 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(h.samples, 201);
}

TEST(Criterion, MedianIgnoresEndpointNoise) {
    // one corrupted tabulated row moves max_violation but not c
    std::vector<TabulatedSample> rows;
    for (int i = 0; i <= 20; ++i) rows.push_back({0.1 * i, 2.0, 0.25});
    rows.back().omega = 0.3;
    const CriterionReport r = check_criterion(tabulated_model(rows), 1e-8, {0.0, 2.0, 21});
    EXPECT_NEAR(r.c, 1.0, 1e-12);
    EXPECT_FALSE(r.is_minimum);
}

TEST(Criterion, Errors) {
    EXPECT_THROW(check_criterion(harmonic(), 1e-8, {1.0, 0.0, 10}), DomainError);
    EXPECT_THROW(check_criterion(harmonic(), 1e-8, {0.0, 1.0, 0}), DomainError);
    EXPECT_THROW(check_criterion(harmonic(), 0.0), ParameterError);
    EXPECT_THROW(make_min_model(kanai_caldirola()), CriterionViolated);
}

TEST(SigmaMinimum, ExpFrequency) {
    const MinUncertaintyModel mm = make_min_model(exp_frequency(1.0, 1.0, 1.0 / std::sqrt(2.0)), {0.0, 2.0, 101});
    for (double t = 0.0; t <= 2.0; t += 0.1) {
        const ErmakovState st = sigma_minimum(mm, t, 0.0);
        EXPECT_NEAR(st.sigma, std::exp(t / 2) / std::sqrt(2.0), 1e-14);
        EXPECT_LT(std::abs(mass_constraint_residual(mm, t)), 1e-8);
        const SigmaJet j = sigma_minimum_jet(mm, t);
        EXPECT_LT(std::abs(ermakov_residual(coefficients(mm.base, t).Omega2, 0.25, j)), 1e-8);
        EXPECT_NEAR(st.theta, oracle::simpson([](double x) { return 2 * std::exp(-x); }, 0.0, t), 1e-10);
    }
}

TEST(SigmaMinimum, HarmonicAndTsquared) {
    const MinUncertaintyModel h = make_min_model(harmonic(1.0, 2.0));
    const ErmakovState hs = sigma_minimum(h, 3.0, 0.0);
    EXPECT_NEAR(hs.sigma, 0.5, 1e-15);
    EXPECT_EQ(hs.sigma_dot, 0.0);
    EXPECT_NEAR(hs.theta, 12.0, 1e-12);

    const double c = 0.8;
    const MinUncertaintyModel ts = make_min_model(tsquared(1.0, c), {0.5, 4.0, 51});
    for (double t : {1.0, 1.5, 2.0, 3.5}) {
        const ErmakovState st = sigma_minimum(ts, t, 1.0);
        EXPECT_NEAR(st.sigma, c * t, 1e-14);
        EXPECT_NEAR(st.theta, -1.0 / (c * c * t) + 1.0 / (c * c), 1e-11);
    }
}

TEST(SigmaMinimum, FirstIntegralMatchesIntegration) {
    const MinUncertaintyModel mm = make_min_model(tsquared(1.0, 1.0), {1.0, 3.0, 21});
    EpOptions o;
    o.rtol = 1e-12;
    o.atol = 1e-14;
    const auto traj = integrate_ep(mm.base, {1.0, 1.0}, 1.0, 3.0, o);
    const ErmakovState st = sigma_minimum(mm, 3.0, 1.0);
    EXPECT_NEAR(st.sigma, traj.back().sigma, 1e-9);
    EXPECT_NEAR(st.theta, traj.back().theta, 1e-9);
    EXPECT_NEAR(st.F, traj.back().F, 1e-9);
    EXPECT_NEAR(st.k, traj.back().k, 1e-9);
}

TEST(SigmaMinimum, QuantumConsequences) {
    const MinUncertaintyModel mm = make_min_model(exp_frequency(1.0, 0.5, 1.0), {0.0, 3.0, 31});
    const Reference ref = reference_at(mm.base, 0.0);
    for (double t = 0.0; t <= 3.0; t += 0.25) {
        const ErmakovState st = sigma_minimum(mm, t, 0.0);
        EXPECT_NEAR(quadratures(mm.base, st).product, 0.5, 1e-10);
        const BogolubovPair b = bogolubov(mm.base, st, ref);
        EXPECT_LE(std::abs(b.mu - 1.0), 1e-9);
        EXPECT_LE(std::abs(b.nu), 1e-9);
        const VacuumExpectations v = vacuum_expectations(mm.base, st);
        EXPECT_NEAR(v.Q2, 1.0, 1e-12);
        EXPECT_NEAR(v.P2, 0.25, 1e-12);
        EXPECT_NEAR(v.H / (0.5 * mm.base.omega(t)), 1.0, 1e-9);
    }
}

TEST(SigmaMinimum, ProductGrowsQuadraticallyOffTheMinimum) {
    const MinUncertaintyModel mm = make_min_model(exp_frequency(), {0.0, 2.0, 21});
    const SigmaJet j = sigma_minimum_jet(mm, 1.0);
    for (double eps : {1e-3, 1e-4}) {
        ErmakovState st;
        st.t = 1.0;
        st.sigma = j.sigma;
        st.sigma_dot = j.sigma_dot + eps;
        const double excess = quadratures(mm.base, st).product - 0.5;
        EXPECT_GT(excess, 0.0);
        EXPECT_NEAR(excess / (j.sigma * j.sigma * eps * eps), 1.0, 1e-2);
    }
}

TEST(MinimumEom, MatchesFullEquationAndClosedForms) {
    const MinUncertaintyModel mm = make_min_model(exp_frequency(1.0, 1.0), {0.0, 2.0, 21});
    auto q = [](double t) {
        const double u = std::exp(-t), du = -u, d2u = u;
        return Jet{std::sin(u), std::cos(u) * du, -std::sin(u) * du * du + std::cos(u) * d2u};
    };
    for (double t = 0.0; t <= 2.0; t += 0.2) {
        EXPECT_LT(std::abs(minimum_eom_residual(mm, q, t)), 1e-9);
        auto any = [](double x) { return Jet{x * x, 2 * x, 2.0}; };
        EXPECT_NEAR(minimum_eom_residual(mm, any, t), eom_residual(mm.base, any, t), 1e-10);
    }
    auto zero = [](double) { return Jet{}; };
    EXPECT_EQ(minimum_eom_residual(mm, zero, 1.0), 0.0);

    const MinUncertaintyModel ts = make_min_model(tsquared(1.0, 0.9), {0.4, 3.0, 21});
    const double a = 1.0 / (2 * 0.81);
    auto qt = [a](double t) {
        const double u = a / t, du = -a / (t * t), d2u = 2 * a / (t * t * t);
        const double v = 0.3 * std::cos(u) + std::sin(u), dv = -0.3 * std::sin(u) + std::cos(u);
        return Jet{v, dv * du, -v * du * du + dv * d2u};
    };
    for (double t : {0.5, 1.0, 2.0}) EXPECT_LT(std::abs(minimum_eom_residual(ts, qt, t)), 1e-9);
}
