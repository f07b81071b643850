#include <gtest/gtest.h>

#include <cmath>

#include "modent/correlators.hpp"
#include "test_support.hpp"

using namespace modent;

TEST(PairCorrelators, SingletOfTwoSites) {
    const PairState p = pair_correlators(solve(CouplingVector({1.0})), Site{1}, Site{2});
    EXPECT_NEAR(p.sxsx, -1.0, 1e-15);
    EXPECT_NEAR(p.sysy, -1.0, 1e-15);
    EXPECT_NEAR(p.szsz, -1.0, 1e-15);
    EXPECT_NEAR(p.inner, -0.5, 1e-15);
    EXPECT_NEAR(p.p_uu, 0.0, 1e-15);
    EXPECT_NEAR(p.p_dd, 0.0, 1e-15);
    EXPECT_NEAR(p.p_ud, 0.5, 1e-15);
    EXPECT_NEAR(p.p_du, 0.5, 1e-15);
    EXPECT_EQ(p.outer, 0.0);
}

// Hand Wick computation: Q_11 = Q_13 = Q_22 = 0, Q_12 = Q_23 = -1/sqrt2, so
// <sx1 sx3> = Q_12 Q_23 - Q_13 Q_22 = 1/2 and <sz1 sz3> = 0.
TEST(PairCorrelators, EndsOfThreeSiteChainInZeroModeMixture) {
    const PairState p = pair_correlators(solve(CouplingVector({1.0, 1.0})), Site{1}, Site{3});
    EXPECT_NEAR(p.sxsx, 0.5, 1e-15);
    EXPECT_NEAR(p.szsz, 0.0, 1e-15);
    EXPECT_NEAR(std::abs(p.inner), 0.25, 1e-15);
    EXPECT_NEAR(p.p_uu, 0.25, 1e-15);
    EXPECT_NEAR(p.p_dd, 0.25, 1e-15);
}

TEST(PairCorrelators, AdjacentSitesReduceToSingleContraction) {
    const auto c = build_couplings(ModularPattern{3, 4, 0.3, 0.7});
    const ModeBasis m = solve(c);
    const Eigen::MatrixXd q = contraction_matrix(m);
    for (std::size_t i = 1; i < c.sites(); ++i) {
        const PairState p = pair_correlators(m, Site{i}, Site{i + 1});
        const auto a = static_cast<Eigen::Index>(i - 1);
        EXPECT_EQ(p.sxsx, q(a, a + 1));
        EXPECT_EQ(p.sysy, q(a + 1, a));
    }
}

TEST(PairCorrelators, RejectsBadSites) {
    const ModeBasis m = solve(CouplingVector({1.0, 1.0, 1.0}));
    EXPECT_THROW(pair_correlators(m, Site{2}, Site{2}), InvalidSpec);
    EXPECT_THROW(pair_correlators(m, Site{3}, Site{2}), InvalidSpec);
    EXPECT_THROW(pair_correlators(m, Site{0}, Site{2}), InvalidSpec);
    EXPECT_THROW(pair_correlators(m, Site{1}, Site{5}), InvalidSpec);
}

TEST(PairCorrelators, XStateInvariantsOnGrid) {
    for (const auto& pattern : modent::testing::equivalence_grid()) {
        const auto c = build_couplings(pattern);
        const ModeBasis m = solve(c);
        const Eigen::MatrixXd q = contraction_matrix(m);
        const std::size_t n = c.sites();
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j) {
                const PairState p = pair_correlators(q, Site{i}, Site{j});
                EXPECT_NEAR(p.sxsx, p.sysy, 1e-10);
                EXPECT_NEAR(p.outer, 0.0, 1e-10);
                EXPECT_NEAR(p.p_uu + p.p_ud + p.p_du + p.p_dd, 1.0, 1e-10);
                for (double pop : {p.p_uu, p.p_ud, p.p_du, p.p_dd}) {
                    EXPECT_GE(pop, -1e-10);
                }
                EXPECT_LE(std::abs(p.inner), std::sqrt(std::max(0.0, p.p_ud * p.p_du)) + 1e-10);
                EXPECT_GE(p.sz_i, -1.0);
                EXPECT_LE(p.sz_i, 1.0);
            }
        }
    }
}

TEST(PairCorrelators, MirrorImagePairsAgree) {
    for (const auto& pattern : {ModularPattern{3, 4, 0.1, 0.5}, ModularPattern{2, 5, 0.6, 2.0}, ModularPattern{4, 6, 0.8, 3.2}}) {
        const auto c = build_couplings(pattern);
        const Eigen::MatrixXd q = contraction_matrix(solve(c));
        const std::size_t n = c.sites();
        for (std::size_t i = 1; i <= n; ++i) {
            for (std::size_t j = i + 1; j <= n; ++j) {
                const PairState p = pair_correlators(q, Site{i}, Site{j});
                const PairState r = pair_correlators(q, Site{n + 1 - j}, Site{n + 1 - i});
                EXPECT_NEAR(p.sxsx, r.sxsx, 1e-10);
                EXPECT_NEAR(p.szsz, r.szsz, 1e-10);
                EXPECT_NEAR(p.sz_i, r.sz_j, 1e-10);
                EXPECT_NEAR(p.p_uu, r.p_uu, 1e-10);
                EXPECT_NEAR(p.p_ud, r.p_du, 1e-10);
                EXPECT_NEAR(p.inner, r.inner, 1e-10);
            }
        }
    }
}

TEST(PairState, DensityMatrixLayout) {
    const PairState p = PairState::from_correlators(Site{1}, Site{2}, 0.2, -0.1, 0.05, 0.3, 0.1);
    const Eigen::Matrix4d rho = p.density_matrix();
    EXPECT_NEAR(rho.trace(), 1.0, 1e-15);
    EXPECT_DOUBLE_EQ(rho(1, 2), (0.3 + 0.1) / 4.0);
    EXPECT_DOUBLE_EQ(rho(0, 3), (0.3 - 0.1) / 4.0);
    EXPECT_DOUBLE_EQ(rho(0, 0), (1.0 + 0.2 - 0.1 + 0.05) / 4.0);
}
