#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "modent/fermion.hpp"
#include "test_support.hpp"

using namespace modent;

namespace {

void expect_basis_invariants(const CouplingVector& c, const ModeBasis& m) {
    const auto n = static_cast<Eigen::Index>(c.sites());
    const Eigen::MatrixXd t = hopping_matrix(c);
    const auto& phi = m.modes();
    const auto& e = m.energies();

    EXPECT_TRUE(std::is_sorted(e.begin(), e.end()));
    EXPECT_LE((phi * phi.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10);
    for (Eigen::Index k = 0; k < n; ++k) {
        EXPECT_LE((t * phi.col(k) - e[static_cast<std::size_t>(k)] * phi.col(k)).norm(), 1e-10);
        EXPECT_NEAR(e[static_cast<std::size_t>(k)], -e[static_cast<std::size_t>(n - 1 - k)], 1e-12);
    }

    const Eigen::MatrixXd& g = m.correlation();
    EXPECT_LE((g - g.transpose()).cwiseAbs().maxCoeff(), 0.0);
    const Eigen::VectorXd occ = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues();
    EXPECT_GE(occ.minCoeff(), -1e-10);
    EXPECT_LE(occ.maxCoeff(), 1.0 + 1e-10);
    EXPECT_NEAR(g.trace(), 0.5 * static_cast<double>(n), 1e-10);
    if (m.zero_mode_count() == 0) {
        EXPECT_LE((g * g - g).cwiseAbs().maxCoeff(), 1e-10);
    }
}

}  // namespace

TEST(HoppingMatrix, IsQuarterCouplingWithZeroDiagonal) {
    const Eigen::MatrixXd t = hopping_matrix(CouplingVector({1.0, 0.2}));
    EXPECT_EQ(t(0, 0), 0.0);
    EXPECT_EQ(t(0, 1), 0.25);
    EXPECT_EQ(t(1, 2), 0.05);
    EXPECT_EQ(t(2, 1), 0.05);
    EXPECT_EQ(t(0, 2), 0.0);
}

TEST(Solve, TwoSiteSinglet) {
    const ModeBasis m = solve(CouplingVector({1.0}));
    ASSERT_EQ(m.sites(), 2u);
    EXPECT_NEAR(m.energies()[0], -0.25, 1e-15);
    EXPECT_NEAR(m.energies()[1], 0.25, 1e-15);
    EXPECT_EQ(m.zero_mode_count(), 0);
    const Eigen::MatrixXd& g = m.correlation();
    EXPECT_NEAR(g(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(g(1, 1), 0.5, 1e-15);
    EXPECT_NEAR(g(0, 1), -0.5, 1e-15);
    EXPECT_NEAR(g(1, 0), -0.5, 1e-15);
}

// Hand eigendecomposition of [[0,1,0],[1,0,1],[0,1,0]]/4: eps = -sqrt2/4, 0, sqrt2/4,
// phi_- = (1, -sqrt2, 1)/2, phi_0 = (1, 0, -1)/sqrt2, so G_11 = 1/4 + 1/4, G_13 = 1/4 - 1/4.
TEST(Solve, ThreeSiteChainHasHalfFilledZeroMode) {
    const ModeBasis m = solve(CouplingVector({1.0, 1.0}));
    const double r = std::sqrt(2.0) / 4.0;
    EXPECT_NEAR(m.energies()[0], -r, 1e-15);
    EXPECT_EQ(m.energies()[1], 0.0);
    EXPECT_NEAR(m.energies()[2], r, 1e-15);
    EXPECT_EQ(m.zero_mode_count(), 1);
    EXPECT_TRUE(m.degenerate());
    EXPECT_NEAR(m.correlation()(0, 0), 0.5, 1e-15);
    EXPECT_NEAR(m.correlation()(0, 2), 0.0, 1e-15);
    EXPECT_NEAR(m.correlation()(0, 1), -r, 1e-15);
}

TEST(Solve, ZeroModesCountOddComponents) {
    EXPECT_EQ(solve(build_couplings(ModularPattern{2, 3, 0.5, 0.0})).zero_mode_count(), 2);
    EXPECT_EQ(solve(build_couplings(ModularPattern{3, 3, 0.5, 0.0})).zero_mode_count(), 3);
    EXPECT_EQ(solve(build_couplings(ModularPattern{2, 4, 0.5, 0.0})).zero_mode_count(), 0);
    EXPECT_EQ(solve(build_couplings(ModularPattern{3, 3, 0.5, 1.0})).zero_mode_count(), 1);
    EXPECT_EQ(solve(CouplingVector({0.0, 0.0})).zero_mode_count(), 3);
}

TEST(Solve, InvariantsOnEquivalenceGrid) {
    for (const auto& p : modent::testing::equivalence_grid()) {
        SCOPED_TRACE(::testing::Message() << "N=" << p.moduli << " n=" << p.sites_per_modulus
                                          << " lambda=" << p.end_bond << " lambda_I=" << p.inter_modulus);
        const auto c = build_couplings(p);
        const ModeBasis m = solve(c);
        expect_basis_invariants(c, m);
        EXPECT_EQ(m.zero_mode_count(), static_cast<int>(c.sites() % 2));
    }
}

TEST(Solve, InvariantsOnRandomChains) {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> length(1, 60);
    std::uniform_real_distribution<double> coupling(-2.0, 2.0);
    std::bernoulli_distribution cut(0.05);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> v(static_cast<std::size_t>(length(rng)));
        for (auto& x : v) {
            x = cut(rng) ? 0.0 : coupling(rng);
        }
        const CouplingVector c(v);
        expect_basis_invariants(c, solve(c));
    }
}

TEST(Solve, MatchesDenseEigensolverOnWellGappedChains) {
    for (const auto& p : {ModularPattern{3, 5, 0.7, 1.3}, ModularPattern{4, 6, 1.0, 1.0}, ModularPattern{2, 9, 0.4, 2.0}}) {
        const auto c = build_couplings(p);
        const Eigen::VectorXd dense = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hopping_matrix(c)).eigenvalues();
        const ModeBasis m = solve(c);
        for (std::size_t k = 0; k < m.sites(); ++k) {
            EXPECT_NEAR(m.energies()[k], dense(static_cast<Eigen::Index>(k)), 1e-12);
        }
    }
}

// det B = prod sigma_k for the bidiagonal sublattice block: the product of the
// odd-numbered bonds. Holds to relative accuracy even when sigma_min ~ 1e-21.
TEST(Solve, SingularValueProductMatchesBondProduct) {
    for (const auto& p : {ModularPattern{20, 2, 0.1, 1.0}, ModularPattern{20, 8, 0.1, 1.0}, ModularPattern{20, 4, 0.1, 0.05}}) {
        const auto c = build_couplings(p);
        const ModeBasis m = solve(c);
        double log_sigma = 0.0;
        for (double e : m.energies()) {
            if (e > 0.0) {
                log_sigma += std::log(e);
            }
        }
        double log_bonds = 0.0;
        for (std::size_t b = 0; b < c.bonds(); b += 2) {
            log_bonds += std::log(0.25 * c[b]);
        }
        EXPECT_NEAR(log_sigma, log_bonds, 1e-10 * std::abs(log_bonds));
    }
}

// Reference values from a 50-digit dense eigensolver.
TEST(Solve, TinyGapsAgainstHighPrecisionReference) {
    struct Case {
        ModularPattern p;
        double gap;
        double ground_energy;
    };
    for (const auto& k : {Case{{20, 2, 0.1, 1.0}, 2.475000000000002745026428e-21, -4.763759400498000672254274},
                          Case{{10, 6, 0.8, 3.2}, 3.449263157896945707275665e-8, -13.33164657509632819697646},
                          Case{{12, 4, 0.1, 0.05}, 4.866534653465350958204159e-11, -3.167665179578167025827806},
                          Case{{8, 8, 0.1, 1.0}, 2.426941747572817681636072e-17, -8.751772903137772036387462}}) {
        const ModeBasis m = solve(build_couplings(k.p));
        EXPECT_EQ(m.zero_mode_count(), 0);
        EXPECT_NEAR(energy_gap(m), k.gap, 1e-10 * k.gap);
        EXPECT_NEAR(ground_energy(m), k.ground_energy, 1e-12);
    }
}

TEST(EnergyGap, TwoAndThreeSiteChains) {
    EXPECT_DOUBLE_EQ(energy_gap(solve(CouplingVector({1.0}))), 0.25);
    EXPECT_EQ(energy_gap(solve(CouplingVector({1.0, 1.0}))), 0.0);
}

TEST(EnergyGap, GroundEnergyOfSinglet) { EXPECT_DOUBLE_EQ(ground_energy(solve(CouplingVector({1.0}))), -0.25); }

TEST(ModeBasis, RejectsMismatchedShapes) {
    EXPECT_THROW(ModeBasis({-1.0, 1.0}, Eigen::MatrixXd::Identity(3, 3), 0), SolverError);
}
