#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "modent/chain.hpp"

using namespace modent;

namespace {

std::vector<double> couplings_of(int moduli, int n, double lambda, double lambda_i) {
    const auto c = build_couplings(ModularPattern{moduli, n, lambda, lambda_i});
    return {c.values().begin(), c.values().end()};
}

}  // namespace

TEST(BuildCouplings, TwoModuliOfFour) {
    EXPECT_EQ(couplings_of(2, 4, 0.1, 0.5), (std::vector<double>{0.1, 1, 0.1, 0.5, 0.1, 1, 0.1}));
}

TEST(BuildCouplings, SingleTwoSiteModulus) { EXPECT_EQ(couplings_of(1, 2, 1.0, 7.0), std::vector<double>{1.0}); }

TEST(BuildCouplings, LongDistanceChainOfTwoSiteModuli) {
    EXPECT_EQ(couplings_of(3, 2, 0.1, 1.0), (std::vector<double>{0.1, 1, 0.1, 1, 0.1}));
}

TEST(BuildCouplings, ThreeSiteModuliHaveNoBulk) {
    EXPECT_EQ(couplings_of(2, 3, 0.3, 2.0), (std::vector<double>{0.3, 0.3, 2.0, 0.3, 0.3}));
}

TEST(BuildCouplings, SizeIsTotalSitesMinusOne) {
    const auto c = build_couplings(ModularPattern{20, 8, 0.1, 1.0});
    EXPECT_EQ(c.sites(), 160u);
    EXPECT_EQ(c.bonds(), 159u);
}

TEST(BuildCouplings, RejectsInvalidPatterns) {
    EXPECT_THROW(build_couplings(ModularPattern{2, 1, 0.1, 1.0}), InvalidSpec);
    EXPECT_THROW(build_couplings(ModularPattern{0, 4, 0.1, 1.0}), InvalidSpec);
    EXPECT_THROW(build_couplings(ModularPattern{2, 4, 0.0, 1.0}), InvalidSpec);
    EXPECT_THROW(build_couplings(ModularPattern{2, 4, -0.1, 1.0}), InvalidSpec);
    EXPECT_THROW(build_couplings(ModularPattern{2, 4, 0.1, -1e-3}), InvalidSpec);
    EXPECT_THROW(build_couplings(ModularPattern{2, 4, std::nan(""), 1.0}), InvalidSpec);
    EXPECT_THROW(ChainSpec::pattern(2, 4, 0.1, std::numeric_limits<double>::infinity()), InvalidSpec);
}

TEST(BuildCouplings, ZeroInterModulusIsAllowed) {
    EXPECT_EQ(couplings_of(2, 2, 0.5, 0.0), (std::vector<double>{0.5, 0.0, 0.5}));
}

TEST(CouplingVector, RejectsEmptyAndNonFinite) {
    EXPECT_THROW(CouplingVector({}), InvalidSpec);
    EXPECT_THROW(CouplingVector({1.0, std::nan("")}), InvalidSpec);
}

TEST(ChainSpec, ExplicitAndPatternFormsAreExclusive) {
    const auto explicit_spec = ChainSpec::explicit_couplings({0.2, 1.0, 0.2});
    EXPECT_FALSE(explicit_spec.is_pattern());
    EXPECT_EQ(explicit_spec.total_sites(), 4u);
    EXPECT_THROW(explicit_spec.modular(), InvalidSpec);

    const auto pattern_spec = ChainSpec::pattern(3, 4, 0.1, 1.0);
    EXPECT_TRUE(pattern_spec.is_pattern());
    EXPECT_EQ(pattern_spec.total_sites(), 12u);
    EXPECT_THROW(pattern_spec.couplings_list(), InvalidSpec);
    EXPECT_EQ(build_couplings(explicit_spec), CouplingVector({0.2, 1.0, 0.2}));
}

TEST(MirrorSymmetry, Palindrome) { EXPECT_TRUE(validate_mirror_symmetry(CouplingVector({0.1, 1, 0.1})).symmetric); }

TEST(MirrorSymmetry, NonPalindromeReportsFirstMismatch) {
    const auto check = validate_mirror_symmetry(CouplingVector({0.1, 1, 0.2}));
    EXPECT_FALSE(check.symmetric);
    ASSERT_TRUE(check.first_mismatch.has_value());
    EXPECT_EQ(*check.first_mismatch, 0u);
    EXPECT_NE(check.diagnostic.find("vanish"), std::string::npos);
}

TEST(MirrorSymmetry, ToleranceIsAbsolute) {
    EXPECT_TRUE(validate_mirror_symmetry(CouplingVector({0.1, 1, 0.1 + 5e-13})).symmetric);
    EXPECT_FALSE(validate_mirror_symmetry(CouplingVector({0.1, 1, 0.1 + 5e-12})).symmetric);
}

TEST(ChainProperties, PatternsArePalindromes) {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> moduli(1, 20), sites(2, 9);
    std::uniform_real_distribution<double> coupling(1e-3, 5.0);
    for (int trial = 0; trial < 500; ++trial) {
        const ModularPattern p{moduli(rng), sites(rng), coupling(rng), trial % 7 == 0 ? 0.0 : coupling(rng)};
        const auto c = build_couplings(p);
        const auto check = validate_mirror_symmetry(c);
        EXPECT_TRUE(check.symmetric) << check.diagnostic;
        const auto v = c.values();
        for (std::size_t k = 0; k < v.size(); ++k) {
            EXPECT_EQ(v[k], v[v.size() - 1 - k]);
        }
    }
}

TEST(ChainProperties, UnitCouplingsGiveUniformChain) {
    for (int n = 2; n <= 8; ++n) {
        for (int moduli = 1; moduli <= 5; ++moduli) {
            const auto chain = build_couplings(ModularPattern{moduli, n, 1.0, 1.0});
            for (double c : chain.values()) {
                EXPECT_EQ(c, 1.0);
            }
        }
    }
}

TEST(ChainProperties, SingleModulusIgnoresInterModulusCoupling) {
    for (int n = 2; n <= 8; ++n) {
        EXPECT_EQ(build_couplings(ModularPattern{1, n, 0.3, 0.0}), build_couplings(ModularPattern{1, n, 0.3, 9.0}));
    }
}

// With lambda_I equal to the bulk coupling, a chain of 2-site moduli is literally
// the same chain as one of 4-site moduli with the same end bond.
TEST(ChainProperties, TwoAndFourSiteModuliCoincideAtUnitInterModulus) {
    EXPECT_EQ(build_couplings(ModularPattern{20, 2, 0.1, 1.0}), build_couplings(ModularPattern{10, 4, 0.1, 1.0}));
    EXPECT_NE(build_couplings(ModularPattern{20, 2, 0.1, 0.5}), build_couplings(ModularPattern{10, 4, 0.1, 0.5}));
}
