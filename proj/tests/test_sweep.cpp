#include <gtest/gtest.h>

#include <cmath>

#include "modent/sweep.hpp"

using namespace modent;

TEST(LinearGrid, InclusiveEndpointsWithoutDrift) {
    const auto g = linear_grid(0.0, 2.0, 0.01);
    ASSERT_EQ(g.size(), 201u);
    EXPECT_EQ(g.front(), 0.0);
    EXPECT_EQ(g.back(), 2.0);
    EXPECT_EQ(g[37], 0.37);
    EXPECT_THROW(linear_grid(1.0, 0.0, 0.1), InvalidSpec);
    EXPECT_THROW(linear_grid(0.0, 1.0, 0.0), InvalidSpec);
}

TEST(SweepLambdaI, RejectsBadGrids) {
    const ModularPattern base{2, 4, 0.1, 0.0};
    EXPECT_THROW(sweep_lambda_i(base, {}), InvalidSpec);
    EXPECT_THROW(sweep_lambda_i(base, {0.1, 0.1}), InvalidSpec);
    EXPECT_THROW(sweep_lambda_i(base, {0.2, 0.1}), InvalidSpec);
    EXPECT_THROW(sweep_lambda_i(base, {-0.1, 0.1}), InvalidSpec);
    EXPECT_THROW(sweep_lambda_i(base, {0.1, NAN}), InvalidSpec);
}

TEST(SweepLambdaI, TwoSixSiteModuliHaveAThresholdThenGrowPastTheSingleModulus) {
    const auto t = sweep_lambda_i(ModularPattern{2, 6, 0.1, 0.0}, linear_grid(0.0, 2.0, 0.01));
    ASSERT_EQ(t.rows.size(), 201u);
    EXPECT_EQ(t.axis, "lambda_I");
    EXPECT_EQ(t.rows.front().c_end, 0.0);
    std::size_t onset = 0;
    while (onset < t.rows.size() && t.rows[onset].c_end <= 1e-8) {
        ++onset;
    }
    ASSERT_LT(onset, t.rows.size());
    EXPECT_GT(t.rows[onset].axis_value, 0.0);
    for (std::size_t k = onset + 1; k < t.rows.size(); ++k) {
        EXPECT_GE(t.rows[k].c_end, t.rows[k - 1].c_end - 1e-6) << t.rows[k].axis_value;
    }
    EXPECT_GT(t.rows.back().c_end, t.rows.front().c_single_modulus);
    EXPECT_NEAR(t.rows.front().c_single_modulus, 0.928652087978636, 1e-10);
    for (const auto& r : t.rows) {
        EXPECT_EQ(r.c_single_modulus, t.rows.front().c_single_modulus);
    }
}

TEST(SweepLambdaI, ThreadCountDoesNotChangeRows) {
    const ModularPattern base{3, 4, 0.2, 0.0};
    const auto grid = linear_grid(0.0, 1.0, 0.05);
    EXPECT_EQ(sweep_lambda_i(base, grid, {1}), sweep_lambda_i(base, grid, {3}));
}

TEST(SweepLambdaI, OddModuliCarryANote) {
    const auto t = sweep_lambda_i(ModularPattern{2, 7, 0.1, 0.0}, {0.5, 1.0});
    ASSERT_EQ(t.provenance.notes.size(), 1u);
    EXPECT_TRUE(t.rows.front().degenerate || t.rows.front().gap >= 0.0);
}

TEST(SweepModuli, SingleModulusIsUnentangledYetChainSaturates) {
    const auto s = sweep_moduli(ModularPattern{1, 6, 0.8, 3.2}, 20);
    ASSERT_EQ(s.table.rows.size(), 20u);
    EXPECT_EQ(s.table.rows.front().c_end, 0.0);
    EXPECT_GT(s.asymptote.value, 0.0);
    EXPECT_TRUE(s.asymptote.converged);
    EXPECT_NEAR(s.table.rows[9].c_end, 0.00969477450391791168450965, 1e-10);
    EXPECT_NEAR(s.asymptote.value, 0.0096953, 1e-7);
    EXPECT_THROW(sweep_moduli(ModularPattern{1, 6, 0.8, 3.2}, 1), InvalidSpec);
}

TEST(GapFit, ExactExponentialHasUnitRSquared) {
    SweepTable t;
    for (int k = 1; k <= 6; ++k) {
        SweepRow r;
        r.axis_value = k;
        r.gap = 3.0 * std::exp(-0.7 * k);
        t.rows.push_back(r);
    }
    const GapFit fit = fit_log_gap(t);
    EXPECT_NEAR(fit.slope, -0.7, 1e-12);
    EXPECT_NEAR(fit.intercept, std::log(3.0), 1e-12);
    EXPECT_NEAR(fit.r_squared, 1.0, 1e-12);
    EXPECT_EQ(fit.points, 6u);
    EXPECT_THROW(fit_log_gap(t, 6.0), InvalidSpec);
}

TEST(GapFit, DimerChainGapDecaysExponentially) {
    const auto s = sweep_moduli(ModularPattern{1, 2, 0.1, 1.0}, 20);
    const GapFit fit = fit_log_gap(s.table, 4.0);
    EXPECT_LT(fit.slope, 0.0);
    EXPECT_GE(fit.r_squared, 0.99);
}

TEST(GapSquareRoot, DoublingTheModulusRoughlyHalvesTheLogGap) {
    const auto check = gap_square_root_check(ModularPattern{1, 4, 0.1, 1.0}, 32);
    EXPECT_EQ(check.total_sites, 32u);
    EXPECT_LT(check.relative_deviation, 0.2);
    EXPECT_THROW(gap_square_root_check(ModularPattern{1, 4, 0.1, 1.0}, 12), InvalidSpec);
}

TEST(Threshold, TwoSixSiteModuli) {
    const auto r = find_threshold(ModularPattern{2, 6, 0.1, 0.0});
    ASSERT_EQ(r.outcome, ThresholdOutcome::found);
    EXPECT_TRUE(r.converged);
    EXPECT_TRUE(r.verified);
    EXPECT_LE(r.upper - r.lower, 1e-6);
    EXPECT_GT(r.threshold, 0.0);
    EXPECT_LT(r.threshold, 0.01);
    EXPECT_NEAR(r.ratio, r.threshold / 0.1, 1e-15);
}

TEST(Threshold, LongDimerChainRatioIsIndependentOfLambda) {
    std::vector<double> ratios;
    for (double lambda : {0.1, 0.5, 1.0}) {
        const auto r = find_threshold(ModularPattern{20, 2, lambda, 0.0});
        ASSERT_EQ(r.outcome, ThresholdOutcome::found) << lambda;
        ratios.push_back(r.ratio);
    }
    EXPECT_NEAR(ratios[0], 1.3121, 1e-3);
    EXPECT_NEAR(ratios[1], ratios[0], 1e-4);
    EXPECT_NEAR(ratios[2], ratios[0], 1e-4);
}

TEST(Threshold, UniformFourSiteModuliAtSilverRatio) {
    const auto r = find_threshold(ModularPattern{20, 4, 1.0, 0.0});
    ASSERT_EQ(r.outcome, ThresholdOutcome::found);
    EXPECT_NEAR(r.threshold, 1.0 + std::sqrt(2.0), 2e-3);
}

TEST(Threshold, SingleModulusAlreadyEntangled) {
    const auto r = find_threshold(ModularPattern{1, 6, 0.1, 0.0});
    EXPECT_EQ(r.outcome, ThresholdOutcome::positive_at_zero);
}

TEST(Threshold, NoneInRange) {
    ThresholdOptions o;
    o.max_inter_modulus = 0.2;
    const auto r = find_threshold(ModularPattern{20, 4, 1.0, 0.0}, o);
    EXPECT_EQ(r.outcome, ThresholdOutcome::none_in_range);
    EXPECT_STREQ(to_string(r.outcome), "none_in_range");
}

TEST(Threshold, RejectsBadOptions) {
    ThresholdOptions o;
    o.step = 0.0;
    EXPECT_THROW(find_threshold(ModularPattern{2, 4, 0.1, 0.0}, o), InvalidSpec);
}
