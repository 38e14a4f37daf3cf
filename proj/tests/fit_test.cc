#include "qeclab/fit.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace qeclab;

namespace {

std::vector<std::pair<double, double>> sample_curve(double a0, double a1, double a2 = 0) {
    std::vector<std::pair<double, double>> pts;
    for (double p : {2e-4, 4e-4, 8e-4, 1.6e-3, 3.2e-3, 6.4e-3})
        pts.push_back({p, a0 * p * p + a1 * p * p * p + a2 * p * p * p * p});
    return pts;
}

}  // namespace

TEST(fit, exact_quadratic_recovery) {
    auto fit = fit_polynomial(sample_curve(270.0, 0.0), 3);
    EXPECT_NEAR(fit.coefficients[0], 270.0, 1e-6);
    EXPECT_NEAR(fit.coefficients[1], 0.0, 1e-3);
    EXPECT_NEAR(fit.leading_order(), 270.0, 1e-6);
    for (double r : fit.residuals) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(fit, exact_cubic_recovery_within_one_percent) {
    auto fit = fit_polynomial(sample_curve(550.0, 1e4), 3);
    EXPECT_NEAR(fit.coefficients[0], 550.0, 5.5);
    EXPECT_NEAR(fit.coefficients[1], 1e4, 100.0);
}

TEST(fit, underdetermined_throws) {
    std::vector<std::pair<double, double>> one = {{1e-3, 1e-5}};
    EXPECT_THROW(fit_polynomial(one, 4), std::invalid_argument);
    EXPECT_THROW(fit_polynomial({}, 3), std::invalid_argument);
}

TEST(fit, rates_outside_unit_interval_rejected) {
    std::vector<std::pair<double, double>> bad = {{1e-3, 2.0}, {2e-3, 0.5}};
    EXPECT_THROW(fit_polynomial(bad, 3), std::invalid_argument);
}

TEST(pseudo_threshold, closed_form_quadratics) {
    FitResult fit;
    fit.degree = 2;
    fit.coefficients = {550.0};
    auto t = pseudo_threshold(fit);
    ASSERT_TRUE(t.has_value());
    EXPECT_NEAR(*t, 2.0 / (3.0 * 550.0), 1e-9);  // ~1.212e-3

    fit.coefficients = {2016.0};
    t = pseudo_threshold(fit);
    ASSERT_TRUE(t.has_value());
    EXPECT_NEAR(*t, 2.0 / (3.0 * 2016.0), 1e-9);  // ~3.31e-4
}

TEST(pseudo_threshold, absent_for_nonpositive_leading_order) {
    FitResult fit;
    fit.degree = 3;
    fit.coefficients = {-10.0, 1e4};
    EXPECT_FALSE(pseudo_threshold(fit).has_value());
    fit.coefficients = {0.0, 0.0};
    EXPECT_FALSE(pseudo_threshold(fit).has_value());
}

TEST(pseudo_threshold, respects_higher_order_terms) {
    FitResult fit;
    fit.degree = 3;
    fit.coefficients = {550.0, 1e5};
    auto t = pseudo_threshold(fit);
    ASSERT_TRUE(t.has_value());
    // root of 550 p + 1e5 p^2 = 2/3
    double expect = (-550.0 + std::sqrt(550.0 * 550.0 + 4e5 * 2.0 / 3.0)) / 2e5;
    EXPECT_NEAR(*t, expect, 1e-9);
}

TEST(leading_order, constant_series_for_pure_quadratic) {
    std::vector<std::tuple<double, double, double, double>> pts;
    for (double p : {1e-3, 2e-3, 4e-3})
        pts.push_back({p, 270 * p * p, 260 * p * p, 280 * p * p});
    auto series = leading_order_series(pts);
    for (const auto& lp : series) {
        EXPECT_NEAR(lp.value, 270.0, 1e-9);
        EXPECT_NEAR(lp.lo, 260.0, 1e-9);
        EXPECT_NEAR(lp.hi, 280.0, 1e-9);
    }
}

TEST(leading_order, rejects_nonpositive_p) {
    std::vector<std::tuple<double, double, double, double>> pts = {{0.0, 0, 0, 0}};
    EXPECT_THROW(leading_order_series(pts), std::invalid_argument);
}

TEST(fit, weighted_fit_prefers_low_variance_points) {
    // two-point exactly-determined check with wildly different sigmas
    std::vector<FitPoint> pts = {{1e-3, 300e-6, 1e-9}, {2e-3, 1160e-6, 1e-3}};
    auto fit = fit_polynomial_weighted(pts, 3);
    // first point pinned: a0 + a1*1e-3 = 300
    EXPECT_NEAR(fit.coefficients[0] + fit.coefficients[1] * 1e-3, 300.0, 1e-3);
}

TEST(fit, chi2_accumulates_misfit) {
    // linear data forced through the quadratic-only model: chi2 must explode
    std::vector<FitPoint> pts;
    for (double p : {2e-4, 4e-4, 8e-4, 1.6e-3, 3.2e-3}) {
        double rate = 8.0 * p;  // linear floor
        pts.push_back({p, rate, std::sqrt(rate * (1 - rate) / 1e6)});
    }
    auto fit = fit_polynomial_weighted(pts, 3);
    EXPECT_GT(fit.chi2 / (pts.size() - 2), 500.0);
    EXPECT_FALSE(reported_pseudo_threshold(fit).has_value());

    std::vector<FitPoint> good;
    for (double p : {2e-4, 4e-4, 8e-4, 1.6e-3, 3.2e-3}) {
        double rate = 270 * p * p;
        good.push_back({p, rate, std::sqrt(std::max(rate, 1e-9) / 1e6)});
    }
    auto gfit = fit_polynomial_weighted(good, 3);
    EXPECT_LT(gfit.chi2 / (good.size() - 2), 1.0);
}
