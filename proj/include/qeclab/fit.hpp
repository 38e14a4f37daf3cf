#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace qeclab {

/// Least-squares fit of rate(p) = sum_{i=0}^{degree-2} a_i p^{i+2}
/// (no constant or linear term: the whole point of the encoding is to kill
/// the first-order dependence).
struct FitResult {
    int degree = 0;
    std::vector<double> coefficients;  // a_0 .. a_{degree-2}
    std::vector<double> residuals;     // per input point, rate - fit(p)
    double chi2 = 0;                   // sum((residual/sigma)^2) when weighted
    int n_points = 0;

    double leading_order() const { return coefficients.empty() ? 0.0 : coefficients[0]; }

    double operator()(double p) const {
        double acc = 0, pw = p * p;
        for (double a : coefficients) {
            acc += a * pw;
            pw *= p;
        }
        return acc;
    }
};

struct FitPoint {
    double p = 0;
    double rate = 0;
    double sigma = 1;  // weight = 1/sigma^2
};

namespace detail {

/// Solve the normal equations with partial pivoting (tiny systems only).
inline std::vector<double> solve_linear(std::vector<std::vector<long double>> a,
                                        std::vector<long double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t i = col + 1; i < n; ++i)
            if (std::fabs(static_cast<double>(a[i][col])) >
                std::fabs(static_cast<double>(a[piv][col])))
                piv = i;
        if (a[piv][col] == 0.0L) throw std::invalid_argument("fit: singular normal equations");
        std::swap(a[piv], a[col]);
        std::swap(b[piv], b[col]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == col) continue;
            long double f = a[i][col] / a[col][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] -= f * a[col][j];
            b[i] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(b[i] / a[i][i]);
    return x;
}

}  // namespace detail

inline FitResult fit_polynomial_weighted(const std::vector<FitPoint>& points, int degree) {
    const int terms = degree - 1;
    if (terms < 1) throw std::invalid_argument("fit degree must be >= 2");
    int distinct = 0;
    std::vector<double> seen;
    for (const auto& pt : points) {
        bool dup = false;
        for (double v : seen) dup |= v == pt.p;
        if (!dup) {
            seen.push_back(pt.p);
            ++distinct;
        }
        if (pt.rate < 0 || pt.rate > 1) throw std::invalid_argument("fit: rates must lie in [0,1]");
    }
    if (distinct < terms)
        throw std::invalid_argument("fit: need at least degree-1 distinct p values");

    std::vector<std::vector<long double>> ata(terms, std::vector<long double>(terms, 0));
    std::vector<long double> atb(terms, 0);
    for (const auto& pt : points) {
        long double w = 1.0L / (static_cast<long double>(pt.sigma) * pt.sigma);
        std::vector<long double> basis(terms);
        long double pw = static_cast<long double>(pt.p) * pt.p;
        for (int i = 0; i < terms; ++i) {
            basis[i] = pw;
            pw *= pt.p;
        }
        for (int i = 0; i < terms; ++i) {
            for (int j = 0; j < terms; ++j) ata[i][j] += w * basis[i] * basis[j];
            atb[i] += w * basis[i] * pt.rate;
        }
    }

    FitResult out;
    out.degree = degree;
    out.coefficients = detail::solve_linear(std::move(ata), std::move(atb));
    out.n_points = static_cast<int>(points.size());
    for (const auto& pt : points) {
        double resid = pt.rate - out(pt.p);
        out.residuals.push_back(resid);
        out.chi2 += (resid / pt.sigma) * (resid / pt.sigma);
    }
    return out;
}

inline FitResult fit_polynomial(const std::vector<std::pair<double, double>>& points, int degree) {
    std::vector<FitPoint> pts;
    pts.reserve(points.size());
    for (auto [p, rate] : points) pts.push_back({p, rate, 1.0});
    return fit_polynomial_weighted(pts, degree);
}

/// Smallest p > 0 where the fitted curve crosses the unencoded baseline
/// (2/3)p, located by bracketing on a log grid over [1e-8, 1] and bisection.
/// Absent when the leading coefficient is not positive or no crossing exists.
inline std::optional<double> pseudo_threshold(const FitResult& fit) {
    if (fit.leading_order() <= 0) return std::nullopt;
    auto f = [&](double p) { return fit(p) - (2.0 / 3.0) * p; };

    const double lo = 1e-8, hi = 1.0;
    const int steps = 512;
    double prev = lo, fprev = f(lo);
    if (fprev > 0) return lo;  // crosses below the grid floor
    for (int i = 1; i <= steps; ++i) {
        double cur = lo * std::pow(hi / lo, static_cast<double>(i) / steps);
        double fcur = f(cur);
        if (fcur > 0) {
            double a = prev, b = cur;
            for (int it = 0; it < 200; ++it) {
                double mid = 0.5 * (a + b);
                (f(mid) > 0 ? b : a) = mid;
            }
            return 0.5 * (a + b);
        }
        prev = cur;
        fprev = fcur;
    }
    return std::nullopt;
}

/// Threshold as reported to users: the crossing is suppressed when the
/// weighted fit rejects the superquadratic model outright (reduced chi2 above
/// the ceiling), which is how a linear error-rate floor shows up.
inline std::optional<double> reported_pseudo_threshold(const FitResult& fit,
                                                       double chi2_ceiling = 50.0) {
    int dof = fit.n_points - (fit.degree - 1);
    if (dof > 0 && fit.chi2 / dof > chi2_ceiling) return std::nullopt;
    return pseudo_threshold(fit);
}

struct LeadingOrderPoint {
    double p = 0;
    double value = 0;  // rate / p^2
    double lo = 0;     // min-rate / p^2
    double hi = 0;     // max-rate / p^2
};

/// The rate/p^2 diagnostic series: converges to a_0 as p -> 0 when first-order
/// failures are absent, and blows up like 1/p when they are not.
inline std::vector<LeadingOrderPoint> leading_order_series(
    const std::vector<std::tuple<double, double, double, double>>& points) {
    std::vector<LeadingOrderPoint> out;
    for (auto [p, rate, rate_min, rate_max] : points) {
        if (p <= 0) throw std::invalid_argument("leading_order_series: p must be positive");
        double p2 = p * p;
        out.push_back({p, rate / p2, rate_min / p2, rate_max / p2});
    }
    return out;
}

}  // namespace qeclab
