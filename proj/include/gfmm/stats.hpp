#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "gfmm/errors.hpp"

namespace gfmm {

/// Datasets x methods score matrix for rank-based comparison of algorithms.
struct RankTable {
    std::vector<std::string> methods;
    std::vector<std::string> datasets;
    /// scores[dataset][method]
    std::vector<std::vector<double>> scores;

    void validate() const {
        if (methods.size() < 2) throw DataError("rank table needs at least two methods");
        if (datasets.size() < 2) throw DataError("rank table needs at least two datasets");
        if (scores.size() != datasets.size())
            throw DataError("rank table row count does not match dataset names");
        for (const auto& row : scores)
            if (row.size() != methods.size())
                throw DataError("rank table has a ragged row");
    }
};

/// Fractional ranks per dataset (1 = best, ties get the mean of the tied
/// positions), averaged over datasets.
inline std::vector<double> average_ranks(const RankTable& table, bool higher_is_better) {
    table.validate();
    const std::size_t m = table.methods.size();
    std::vector<double> sums(m, 0.0);
    std::vector<std::size_t> order(m);
    for (const auto& row : table.scores) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return higher_is_better ? row[a] > row[b] : row[a] < row[b];
        });
        std::size_t i = 0;
        while (i < m) {
            std::size_t j = i;
            while (j + 1 < m && row[order[j + 1]] == row[order[i]]) ++j;
            double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
            for (std::size_t k = i; k <= j; ++k) sums[order[k]] += rank;
            i = j + 1;
        }
    }
    for (double& s : sums) s /= static_cast<double>(table.datasets.size());
    return sums;
}

/// Friedman rank-sum statistic from the average ranks of M methods over
/// `dataset_count` datasets.
inline double friedman_chi2(std::span<const double> avg_ranks, int dataset_count) {
    const auto m = static_cast<double>(avg_ranks.size());
    if (avg_ranks.size() < 2) throw DataError("friedman statistic needs at least two methods");
    if (dataset_count < 2) throw DataError("friedman statistic needs at least two datasets");
    double sum_sq = 0.0;
    for (double r : avg_ranks) sum_sq += r * r;
    return 12.0 * dataset_count / (m * (m + 1.0)) * (sum_sq - m * (m + 1.0) * (m + 1.0) / 4.0);
}

/// F-statistic derived from the Friedman chi-square; distributed as
/// F(M-1, (M-1)(Z-1)) under the null hypothesis.
inline double friedman_f(double chi2, int dataset_count, int method_count) {
    double denom = dataset_count * (method_count - 1) - chi2;
    if (denom <= 0.0)
        throw NumericError("friedman F undefined: chi-square at its maximum");
    return (dataset_count - 1) * chi2 / denom;
}

namespace detail {

/// Continued fraction for the regularized incomplete beta (modified Lentz).
inline double beta_continued_fraction(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-15;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) return h;
    }
    throw NumericError("incomplete beta continued fraction did not converge");
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw DataError("incomplete beta requires a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                  a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * detail::beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * detail::beta_continued_fraction(b, a, 1.0 - x) / b;
}

/// CDF of the F distribution with d1 and d2 degrees of freedom.
inline double f_cdf(double x, double d1, double d2) {
    if (x <= 0.0) return 0.0;
    return regularized_incomplete_beta(d1 * x / (d1 * x + d2), d1 / 2.0, d2 / 2.0);
}

/// Upper critical value of F(d1, d2) at significance eps, found by
/// bracketing bisection on the CDF.
inline double f_critical(int d1, int d2, double eps) {
    if (d1 < 1 || d2 < 1) throw DataError("F critical value requires d1, d2 >= 1");
    if (!(eps > 0.0 && eps < 1.0)) throw DataError("significance level must lie in (0,1)");
    const double target = 1.0 - eps;
    double lo = 0.0;
    double hi = 1.0;
    int expansions = 0;
    while (f_cdf(hi, d1, d2) < target) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 200) throw NumericError("F critical value bracket diverged");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-7 * std::max(1.0, lo); ++i) {
        double mid = 0.5 * (lo + hi);
        (f_cdf(mid, d1, d2) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

/// Null-hypothesis rejection: F_F strictly above the critical value of
/// F(M-1, (M-1)(Z-1)).
inline bool friedman_reject(double f_f, int dataset_count, int method_count, double eps) {
    return f_f > f_critical(method_count - 1, (method_count - 1) * (dataset_count - 1), eps);
}

namespace detail {

/// Critical values of the studentized range statistic divided by sqrt(2),
/// for significance 0.05 and 2..20 methods (Nemenyi post-hoc test).
inline constexpr double nemenyi_q_005[] = {
    1.960, 2.343, 2.569, 2.728, 2.850, 2.949, 3.031, 3.102, 3.164,
    3.219, 3.268, 3.313, 3.354, 3.391, 3.426, 3.458, 3.489, 3.517, 3.544,
};

}  // namespace detail

/// Nemenyi critical difference: average ranks further apart than this are
/// significantly different at the 0.05 level.
inline double nemenyi_critical_difference(int method_count, int dataset_count,
                                          double eps = 0.05) {
    if (eps != 0.05)
        throw DataError("nemenyi critical difference is tabulated for eps = 0.05 only");
    if (method_count < 2 || method_count > 20)
        throw DataError("nemenyi critical difference is tabulated for 2..20 methods");
    if (dataset_count < 1) throw DataError("nemenyi critical difference requires datasets");
    const double m = method_count;
    return detail::nemenyi_q_005[method_count - 2] *
           std::sqrt(m * (m + 1.0) / (6.0 * dataset_count));
}

/// Maximal groups of methods whose average ranks all lie within the critical
/// difference of each other (the connected cliques of a critical difference
/// diagram). Each group lists method indices ordered by rank.
inline std::vector<std::vector<std::size_t>> critical_difference_groups(
    std::span<const double> avg_ranks, double cd) {
    std::vector<std::size_t> order(avg_ranks.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return avg_ranks[a] < avg_ranks[b]; });
    std::vector<std::vector<std::size_t>> groups;
    std::size_t last_end = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t j = i;
        while (j + 1 < order.size() &&
               avg_ranks[order[j + 1]] - avg_ranks[order[i]] <= cd)
            ++j;
        if (groups.empty() || j + 1 > last_end) {
            groups.emplace_back(order.begin() + i, order.begin() + j + 1);
            last_end = j + 1;
        }
    }
    return groups;
}

}  // namespace gfmm
