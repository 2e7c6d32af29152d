#include "itboost/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "itboost/error.hpp"

namespace itboost {

namespace {

constexpr int kMaxIter = 1000;
constexpr double kEps = 1e-15;

// P(a, x) by its power series; valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a, sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the modified Lentz continued fraction; valid for x >= a + 1.
double gamma_q_fraction(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / kEps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < kEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double regularized_gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0 || std::isnan(x)) throw std::invalid_argument("regularized_gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_fraction(a, x);
}

double chi_square_sf(double x, double dof) {
    if (!(dof > 0.0)) throw std::invalid_argument("chi_square_sf: dof must be positive");
    if (x <= 0.0) return 1.0;
    return regularized_gamma_q(0.5 * dof, 0.5 * x);
}

std::vector<double> rank_row(const std::vector<double>& row, bool higher_is_better) {
    const std::size_t a = row.size();
    std::vector<std::size_t> order(a);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return higher_is_better ? row[i] > row[j] : row[i] < row[j];
    });
    std::vector<double> ranks(a);
    for (std::size_t lo = 0; lo < a;) {
        std::size_t hi = lo;
        while (hi + 1 < a && row[order[hi + 1]] == row[order[lo]]) ++hi;
        const double avg = 0.5 * static_cast<double>(lo + hi) + 1.0;
        for (std::size_t t = lo; t <= hi; ++t) ranks[order[t]] = avg;
        lo = hi + 1;
    }
    return ranks;
}

FriedmanResult friedman_from_mean_ranks(const std::vector<double>& mean_ranks, std::size_t datasets) {
    const std::size_t a = mean_ranks.size();
    if (a < 2 || datasets < 2) throw std::invalid_argument("friedman: need at least 2 datasets and 2 algorithms");
    const double dd = static_cast<double>(datasets), aa = static_cast<double>(a);
    double sum_sq = 0.0;
    for (double r : mean_ranks) sum_sq += r * r;
    FriedmanResult res;
    res.mean_ranks = mean_ranks;
    res.datasets = datasets;
    res.algorithms = a;
    res.statistic = std::max(0.0, 12.0 * dd / (aa * (aa + 1.0)) * sum_sq - 3.0 * dd * (aa + 1.0));
    // Rounding can leave a tiny residue when every rank equals (A+1)/2.
    if (res.statistic < 1e-9) res.statistic = 0.0;
    res.p_value = chi_square_sf(res.statistic, aa - 1.0);
    return res;
}

FriedmanResult friedman_test(const RankMatrix& input) {
    const std::size_t d = input.scores.size();
    if (d < 2) throw std::invalid_argument("friedman_test: need at least 2 datasets");
    const std::size_t a = input.scores.front().size();
    if (a < 2) throw std::invalid_argument("friedman_test: need at least 2 algorithms");
    std::vector<double> mean(a, 0.0);
    for (const auto& row : input.scores) {
        if (row.size() != a) throw std::invalid_argument("friedman_test: ragged score matrix");
        for (double v : row)
            if (std::isnan(v)) throw DataError("friedman_test: NaN score");
        const auto ranks = rank_row(row, input.higher_is_better);
        for (std::size_t j = 0; j < a; ++j) mean[j] += ranks[j];
    }
    for (double& m : mean) m /= static_cast<double>(d);
    return friedman_from_mean_ranks(mean, d);
}

}  // namespace itboost
