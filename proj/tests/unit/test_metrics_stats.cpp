#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "itboost/error.hpp"
#include "itboost/metrics.hpp"
#include "itboost/stats.hpp"
#include "oracles.hpp"

using namespace itboost;
using doctest::Approx;

namespace {

// Pairwise AUC by definition.
double brute_auc(const std::vector<int>& y, const std::vector<double>& p) {
    double credit = 0.0, pairs = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i)
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[i] > 0 && y[j] < 0) {
                pairs += 1.0;
                credit += p[i] > p[j] ? 1.0 : (p[i] == p[j] ? 0.5 : 0.0);
            }
    return credit / pairs;
}

}  // namespace

TEST_CASE("metric examples") {
    const std::vector<int> y{1, 1, -1, -1};
    const std::vector<double> p{0.9, 0.4, 0.6, 0.1};
    CHECK(roc_auc(y, p) == 0.75);
    CHECK(accuracy(y, p) == 0.5);
    CHECK(f1_score(y, p) == 0.5);

    const std::vector<double> perfect{0.8, 0.7, 0.2, 0.3};
    CHECK(roc_auc(y, perfect) == 1.0);

    const std::vector<double> flat(4, 0.5);
    CHECK(roc_auc(y, flat) == 0.5);
    CHECK(std::abs(log_loss(y, flat) - std::log(2.0)) < 1e-15);
    CHECK(accuracy(y, flat) == 0.5);  // ties predict positive

    const std::vector<double> all_neg(4, 0.1);
    CHECK(f1_score(y, all_neg) == 0.0);
    const std::vector<double> confident{1.0, 0.0, 0.0, 0.0};
    CHECK(std::isfinite(log_loss(y, confident)));
    CHECK(log_loss(y, confident) == Approx(-std::log(1e-15) / 4.0).epsilon(1e-9));
}

TEST_CASE("AUC agrees with pairwise counting, ties included") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + rng() % 40;
        std::vector<int> y(n);
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng() % 2 ? 1 : -1;
            p[i] = static_cast<double>(rng() % 7) / 6.0;
        }
        y[0] = 1;
        y[1] = -1;
        CHECK(roc_auc(y, p) == Approx(brute_auc(y, p)).epsilon(1e-12));
    }
}

TEST_CASE("metric errors") {
    const std::vector<int> one{1, 1};
    const std::vector<double> p{0.2, 0.9};
    CHECK_THROWS_AS((void)roc_auc(one, p), DataError);
    const std::vector<double> short_p{0.2};
    CHECK_THROWS((void)accuracy(one, short_p));
}

TEST_CASE("regularized gamma and chi-square tail") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 3.84, 10.0}) CHECK(chi_square_sf(x, 1) == Approx(oracle::chi2_sf_1dof(x)).epsilon(1e-10));
    // dof 2: closed form exp(-x/2)
    for (double x : {0.3, 1.0, 5.0, 20.0}) CHECK(chi_square_sf(x, 2) == Approx(std::exp(-x / 2)).epsilon(1e-12));
    CHECK(regularized_gamma_q(3.0, 0.0) == 1.0);
}

TEST_CASE("friedman examples") {
    RankMatrix same{{{0.8, 0.8, 0.8}, {0.6, 0.6, 0.6}, {0.9, 0.9, 0.9}}, true};
    const auto flat = friedman_test(same);
    CHECK(flat.mean_ranks == std::vector<double>{2.0, 2.0, 2.0});
    CHECK(flat.statistic == Approx(0.0).epsilon(1e-12));
    CHECK(flat.p_value == Approx(1.0).epsilon(1e-12));

    RankMatrix two{{{0.9, 0.8}, {0.7, 0.6}, {0.5, 0.4}, {0.95, 0.9}}, true};
    const auto r = friedman_test(two);
    CHECK(r.mean_ranks == std::vector<double>{1.0, 2.0});
    CHECK(r.statistic == Approx(4.0).epsilon(1e-12));
    CHECK(r.p_value == Approx(oracle::chi2_sf_1dof(4.0)).epsilon(1e-10));
    CHECK(std::abs(r.p_value - 0.0455) < 1e-4);
}

TEST_CASE("friedman on published mean ranks") {
    // ACC row of the appendix table; D = 5, A = 8.
    const auto r = friedman_from_mean_ranks({6.6, 5.8, 5.4, 3.7, 3.4, 7.1, 3.0, 1.0}, 5);
    CHECK(std::abs(r.statistic - 25.0) <= 0.1);
    CHECK(std::abs(r.p_value - 0.000700) <= 2e-4);
}

TEST_CASE("rank_row averages ties") {
    CHECK(rank_row({0.5, 0.9, 0.5, 0.1}, true) == std::vector<double>{2.5, 1.0, 2.5, 4.0});
    CHECK(rank_row({0.5, 0.9, 0.5, 0.1}, false) == std::vector<double>{2.5, 4.0, 2.5, 1.0});
}
