#pragma once

#include <cstddef>
#include <vector>

namespace itboost {

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a);
/// series for x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_q(double a, double x);

/// Upper-tail probability P(X >= x) for a chi-square with `dof` degrees of freedom.
double chi_square_sf(double x, double dof);

/// Scores of A algorithms (columns) on D datasets (rows).
struct RankMatrix {
    std::vector<std::vector<double>> scores;
    bool higher_is_better = true;
};

struct FriedmanResult {
    std::vector<double> mean_ranks;  // rank 1 = best, ties share the average rank
    double statistic = 0.0;          // chi-square_F
    double p_value = 1.0;
    std::size_t datasets = 0;
    std::size_t algorithms = 0;
};

/// Average ranks (1 = best, ties averaged) of one row.
std::vector<double> rank_row(const std::vector<double>& row, bool higher_is_better);

FriedmanResult friedman_test(const RankMatrix& input);

/// chi-square_F and its p-value from already-averaged ranks.
FriedmanResult friedman_from_mean_ranks(const std::vector<double>& mean_ranks, std::size_t datasets);

}  // namespace itboost
