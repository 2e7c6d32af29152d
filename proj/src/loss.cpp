#include "itboost/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "itboost/error.hpp"

namespace itboost {

std::string_view to_string(Loss loss) { return loss == Loss::Logistic ? "logistic" : "squared"; }

Loss parse_loss(std::string_view s) {
    if (s == "logistic") return Loss::Logistic;
    if (s == "squared") return Loss::Squared;
    throw std::invalid_argument("unknown loss '" + std::string(s) + "'");
}

double logistic_gradient(int y, double score) {
    const double margin = static_cast<double>(y) * score;
    if (margin > 500.0) return static_cast<double>(y) * std::exp(-margin);
    return static_cast<double>(y) / (1.0 + std::exp(margin));
}

double squared_gradient(int y, double score) { return static_cast<double>(y) - score; }

double pseudo_residual(Loss loss, int y, double score) {
    return loss == Loss::Logistic ? logistic_gradient(y, score) : squared_gradient(y, score);
}

double loss_value(Loss loss, int y, double score) {
    if (loss == Loss::Squared) {
        const double r = static_cast<double>(y) - score;
        return 0.5 * r * r;
    }
    const double z = -static_cast<double>(y) * score;
    // log1p(exp(z)) without overflow
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double init_score(std::span<const int> labels, Loss loss) {
    if (labels.empty()) throw std::invalid_argument("init_score: empty labels");
    double pos = 0.0, sum = 0.0;
    for (int y : labels) {
        sum += y;
        if (y > 0) pos += 1.0;
    }
    const double n = static_cast<double>(labels.size());
    if (loss == Loss::Squared) return sum / n;
    if (pos == 0.0 || pos == n) throw DataError("init_score: logistic loss needs both classes");
    return std::log(pos / (n - pos));
}

}  // namespace itboost
