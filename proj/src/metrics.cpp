#include "itboost/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "itboost/error.hpp"

namespace itboost {

namespace {

void check_lengths(std::span<const int> labels, std::span<const double> proba) {
    if (labels.size() != proba.size()) throw std::invalid_argument("metrics: length mismatch");
    if (labels.empty()) throw std::invalid_argument("metrics: empty input");
}

void check_both_classes(std::span<const int> labels, const char* who) {
    const bool pos = std::any_of(labels.begin(), labels.end(), [](int y) { return y > 0; });
    const bool neg = std::any_of(labels.begin(), labels.end(), [](int y) { return y < 0; });
    if (!pos || !neg) throw DataError(std::string(who) + ": needs both classes");
}

}  // namespace

double accuracy(std::span<const int> labels, std::span<const double> proba) {
    check_lengths(labels, proba);
    std::size_t hit = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) hit += ((proba[i] >= 0.5 ? 1 : -1) == labels[i]);
    return static_cast<double>(hit) / static_cast<double>(labels.size());
}

double f1_score(std::span<const int> labels, std::span<const double> proba) {
    check_lengths(labels, proba);
    check_both_classes(labels, "f1_score");
    double tp = 0, fp = 0, fn = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool pred = proba[i] >= 0.5;
        if (pred && labels[i] > 0) ++tp;
        else if (pred) ++fp;
        else if (labels[i] > 0) ++fn;
    }
    const double precision = tp + fp > 0 ? tp / (tp + fp) : 0.0;
    const double recall = tp + fn > 0 ? tp / (tp + fn) : 0.0;
    return precision + recall > 0 ? 2 * precision * recall / (precision + recall) : 0.0;
}

double roc_auc(std::span<const int> labels, std::span<const double> proba) {
    check_lengths(labels, proba);
    check_both_classes(labels, "roc_auc");
    const std::size_t n = labels.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return proba[a] < proba[b]; });

    // Midranks over tie groups; the positive rank sum gives U.
    double pos_rank_sum = 0.0;
    std::size_t n_pos = 0;
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo;
        while (hi + 1 < n && proba[order[hi + 1]] == proba[order[lo]]) ++hi;
        const double midrank = 0.5 * static_cast<double>(lo + hi) + 1.0;
        for (std::size_t t = lo; t <= hi; ++t) {
            if (labels[order[t]] > 0) {
                pos_rank_sum += midrank;
                ++n_pos;
            }
        }
        lo = hi + 1;
    }
    const double np = static_cast<double>(n_pos), nn = static_cast<double>(n - n_pos);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double log_loss(std::span<const int> labels, std::span<const double> proba) {
    check_lengths(labels, proba);
    constexpr double eps = 1e-15;
    double total = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double q = std::clamp(proba[i], eps, 1.0 - eps);
        total -= labels[i] > 0 ? std::log(q) : std::log(1.0 - q);
    }
    return total / static_cast<double>(labels.size());
}

}  // namespace itboost
