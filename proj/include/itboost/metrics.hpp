#pragma once

#include <span>

namespace itboost {

// Labels are in {-1,+1}; probabilities are P(y = +1).

/// Threshold 0.5, ties predicted positive.
double accuracy(std::span<const int> labels, std::span<const double> proba);

/// F1 of the positive class at threshold 0.5; 0 when precision + recall = 0.
double f1_score(std::span<const int> labels, std::span<const double> proba);

/// Mann-Whitney statistic with half credit for tied probabilities.
double roc_auc(std::span<const int> labels, std::span<const double> proba);

/// Mean binary cross-entropy with probabilities clipped to [1e-15, 1 - 1e-15].
double log_loss(std::span<const int> labels, std::span<const double> proba);

}  // namespace itboost
