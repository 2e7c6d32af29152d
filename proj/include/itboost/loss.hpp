#pragma once

#include <span>
#include <string_view>

namespace itboost {

enum class Loss { Logistic, Squared };

std::string_view to_string(Loss loss);
Loss parse_loss(std::string_view s);

/// Negative gradient of log(1 + exp(-yF)) with respect to F: y / (1 + exp(yF)).
double logistic_gradient(int y, double score);

/// Negative gradient of (y - F)^2 / 2: y - F.
double squared_gradient(int y, double score);

double pseudo_residual(Loss loss, int y, double score);

/// log(1 + exp(-yF)) or (y - F)^2 / 2.
double loss_value(Loss loss, int y, double score);

/// Constant minimizing the summed loss: log-odds of the positive rate for
/// logistic, the label mean for squared. Logistic needs both classes.
double init_score(std::span<const int> labels, Loss loss);

}  // namespace itboost
