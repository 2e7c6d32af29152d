#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "itboost/complexity.hpp"
#include "itboost/dataset.hpp"
#include "itboost/loss.hpp"
#include "itboost/tree.hpp"

namespace itboost {

/// enabled: w = |g| exp(-normalized C); disabled: uniform weights (classic
/// GBDT); magnitude-only: w = |g|.
enum class TrustMode { Enabled, Disabled, MagnitudeOnly };

/// recompute: LZ76 over each full history every iteration; incremental:
/// online parser, identical outputs.
enum class LzSchedule { Recompute, Incremental };

std::string_view to_string(TrustMode m);
TrustMode parse_trust_mode(std::string_view s);
std::string_view to_string(LzSchedule s);
LzSchedule parse_schedule(std::string_view s);

struct BoostConfig {
    int iterations = 100;
    double learning_rate = 0.1;
    int max_depth = 3;
    int min_samples_leaf = 1;
    Loss loss = Loss::Logistic;
    Encoding encoding = Encoding::BinarySign;
    TrustMode trust = TrustMode::Enabled;
    LzSchedule schedule = LzSchedule::Recompute;
    std::uint64_t seed = 42;
    int threads = 1;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
    TreeParams tree_params() const { return {max_depth, min_samples_leaf}; }
};

class Model {
public:
    Model() = default;
    Model(double init_score, double learning_rate, Loss loss, std::size_t n_features,
          std::vector<RegressionTree> trees);

    /// F0 + nu * sum of tree outputs, accumulated tree by tree in training
    /// order (bitwise equal to the training-time scores).
    double predict_score(std::span<const double> x) const;
    /// Logistic link on the score clamped to [-50, 50].
    double predict_proba(std::span<const double> x) const;
    /// +1 iff predict_proba >= 0.5.
    int predict_label(std::span<const double> x) const;

    std::vector<double> predict_proba(const Dataset& data) const;

    double init_score() const { return init_score_; }
    double learning_rate() const { return learning_rate_; }
    Loss loss() const { return loss_; }
    std::size_t n_features() const { return n_features_; }
    const std::vector<RegressionTree>& trees() const { return trees_; }

    friend bool operator==(const Model&, const Model&) = default;

private:
    double init_score_ = 0.0;
    double learning_rate_ = 0.1;
    Loss loss_ = Loss::Logistic;
    std::size_t n_features_ = 0;
    std::vector<RegressionTree> trees_;
};

double score_to_proba(double score);

struct IterationSnapshot {
    std::size_t iteration = 0;  // 1-based
    std::vector<double> scores;     // F_{m-1}(x_i), the scores g was computed at
    std::vector<double> gradients;  // g_i^{(m)}
    TrustState trust;               // disabled mode: tau = 1, w = 1
    double training_loss = 0.0;     // mean loss at F_{m-1}
    double weighted_sse_before = 0.0;  // sum w g^2
    double weighted_sse_after = 0.0;   // sum w (g - nu h)^2
    double trust_seconds = 0.0;        // wall time of encoding + LZ + normalisation
};

/// Per-iteration record of a training run, rows aligned with the training
/// dataset and keyed by row id.
struct RunTrace {
    std::vector<RowId> row_ids;
    std::vector<int> labels;
    std::vector<IterationSnapshot> iterations;
    std::vector<double> final_scores;  // F_M(x_i)

    double total_trust_seconds() const;
};

struct TrainResult {
    Model model;
    RunTrace trace;
};

TrainResult train(const Dataset& data, const BoostConfig& config);

/// Trust step for one iteration given the already-appended complexities.
TrustState compute_trust_state(std::size_t iteration, std::span<const double> gradients,
                               std::vector<std::size_t> raw_complexity);

}  // namespace itboost
