#include "itboost/boosting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "itboost/parallel.hpp"

namespace itboost {

std::string_view to_string(TrustMode m) {
    switch (m) {
        case TrustMode::Enabled: return "enabled";
        case TrustMode::Disabled: return "disabled";
        case TrustMode::MagnitudeOnly: return "magnitude-only";
    }
    return "?";
}

TrustMode parse_trust_mode(std::string_view s) {
    if (s == "enabled") return TrustMode::Enabled;
    if (s == "disabled") return TrustMode::Disabled;
    if (s == "magnitude-only" || s == "magnitude") return TrustMode::MagnitudeOnly;
    throw std::invalid_argument("unknown trust mode '" + std::string(s) + "'");
}

std::string_view to_string(LzSchedule s) { return s == LzSchedule::Recompute ? "recompute" : "incremental"; }

LzSchedule parse_schedule(std::string_view s) {
    if (s == "recompute") return LzSchedule::Recompute;
    if (s == "incremental") return LzSchedule::Incremental;
    throw std::invalid_argument("unknown LZ schedule '" + std::string(s) + "'");
}

void BoostConfig::validate() const {
    if (iterations < 1) throw std::invalid_argument("config: iterations must be >= 1");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0))
        throw std::invalid_argument("config: learning_rate must be in (0, 1]");
    if (max_depth < 1) throw std::invalid_argument("config: max_depth must be >= 1");
    if (min_samples_leaf < 1) throw std::invalid_argument("config: min_samples_leaf must be >= 1");
    if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
}

Model::Model(double init_score, double learning_rate, Loss loss, std::size_t n_features,
             std::vector<RegressionTree> trees)
    : init_score_(init_score),
      learning_rate_(learning_rate),
      loss_(loss),
      n_features_(n_features),
      trees_(std::move(trees)) {}

double Model::predict_score(std::span<const double> x) const {
    if (x.size() != n_features_)
        throw std::invalid_argument("predict: expected " + std::to_string(n_features_) + " features, got " +
                                    std::to_string(x.size()));
    double score = init_score_;
    for (const auto& t : trees_) score += learning_rate_ * t.predict(x);
    return score;
}

double score_to_proba(double score) { return 1.0 / (1.0 + std::exp(-std::clamp(score, -50.0, 50.0))); }

double Model::predict_proba(std::span<const double> x) const { return score_to_proba(predict_score(x)); }

int Model::predict_label(std::span<const double> x) const { return predict_proba(x) >= 0.5 ? 1 : -1; }

std::vector<double> Model::predict_proba(const Dataset& data) const {
    std::vector<double> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = predict_proba(data.row(i));
    return out;
}

double RunTrace::total_trust_seconds() const {
    double s = 0.0;
    for (const auto& it : iterations) s += it.trust_seconds;
    return s;
}

TrustState compute_trust_state(std::size_t iteration, std::span<const double> gradients,
                               std::vector<std::size_t> raw_complexity) {
    TrustState st;
    st.iteration = iteration;
    st.normalized = normalize_complexities(raw_complexity);
    auto tw = trust_weights(gradients, st.normalized);
    st.raw_complexity = std::move(raw_complexity);
    st.trust = std::move(tw.trust);
    st.weights = std::move(tw.weights);
    return st;
}

namespace {

// Residual histories for every sample under one LZ schedule.
class HistoryBank {
public:
    HistoryBank(std::size_t n, LzSchedule schedule) : schedule_(schedule) {
        if (schedule == LzSchedule::Recompute) {
            sequences_.resize(n);
        } else {
            parsers_.resize(n);
        }
    }

    std::vector<std::size_t> append_and_measure(std::span<const Symbol> symbols, int threads) {
        std::vector<std::size_t> out(symbols.size());
        parallel_for(symbols.size(), threads, [&](std::size_t i) {
            if (schedule_ == LzSchedule::Recompute) {
                sequences_[i].push_back(symbols[i]);
                out[i] = lz76_complexity(sequences_[i]);
            } else {
                out[i] = parsers_[i].append(symbols[i]);
            }
        });
        return out;
    }

private:
    LzSchedule schedule_;
    std::vector<std::vector<Symbol>> sequences_;
    std::vector<IncrementalLz76> parsers_;
};

}  // namespace

TrainResult train(const Dataset& data, const BoostConfig& config) {
    config.validate();
    const std::size_t n = data.size();
    const auto& y = data.labels();
    const MatrixView x = MatrixView::of(data);
    const double f0 = init_score(y, config.loss);

    std::vector<double> scores(n, f0);
    std::vector<double> previous;
    HistoryBank histories(config.trust == TrustMode::Enabled ? n : 0, config.schedule);

    RunTrace trace;
    trace.row_ids = data.row_ids();
    trace.labels = y;
    trace.iterations.reserve(static_cast<std::size_t>(config.iterations));
    std::vector<RegressionTree> trees;
    trees.reserve(static_cast<std::size_t>(config.iterations));

    using clock = std::chrono::steady_clock;
    for (int m = 1; m <= config.iterations; ++m) {
        IterationSnapshot snap;
        snap.iteration = static_cast<std::size_t>(m);
        snap.scores = scores;

        // Step 1: pseudo-residuals at F_{m-1}.
        std::vector<double> g(n);
        double loss_sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            g[i] = pseudo_residual(config.loss, y[i], scores[i]);
            loss_sum += loss_value(config.loss, y[i], scores[i]);
        }
        snap.training_loss = loss_sum / static_cast<double>(n);

        // Steps 2-3: history update and trust weights.
        switch (config.trust) {
            case TrustMode::Enabled: {
                const auto t0 = clock::now();
                const auto symbols = encode_gradients(g, previous, config.encoding);
                auto raw = histories.append_and_measure(symbols, config.threads);
                snap.trust = compute_trust_state(snap.iteration, g, std::move(raw));
                snap.trust_seconds = std::chrono::duration<double>(clock::now() - t0).count();
                break;
            }
            case TrustMode::MagnitudeOnly:
            case TrustMode::Disabled: {
                snap.trust.iteration = snap.iteration;
                snap.trust.raw_complexity.assign(n, 0);
                snap.trust.normalized.assign(n, 0.0);
                snap.trust.trust.assign(n, 1.0);
                snap.trust.weights.resize(n);
                for (std::size_t i = 0; i < n; ++i)
                    snap.trust.weights[i] = config.trust == TrustMode::Disabled ? 1.0 : std::abs(g[i]);
                break;
            }
        }
        const auto& w = snap.trust.weights;

        // Step 4: weighted weak learner. A perfect fit leaves no weight, in
        // which case the zero tree is the minimiser.
        const double total_w = std::accumulate(w.begin(), w.end(), 0.0);
        RegressionTree tree = total_w > 0.0 ? fit_tree_weighted(x, g, w, config.tree_params())
                                            : RegressionTree::constant(0.0);

        double before = 0.0, after = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double step = config.learning_rate * tree.predict(data.row(i));
            before += w[i] * g[i] * g[i];
            after += w[i] * (g[i] - step) * (g[i] - step);
            scores[i] += step;
        }
        snap.weighted_sse_before = before;
        snap.weighted_sse_after = after;
        snap.gradients = g;
        previous = std::move(g);
        trees.push_back(std::move(tree));
        trace.iterations.push_back(std::move(snap));
    }
    trace.final_scores = scores;
    return {Model(f0, config.learning_rate, config.loss, data.n_features(), std::move(trees)), std::move(trace)};
}

}  // namespace itboost
