#include "itboost/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "itboost/text.hpp"

namespace itboost {

RegressionTree::RegressionTree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw std::invalid_argument("RegressionTree: no nodes");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& n = nodes_[i];
        if (n.is_leaf()) continue;
        const auto size = static_cast<int>(nodes_.size());
        if (n.left <= static_cast<int>(i) || n.right <= static_cast<int>(i) || n.left >= size || n.right >= size)
            throw std::invalid_argument("RegressionTree: malformed child index");
    }
}

RegressionTree RegressionTree::constant(double value) {
    Node leaf;
    leaf.value = value;
    return RegressionTree({leaf});
}

double RegressionTree::predict(std::span<const double> x) const {
    std::size_t i = 0;
    while (!nodes_[i].is_leaf()) {
        const auto& n = nodes_[i];
        i = static_cast<std::size_t>(x[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right);
    }
    return nodes_[i].value;
}

std::size_t RegressionTree::leaf_count() const {
    return static_cast<std::size_t>(std::count_if(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.is_leaf(); }));
}

int RegressionTree::depth() const {
    std::vector<int> d(nodes_.size(), 0);
    int best = 0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        best = std::max(best, d[i]);
        if (!nodes_[i].is_leaf()) {
            d[static_cast<std::size_t>(nodes_[i].left)] = d[i] + 1;
            d[static_cast<std::size_t>(nodes_[i].right)] = d[i] + 1;
        }
    }
    return best;
}

double RegressionTree::max_abs_leaf() const {
    double m = 0.0;
    for (const auto& n : nodes_)
        if (n.is_leaf()) m = std::max(m, std::abs(n.value));
    return m;
}

std::string RegressionTree::to_text() const {
    std::string out;
    for (const auto& n : nodes_) {
        if (!out.empty()) out.push_back(' ');
        if (n.is_leaf()) {
            out += "L " + format_real(n.value);
        } else {
            out += "S " + std::to_string(n.feature) + ' ' + format_real(n.threshold);
        }
    }
    return out;
}

namespace {

int parse_preorder(std::istringstream& in, std::vector<RegressionTree::Node>& nodes) {
    std::string kind;
    if (!(in >> kind)) throw std::invalid_argument("RegressionTree::from_text: truncated tree");
    const int idx = static_cast<int>(nodes.size());
    nodes.emplace_back();
    std::string tok;
    if (kind == "L") {
        in >> tok;
        auto v = parse_real(tok);
        if (!v) throw std::invalid_argument("RegressionTree::from_text: bad leaf value '" + tok + "'");
        nodes[static_cast<std::size_t>(idx)].value = *v;
        return idx;
    }
    if (kind != "S") throw std::invalid_argument("RegressionTree::from_text: bad node kind '" + kind + "'");
    int feature = -1;
    in >> feature >> tok;
    auto thr = parse_real(tok);
    if (!in || feature < 0 || !thr) throw std::invalid_argument("RegressionTree::from_text: bad split node");
    nodes[static_cast<std::size_t>(idx)].feature = feature;
    nodes[static_cast<std::size_t>(idx)].threshold = *thr;
    const int left = parse_preorder(in, nodes);
    const int right = parse_preorder(in, nodes);
    nodes[static_cast<std::size_t>(idx)].left = left;
    nodes[static_cast<std::size_t>(idx)].right = right;
    return idx;
}

struct Builder {
    MatrixView x;
    std::span<const double> g;
    std::span<const double> w;
    TreeParams params;
    std::vector<RegressionTree::Node> nodes;
    std::vector<std::size_t> order;  // scratch

    int build(const std::vector<std::size_t>& members, int depth) {
        double sum_w = 0.0, sum_wg = 0.0, sum_wgg = 0.0;
        std::vector<std::size_t> active;
        for (std::size_t i : members) {
            if (w[i] > 0.0) {
                active.push_back(i);
                sum_w += w[i];
                sum_wg += w[i] * g[i];
                sum_wgg += w[i] * g[i] * g[i];
            }
        }
        const int idx = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes.back().value = sum_wg / sum_w;

        const double node_sse = std::max(0.0, sum_wgg - sum_wg * sum_wg / sum_w);
        const auto n_active = active.size();
        const auto min_leaf = static_cast<std::size_t>(params.min_samples_leaf);
        if (depth >= params.max_depth || n_active < 2 * min_leaf || node_sse <= 1e-14 * sum_wgg) return idx;

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_sse = node_sse;
        for (std::size_t f = 0; f < x.cols; ++f) {
            order = active;
            std::stable_sort(order.begin(), order.end(),
                             [&](std::size_t a, std::size_t b) { return x.at(a, f) < x.at(b, f); });
            double lw = 0.0, lwg = 0.0, lwgg = 0.0;
            for (std::size_t t = 0; t + 1 < n_active; ++t) {
                const std::size_t i = order[t];
                lw += w[i];
                lwg += w[i] * g[i];
                lwgg += w[i] * g[i] * g[i];
                const double lo = x.at(i, f);
                const double hi = x.at(order[t + 1], f);
                if (!(lo < hi) || t + 1 < min_leaf || n_active - t - 1 < min_leaf) continue;
                const double rw = sum_w - lw, rwg = sum_wg - lwg, rwgg = sum_wgg - lwgg;
                if (!(rw > 0.0)) continue;
                const double sse = std::max(0.0, lwgg - lwg * lwg / lw) + std::max(0.0, rwgg - rwg * rwg / rw);
                if (sse < best_sse) {
                    best_sse = sse;
                    best_feature = static_cast<int>(f);
                    double mid = 0.5 * (lo + hi);
                    if (!(mid < hi)) mid = lo;
                    best_threshold = mid;
                }
            }
        }
        if (best_feature < 0) return idx;

        std::vector<std::size_t> left, right;
        for (std::size_t i : members)
            (x.at(i, static_cast<std::size_t>(best_feature)) <= best_threshold ? left : right).push_back(i);

        nodes[static_cast<std::size_t>(idx)].feature = best_feature;
        nodes[static_cast<std::size_t>(idx)].threshold = best_threshold;
        nodes[static_cast<std::size_t>(idx)].value = 0.0;  // only leaves carry values
        const int l = build(left, depth + 1);
        const int r = build(right, depth + 1);
        nodes[static_cast<std::size_t>(idx)].left = l;
        nodes[static_cast<std::size_t>(idx)].right = r;
        return idx;
    }
};

}  // namespace

RegressionTree RegressionTree::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<Node> nodes;
    parse_preorder(in, nodes);
    std::string extra;
    if (in >> extra) throw std::invalid_argument("RegressionTree::from_text: trailing tokens");
    return RegressionTree(std::move(nodes));
}

RegressionTree fit_tree_weighted(MatrixView features, std::span<const double> targets,
                                 std::span<const double> weights, const TreeParams& params) {
    if (targets.size() != features.rows || weights.size() != features.rows)
        throw std::invalid_argument("fit_tree_weighted: length mismatch");
    if (features.rows == 0) throw std::invalid_argument("fit_tree_weighted: no rows");
    if (params.max_depth < 1 || params.min_samples_leaf < 1)
        throw std::invalid_argument("fit_tree_weighted: max_depth and min_samples_leaf must be >= 1");
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            throw std::invalid_argument("fit_tree_weighted: weights must be finite and nonnegative");
        if (!std::isfinite(targets[i])) throw std::invalid_argument("fit_tree_weighted: non-finite target");
        total += weights[i];
    }
    if (!(total > 0.0)) throw std::invalid_argument("fit_tree_weighted: all weights are zero");

    Builder b{features, targets, weights, params, {}, {}};
    std::vector<std::size_t> all(features.rows);
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    b.build(all, 0);
    return RegressionTree(std::move(b.nodes));
}

}  // namespace itboost
