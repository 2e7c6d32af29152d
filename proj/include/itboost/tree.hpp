#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "itboost/dataset.hpp"

namespace itboost {

/// Non-owning row-major matrix.
struct MatrixView {
    const double* data = nullptr;
    std::size_t rows = 0;
    std::size_t cols = 0;

    std::span<const double> row(std::size_t i) const { return {data + i * cols, cols}; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static MatrixView of(const Dataset& d) { return {d.features().data(), d.size(), d.n_features()}; }
};

struct TreeParams {
    int max_depth = 3;
    int min_samples_leaf = 1;
};

/// Binary regression tree stored in preorder. Internal nodes send x left
/// iff x[feature] <= threshold.
class RegressionTree {
public:
    struct Node {
        int feature = -1;  // -1 marks a leaf
        double threshold = 0.0;
        double value = 0.0;
        int left = -1;
        int right = -1;

        bool is_leaf() const { return feature < 0; }
        bool operator==(const Node&) const = default;
    };

    RegressionTree() = default;
    explicit RegressionTree(std::vector<Node> nodes);

    /// Single leaf.
    static RegressionTree constant(double value);

    double predict(std::span<const double> x) const;

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t leaf_count() const;
    int depth() const;
    double max_abs_leaf() const;

    /// Preorder tokens: "S <feature> <threshold>" for splits, "L <value>" for leaves.
    std::string to_text() const;
    static RegressionTree from_text(std::string_view text);

    friend bool operator==(const RegressionTree&, const RegressionTree&) = default;

private:
    std::vector<Node> nodes_;
};

/// Greedy top-down CART minimising sum_i w_i (g_i - h(x_i))^2.
///
/// Split candidates are midpoints between consecutive distinct values of the
/// positive-weight rows at a node. The best split minimises the children's
/// weighted SSE; ties go to the lowest feature index, then lowest threshold.
/// A node becomes a leaf at max_depth, when it holds fewer than
/// 2*min_samples_leaf positive-weight rows, when its weighted variance is
/// zero, or when no candidate lowers its SSE. Leaves hold the weighted mean
/// of g. Zero-weight rows are routed but never affect the fit.
///
/// Sums over a node run in ascending row order; split sums accumulate the
/// left side in sorted order and take the right side as node total minus left.
RegressionTree fit_tree_weighted(MatrixView features, std::span<const double> targets,
                                 std::span<const double> weights, const TreeParams& params);

}  // namespace itboost
