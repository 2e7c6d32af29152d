#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace itboost {

using RowId = std::int64_t;

/// Binary classification data: an N x d row-major feature matrix, labels in
/// {-1,+1} and a stable identity per row. Immutable once constructed.
class Dataset {
public:
    Dataset() = default;

    /// Validates every invariant: N >= 1, d >= 1, finite features,
    /// labels in {-1,+1}, unique row ids. Throws DataError otherwise.
    Dataset(std::vector<double> features, std::size_t n_features, std::vector<int> labels,
            std::vector<RowId> row_ids, std::vector<std::string> feature_names = {});

    /// Row ids default to 0..N-1.
    static Dataset from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> labels);

    std::size_t size() const { return labels_.size(); }
    std::size_t n_features() const { return n_features_; }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * n_features_, n_features_};
    }
    double at(std::size_t i, std::size_t j) const { return features_[i * n_features_ + j]; }

    const std::vector<double>& features() const { return features_; }
    const std::vector<int>& labels() const { return labels_; }
    const std::vector<RowId>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }

    std::size_t count_positive() const;

    /// Rows at the given positions, in the given order, ids preserved.
    Dataset subset(std::span<const std::size_t> positions) const;

    /// Same rows with replaced labels / features (used by the noise injectors).
    Dataset with_labels(std::vector<int> labels) const;
    Dataset with_features(std::vector<double> features) const;

private:
    std::vector<double> features_;
    std::size_t n_features_ = 0;
    std::vector<int> labels_;
    std::vector<RowId> row_ids_;
    std::vector<std::string> feature_names_;
};

/// Label column selector: header name or zero-based index.
using ColumnRef = std::variant<std::string, std::size_t>;

/// Parses a header-first comma-separated file. The label column maps to +1
/// iff its raw token equals `positive_label`; every other cell must be a
/// finite decimal real.
Dataset load_csv(const std::filesystem::path& path, const ColumnRef& label_column,
                 const std::string& positive_label);

/// Writes features with shortest round-trip formatting and the label as
/// the last column named `label`, with values 1 / -1.
void write_csv(const Dataset& data, std::ostream& out);
void write_csv(const Dataset& data, const std::filesystem::path& path);

struct FoldPlan {
    int k = 0;
    std::vector<int> assignments;
    std::uint64_t seed = 0;

    std::vector<std::size_t> test_positions(int fold) const;
    std::vector<std::size_t> train_positions(int fold) const;
};

/// Seeded shuffle within each class, then round-robin into folds.
FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed);

/// Subsamples the majority class without replacement down to the minority
/// size. Returned rows keep their original relative order.
Dataset random_undersample(const Dataset& data, std::uint64_t seed);

}  // namespace itboost
