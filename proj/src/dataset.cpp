#include "itboost/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "itboost/error.hpp"
#include "itboost/text.hpp"

namespace itboost {

Dataset::Dataset(std::vector<double> features, std::size_t n_features, std::vector<int> labels,
                 std::vector<RowId> row_ids, std::vector<std::string> feature_names)
    : features_(std::move(features)),
      n_features_(n_features),
      labels_(std::move(labels)),
      row_ids_(std::move(row_ids)),
      feature_names_(std::move(feature_names)) {
    if (labels_.empty()) throw DataError("dataset: no rows");
    if (n_features_ == 0) throw DataError("dataset: no feature columns");
    if (features_.size() != labels_.size() * n_features_)
        throw DataError("dataset: feature matrix size does not match N x d");
    if (row_ids_.size() != labels_.size()) throw DataError("dataset: row_ids length mismatch");
    if (!feature_names_.empty() && feature_names_.size() != n_features_)
        throw DataError("dataset: feature_names length mismatch");
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (!std::isfinite(features_[i])) {
            throw DataError("dataset: non-finite feature at row " + std::to_string(i / n_features_) +
                            ", column " + std::to_string(i % n_features_));
        }
    }
    for (int y : labels_) {
        if (y != 1 && y != -1) throw DataError("dataset: labels must be -1 or +1");
    }
    std::unordered_set<RowId> seen(row_ids_.begin(), row_ids_.end());
    if (seen.size() != row_ids_.size()) throw DataError("dataset: duplicate row ids");
}

Dataset Dataset::from_rows(const std::vector<std::vector<double>>& rows, std::vector<int> labels) {
    if (rows.empty()) throw DataError("dataset: no rows");
    const std::size_t d = rows.front().size();
    std::vector<double> flat;
    flat.reserve(rows.size() * d);
    for (const auto& r : rows) {
        if (r.size() != d) throw DataError("dataset: ragged rows");
        flat.insert(flat.end(), r.begin(), r.end());
    }
    std::vector<RowId> ids(rows.size());
    std::iota(ids.begin(), ids.end(), RowId{0});
    return Dataset(std::move(flat), d, std::move(labels), std::move(ids));
}

std::size_t Dataset::count_positive() const {
    return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), 1));
}

Dataset Dataset::subset(std::span<const std::size_t> positions) const {
    std::vector<double> feats;
    feats.reserve(positions.size() * n_features_);
    std::vector<int> labels;
    std::vector<RowId> ids;
    labels.reserve(positions.size());
    ids.reserve(positions.size());
    for (std::size_t p : positions) {
        if (p >= size()) throw std::out_of_range("Dataset::subset: position out of range");
        auto r = row(p);
        feats.insert(feats.end(), r.begin(), r.end());
        labels.push_back(labels_[p]);
        ids.push_back(row_ids_[p]);
    }
    return Dataset(std::move(feats), n_features_, std::move(labels), std::move(ids), feature_names_);
}

Dataset Dataset::with_labels(std::vector<int> labels) const {
    return Dataset(features_, n_features_, std::move(labels), row_ids_, feature_names_);
}

Dataset Dataset::with_features(std::vector<double> features) const {
    return Dataset(std::move(features), n_features_, labels_, row_ids_, feature_names_);
}

Dataset load_csv(const std::filesystem::path& path, const ColumnRef& label_column,
                 const std::string& positive_label) {
    std::ifstream in(path);
    if (!in) throw DataError("load_csv: cannot open '" + path.string() + "'");

    std::string line;
    if (!std::getline(in, line)) throw DataError("load_csv: '" + path.string() + "' is empty");
    const auto header = split_fields(line);

    std::size_t label_idx = 0;
    if (const auto* name = std::get_if<std::string>(&label_column)) {
        auto it = std::find(header.begin(), header.end(), *name);
        if (it == header.end()) throw DataError("load_csv: label column '" + *name + "' not in header");
        label_idx = static_cast<std::size_t>(it - header.begin());
    } else {
        label_idx = std::get<std::size_t>(label_column);
        if (label_idx >= header.size())
            throw DataError("load_csv: label column index " + std::to_string(label_idx) +
                            " out of range (" + std::to_string(header.size()) + " columns)");
    }
    if (header.size() < 2) throw DataError("load_csv: need at least one feature column");

    std::vector<std::string> names;
    for (std::size_t j = 0; j < header.size(); ++j)
        if (j != label_idx) names.push_back(header[j]);

    std::vector<double> feats;
    std::vector<int> labels;
    std::set<std::string> raw_labels;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        const std::size_t data_row = labels.size();
        if (fields.size() != header.size()) {
            throw DataError("load_csv: line " + std::to_string(line_no) + " (row " +
                            std::to_string(data_row) + ") has " + std::to_string(fields.size()) +
                            " fields, expected " + std::to_string(header.size()));
        }
        for (std::size_t j = 0; j < fields.size(); ++j) {
            if (j == label_idx) continue;
            auto v = parse_real(fields[j]);
            if (!v || !std::isfinite(*v)) {
                throw DataError("load_csv: unparsable cell '" + fields[j] + "' at row " +
                                std::to_string(data_row) + " (line " + std::to_string(line_no) +
                                "), column '" + header[j] + "'");
            }
            feats.push_back(*v);
        }
        raw_labels.insert(fields[label_idx]);
        labels.push_back(fields[label_idx] == positive_label ? 1 : -1);
    }
    if (labels.empty()) throw DataError("load_csv: no data rows in '" + path.string() + "'");
    if (raw_labels.size() < 2) throw DataError("load_csv: fewer than 2 distinct labels");

    std::vector<RowId> ids(labels.size());
    std::iota(ids.begin(), ids.end(), RowId{0});
    const std::size_t d = names.size();
    return Dataset(std::move(feats), d, std::move(labels), std::move(ids), std::move(names));
}

void write_csv(const Dataset& data, std::ostream& out) {
    for (std::size_t j = 0; j < data.n_features(); ++j) {
        out << (data.feature_names().empty() ? "x" + std::to_string(j) : data.feature_names()[j]) << ',';
    }
    out << "label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        for (double v : data.row(i)) out << format_real(v) << ',';
        out << data.labels()[i] << '\n';
    }
}

void write_csv(const Dataset& data, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("write_csv: cannot open '" + path.string() + "'");
    write_csv(data, out);
    if (!out) throw DataError("write_csv: write failed for '" + path.string() + "'");
}

std::vector<std::size_t> FoldPlan::test_positions(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] == fold) out.push_back(i);
    return out;
}

std::vector<std::size_t> FoldPlan::train_positions(int fold) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < assignments.size(); ++i)
        if (assignments[i] != fold) out.push_back(i);
    return out;
}

FoldPlan stratified_kfold(const Dataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("stratified_kfold: k must be >= 2");
    if (static_cast<std::size_t>(k) > data.size())
        throw DataError("stratified_kfold: k exceeds the number of rows");

    std::vector<std::size_t> neg, pos;
    for (std::size_t i = 0; i < data.size(); ++i) (data.labels()[i] > 0 ? pos : neg).push_back(i);
    if (neg.size() < static_cast<std::size_t>(k) || pos.size() < static_cast<std::size_t>(k)) {
        throw DataError("stratified_kfold: a class has fewer than k=" + std::to_string(k) +
                        " members (neg=" + std::to_string(neg.size()) +
                        ", pos=" + std::to_string(pos.size()) + ")");
    }

    FoldPlan plan{k, std::vector<int>(data.size(), -1), seed};
    std::mt19937_64 rng(seed);
    std::size_t slot = 0;
    for (auto* cls : {&neg, &pos}) {
        std::shuffle(cls->begin(), cls->end(), rng);
        for (std::size_t p : *cls) plan.assignments[p] = static_cast<int>(slot++ % static_cast<std::size_t>(k));
    }
    return plan;
}

Dataset random_undersample(const Dataset& data, std::uint64_t seed) {
    std::vector<std::size_t> neg, pos;
    for (std::size_t i = 0; i < data.size(); ++i) (data.labels()[i] > 0 ? pos : neg).push_back(i);
    if (neg.empty() || pos.empty()) throw DataError("random_undersample: both classes must be present");
    if (neg.size() == pos.size()) return data;

    auto& majority = neg.size() > pos.size() ? neg : pos;
    const auto& minority = neg.size() > pos.size() ? pos : neg;
    std::mt19937_64 rng(seed);
    std::shuffle(majority.begin(), majority.end(), rng);
    majority.resize(minority.size());

    std::vector<std::size_t> keep(minority.begin(), minority.end());
    keep.insert(keep.end(), majority.begin(), majority.end());
    std::sort(keep.begin(), keep.end());
    return data.subset(keep);
}

}  // namespace itboost
