#include "itboost/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "itboost/error.hpp"
#include "itboost/text.hpp"

namespace itboost {

std::string_view to_string(NoiseKind k) {
    switch (k) {
        case NoiseKind::Symmetric: return "symmetric";
        case NoiseKind::Asymmetric: return "asymmetric";
        case NoiseKind::Feature: return "feature";
    }
    return "?";
}

NoiseKind parse_noise_kind(std::string_view s) {
    if (s == "symmetric") return NoiseKind::Symmetric;
    if (s == "asymmetric") return NoiseKind::Asymmetric;
    if (s == "feature") return NoiseKind::Feature;
    throw std::invalid_argument("unknown noise kind '" + std::string(s) + "'");
}

void NoiseSpec::validate() const {
    if (kind == NoiseKind::Feature) {
        if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("noise: feature rate must be in [0, 1]");
    } else if (!(rate >= 0.0 && rate <= 0.5)) {
        throw std::invalid_argument("noise: label rate must be in [0, 0.5]");
    }
}

bool NoiseMask::contains(RowId id) const { return std::binary_search(rows.begin(), rows.end(), id); }

namespace {

NoisyDataset flip_labels(const Dataset& data, NoiseSpec spec, bool positives_only) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto labels = data.labels();
    NoiseMask mask{{}, spec};
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const bool eligible = !positives_only || labels[i] > 0;
        // One draw per row regardless of eligibility keeps masks comparable across kinds.
        const bool flip = u(rng) < spec.rate;
        if (eligible && flip) {
            labels[i] = -labels[i];
            mask.rows.push_back(data.row_ids()[i]);
        }
    }
    std::sort(mask.rows.begin(), mask.rows.end());
    return {data.with_labels(std::move(labels)), std::move(mask)};
}

}  // namespace

NoisyDataset inject_symmetric(const Dataset& data, double p, std::uint64_t seed) {
    return flip_labels(data, {NoiseKind::Symmetric, p, seed}, false);
}

NoisyDataset inject_asymmetric(const Dataset& data, double p, std::uint64_t seed) {
    NoiseSpec{NoiseKind::Asymmetric, p, seed}.validate();
    if (data.count_positive() == 0) throw DataError("inject_asymmetric: no positive rows to flip");
    return flip_labels(data, {NoiseKind::Asymmetric, p, seed}, true);
}

NoisyDataset inject_feature_noise(const Dataset& data, double p, std::uint64_t seed) {
    const NoiseSpec spec{NoiseKind::Feature, p, seed};
    spec.validate();
    const std::size_t n = data.size(), d = data.n_features();

    std::vector<double> sd(d, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += data.at(i, j);
        mean /= static_cast<double>(n);
        double ss = 0.0;
        for (std::size_t i = 0; i < n; ++i) ss += (data.at(i, j) - mean) * (data.at(i, j) - mean);
        sd[j] = std::sqrt(ss / static_cast<double>(n));
    }

    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto count = static_cast<std::size_t>(std::floor(p * static_cast<double>(n)));
    order.resize(count);
    std::sort(order.begin(), order.end());

    auto feats = data.features();
    std::normal_distribution<double> normal(0.0, 1.0);
    NoiseMask mask{{}, spec};
    for (std::size_t i : order) {
        for (std::size_t j = 0; j < d; ++j) {
            const double z = normal(rng);
            if (sd[j] > 0.0) feats[i * d + j] += sd[j] * z;
        }
        mask.rows.push_back(data.row_ids()[i]);
    }
    std::sort(mask.rows.begin(), mask.rows.end());
    return {data.with_features(std::move(feats)), std::move(mask)};
}

NoisyDataset inject(const Dataset& data, const NoiseSpec& spec) {
    switch (spec.kind) {
        case NoiseKind::Symmetric: return inject_symmetric(data, spec.rate, spec.seed);
        case NoiseKind::Asymmetric: return inject_asymmetric(data, spec.rate, spec.seed);
        case NoiseKind::Feature: return inject_feature_noise(data, spec.rate, spec.seed);
    }
    throw std::invalid_argument("inject: unknown kind");
}

Dataset apply_label_mask(const Dataset& clean, const NoiseMask& mask) {
    if (mask.spec.kind == NoiseKind::Feature) throw std::invalid_argument("apply_label_mask: feature-noise mask");
    auto labels = clean.labels();
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (mask.contains(clean.row_ids()[i])) {
            labels[i] = -labels[i];
            ++hits;
        }
    }
    if (hits != mask.size()) throw DataError("apply_label_mask: mask references rows absent from the dataset");
    return clean.with_labels(std::move(labels));
}

void write_mask_csv(const NoiseMask& mask, std::ostream& out) {
    out << "row_id,kind\n";
    for (RowId id : mask.rows) out << id << ',' << to_string(mask.spec.kind) << '\n';
}

}  // namespace itboost

namespace itboost {

NoiseMask read_mask_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("read_mask_csv: cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "row_id,kind") throw DataError("read_mask_csv: bad header");
    NoiseMask mask;
    bool kind_seen = false;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        const auto fields = split_fields(line);
        if (fields.size() != 2) throw DataError("read_mask_csv: malformed line '" + line + "'");
        const auto id = parse_real(fields[0]);
        if (!id) throw DataError("read_mask_csv: bad row id '" + fields[0] + "'");
        const auto kind = parse_noise_kind(fields[1]);
        if (kind_seen && kind != mask.spec.kind) throw DataError("read_mask_csv: mixed noise kinds");
        mask.spec.kind = kind;
        kind_seen = true;
        mask.rows.push_back(static_cast<RowId>(*id));
    }
    std::sort(mask.rows.begin(), mask.rows.end());
    return mask;
}

}  // namespace itboost
