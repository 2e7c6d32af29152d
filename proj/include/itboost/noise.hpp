#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "itboost/dataset.hpp"

namespace itboost {

enum class NoiseKind { Symmetric, Asymmetric, Feature };

std::string_view to_string(NoiseKind k);
NoiseKind parse_noise_kind(std::string_view s);

struct NoiseSpec {
    NoiseKind kind = NoiseKind::Symmetric;
    double rate = 0.0;
    std::uint64_t seed = 42;

    /// Label noise needs rate in [0, 0.5]; feature noise [0, 1].
    void validate() const;
};

/// Rows touched by an injection, sorted by row id.
struct NoiseMask {
    std::vector<RowId> rows;
    NoiseSpec spec;

    bool contains(RowId id) const;
    std::size_t size() const { return rows.size(); }
};

struct NoisyDataset {
    Dataset data;
    NoiseMask mask;
};

/// Flips each label independently with probability p.
NoisyDataset inject_symmetric(const Dataset& data, double p, std::uint64_t seed);

/// Flips positive labels to -1, each with probability p; negatives untouched.
NoisyDataset inject_asymmetric(const Dataset& data, double p, std::uint64_t seed);

/// Picks exactly floor(p N) rows and adds N(0, sd_j^2) to every feature j,
/// sd_j being the population standard deviation of column j in `data`.
NoisyDataset inject_feature_noise(const Dataset& data, double p, std::uint64_t seed);

NoisyDataset inject(const Dataset& data, const NoiseSpec& spec);

/// Re-applies a label mask to clean data: every masked row's label flips.
Dataset apply_label_mask(const Dataset& clean, const NoiseMask& mask);

/// CSV with header "row_id,kind".
void write_mask_csv(const NoiseMask& mask, std::ostream& out);
NoiseMask read_mask_csv(const std::filesystem::path& path);

}  // namespace itboost
