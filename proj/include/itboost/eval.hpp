#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "itboost/boosting.hpp"
#include "itboost/dataset.hpp"
#include "itboost/noise.hpp"

namespace itboost {

struct FoldMetrics {
    int fold = 0;
    double acc = 0.0;
    double f1 = 0.0;
    double auc = 0.0;
    double log_loss = 0.0;
    double wall_seconds = 0.0;
    double trust_seconds = 0.0;
    std::size_t n_train = 0;
    std::size_t n_test = 0;
    std::size_t n_corrupted = 0;
    std::uint64_t test_label_hash = 0;
};

struct Summary {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation (n - 1)
};

Summary summarize(const std::vector<double>& values);

struct MetricReport {
    std::vector<FoldMetrics> folds;
    Summary acc, f1, auc, log_loss;
    double wall_time_seconds = 0.0;
    double trust_seconds = 0.0;
    /// Bytes of residual-history storage, N_train * M per fold (enabled mode).
    std::optional<std::size_t> peak_memory_estimate;
};

enum class UndersampleOrder { None, BeforeSplit, AfterSplit };
UndersampleOrder parse_undersample(std::string_view s);

struct CvOptions {
    /// AfterSplit undersamples each training fold; BeforeSplit is the
    /// caller's job (the fold plan must already be over undersampled data).
    UndersampleOrder undersample = UndersampleOrder::None;
    bool keep_artifacts = false;
    int threads = 1;  // folds trained concurrently
};

/// What one fold produced, kept when CvOptions::keep_artifacts is set.
struct FoldArtifacts {
    Dataset train;  // as trained on (after noise)
    Dataset test;
    NoiseMask mask;
    Model model;
    RunTrace trace;
};

struct CvResult {
    MetricReport report;
    std::vector<FoldArtifacts> artifacts;
};

/// FNV-1a over (row id, label) pairs.
std::uint64_t label_hash(const Dataset& data);

/// Noise seed for fold f is noise->seed + f. Test folds stay clean.
CvResult cross_validate(const Dataset& data, const BoostConfig& config, const FoldPlan& folds,
                        const std::optional<NoiseSpec>& noise, const CvOptions& options = {});

struct SweepRow {
    NoiseKind kind = NoiseKind::Symmetric;
    double rate = 0.0;
    TrustMode mode = TrustMode::Enabled;
    MetricReport report;
};

/// One cross-validation per (rate, mode); rates must be non-decreasing and
/// valid for `kind`. Rows are ordered rate-major.
std::vector<SweepRow> noise_sweep(const Dataset& data, const BoostConfig& config, const FoldPlan& folds,
                                  NoiseKind kind, const std::vector<double>& rates,
                                  const std::vector<TrustMode>& modes, std::uint64_t seed,
                                  const CvOptions& options = {});

struct CategoryCurve {
    std::string name;  // "easy", "hard" or "noisy"
    std::size_t rows = 0;
    std::vector<double> mean_weight;  // one entry per iteration
    std::vector<double> mean_trust;
};

struct TrajectorySummary {
    std::vector<CategoryCurve> curves;
    std::vector<std::string> warnings;

    const CategoryCurve* find(const std::string& name) const;
};

/// y F_k(x) with k = max(1, M/10), the early-run margin used to rank clean rows.
std::vector<double> early_margins(const RunTrace& trace);

/// noisy = masked rows; hard / easy = clean rows in the lowest / highest
/// quartile of `margins` (at least one row each). Empty categories are
/// dropped with a warning.
TrajectorySummary trajectory_summary(const RunTrace& trace, const NoiseMask& mask,
                                     const std::vector<double>& margins);

// CSV writers; each starts with a one-line header.
void write_report_csv(const MetricReport& report, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);
void write_trajectory_csv(const TrajectorySummary& summary, std::ostream& out);

}  // namespace itboost
