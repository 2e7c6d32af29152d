#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "itboost/boosting.hpp"

namespace itboost {

// Model text format, version 1:
//
//   itboost-model 1
//   config iterations=.. learning_rate=.. max_depth=.. min_samples_leaf=.. loss=.. encoding=.. trust=.. schedule=.. seed=..
//   model n_features=<d> init_score=<F0> learning_rate=<nu> loss=<tag> trees=<M>
//   tree <preorder tokens>      (one line per tree, see RegressionTree::to_text)
//
// Reals use shortest round-trip formatting, so save/load is bit-exact.

inline constexpr int kModelFormatVersion = 1;

std::string model_to_text(const Model& model, const BoostConfig& config);

struct LoadedModel {
    Model model;
    BoostConfig config;
};

LoadedModel model_from_text(std::string_view text);

void save_model(const Model& model, const BoostConfig& config, const std::filesystem::path& path);
LoadedModel load_model(const std::filesystem::path& path);

/// Space-separated key=value pairs covering every BoostConfig field.
std::string config_to_line(const BoostConfig& config);

/// Sets one BoostConfig field from its text form. Unknown keys and bad
/// values throw std::invalid_argument.
void apply_config_entry(BoostConfig& config, std::string_view key, std::string_view value);

/// Flat "key = value" lines; '#' starts a comment; blank lines ignored.
BoostConfig parse_config_text(std::string_view text, BoostConfig base = {});
BoostConfig load_config(const std::filesystem::path& path, BoostConfig base = {});

/// CSV "iteration,row_id,raw_C,normalized_C,tau,weight", one row per
/// (iteration, sample).
void write_trace_csv(const RunTrace& trace, std::ostream& out);

/// Rebuilds the trust part of a trace from write_trace_csv output. Scores
/// and gradients are not part of the CSV and stay empty.
RunTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace itboost
