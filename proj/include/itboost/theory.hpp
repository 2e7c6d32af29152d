#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "itboost/boosting.hpp"
#include "itboost/noise.hpp"

namespace itboost {

enum class SampleGroup { Clean, Noisy };

/// Complexity values (normalized or raw) observed for one group of samples.
struct ComplexitySample {
    std::vector<double> values;
    SampleGroup group = SampleGroup::Clean;
};

/// Checks of the trust term tau = E[exp(-C)] against its mean-based bounds,
/// evaluated on the empirical distribution of the sample:
///   exp(-mu) <= tau <= exp(-mu + R^2/8),   and informationally
///   tau <= exp(-mu + s^2/2) with the plug-in variance s^2.
struct BoundReport {
    std::size_t n = 0;
    double mean = 0.0;
    double range = 0.0;
    double variance = 0.0;  // population variance of the sample
    double empirical_tau = 0.0;
    double jensen_lower = 0.0;
    double hoeffding_upper = 0.0;
    double subgaussian_upper = 0.0;
    bool jensen_ok = false;
    bool hoeffding_ok = false;
    bool subgaussian_ok = false;  // reported only, never a failure

    bool satisfied() const { return jensen_ok && hoeffding_ok; }
};

inline constexpr double kBoundTolerance = 1e-12;

BoundReport trust_bound_check(const ComplexitySample& sample);

/// tau_noisy / tau_clean against exp(-gap + corr), corr = R_noisy^2 / 8.
struct RatioReport {
    BoundReport clean;
    BoundReport noisy;
    double ratio = 0.0;
    double gap = 0.0;   // mean_noisy - mean_clean
    double corr = 0.0;
    double bound = 0.0;
    bool lemma_conditions_hold = false;
    bool ratio_ok = false;
    bool gap_exceeds_correction = false;  // noisy samples are exponentially down-weighted
};

RatioReport ratio_bound_check(const ComplexitySample& clean, const ComplexitySample& noisy);

/// n >= log(2/delta) / (2 eps^2), rounded up.
std::size_t required_sample_size(double eps, double delta);

/// Hoeffding radius sqrt(log(2/delta) / (2n)).
double hoeffding_radius(std::size_t n, double delta);

struct SeparabilityReport {
    std::size_t iteration = 0;
    std::size_t n_clean = 0;
    std::size_t n_noisy = 0;
    double mean_clean = 0.0;
    double mean_noisy = 0.0;
    double gap = 0.0;
    double radius_clean = 0.0;
    double radius_noisy = 0.0;
    std::size_t n_required = 0;
    double eps = 0.0;
    double delta = 0.0;
    bool separable = false;  // gap > 2 eps and both groups >= n_required
};

/// Splits the normalized complexities recorded at `iteration` (1-based) by
/// the mask and applies the finite-sample separability criterion.
SeparabilityReport separability_report(const RunTrace& trace, std::size_t iteration, const NoiseMask& mask,
                                       double eps, double delta);

/// Normalized complexities at `iteration`, split into clean and noisy groups.
std::pair<ComplexitySample, ComplexitySample> split_complexities(const RunTrace& trace, std::size_t iteration,
                                                                 const NoiseMask& mask);

/// Key-value text rendering for reports.
std::string to_text(const BoundReport& r, const std::string& prefix = "");
std::string to_text(const RatioReport& r);
std::string to_text(const SeparabilityReport& r);

}  // namespace itboost
