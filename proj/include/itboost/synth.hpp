#pragma once

#include <cstddef>
#include <cstdint>

#include "itboost/dataset.hpp"

namespace itboost {

struct SynthSpec {
    std::size_t n = 400;
    std::size_t informative = 10;
    std::size_t distractors = 0;
    /// Euclidean distance between the two class means (unit covariance), so
    /// the Bayes error is Phi(-sep / 2).
    double sep = 4.0;
    std::uint64_t seed = 42;
};

/// Two unit-covariance Gaussians with means +/- (sep/2) u, u the normalised
/// all-ones direction over the informative columns, plus pure-noise
/// distractor columns. Exactly floor(n/2) positives, rows in seeded order.
Dataset make_two_gaussians(const SynthSpec& spec);

}  // namespace itboost
