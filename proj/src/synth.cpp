#include "itboost/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace itboost {

Dataset make_two_gaussians(const SynthSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("synth: n must be >= 2");
    if (spec.informative < 1) throw std::invalid_argument("synth: need at least one informative feature");
    if (!(spec.sep >= 0.0)) throw std::invalid_argument("synth: sep must be >= 0");

    const std::size_t d = spec.informative + spec.distractors;
    std::mt19937_64 rng(spec.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    std::vector<int> labels(spec.n, -1);
    std::fill(labels.begin(), labels.begin() + static_cast<std::ptrdiff_t>(spec.n / 2), 1);
    std::shuffle(labels.begin(), labels.end(), rng);

    const double shift = 0.5 * spec.sep / std::sqrt(static_cast<double>(spec.informative));
    std::vector<double> feats(spec.n * d);
    for (std::size_t i = 0; i < spec.n; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            double v = normal(rng);
            if (j < spec.informative) v += labels[i] * shift;
            feats[i * d + j] = v;
        }
    }

    std::vector<std::string> names;
    for (std::size_t j = 0; j < d; ++j)
        names.push_back((j < spec.informative ? "inf" : "noise") +
                        std::to_string(j < spec.informative ? j : j - spec.informative));
    std::vector<RowId> ids(spec.n);
    std::iota(ids.begin(), ids.end(), RowId{0});
    return Dataset(std::move(feats), d, std::move(labels), std::move(ids), std::move(names));
}

}  // namespace itboost
