#include "itboost/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace itboost {

std::string_view to_string(Encoding e) {
    switch (e) {
        case Encoding::BinarySign: return "binary-sign";
        case Encoding::BinaryDelta: return "binary-delta";
        case Encoding::Quantized: return "quantized";
    }
    return "?";
}

Encoding parse_encoding(std::string_view s) {
    if (s == "binary-sign" || s == "binary" || s == "sign") return Encoding::BinarySign;
    if (s == "binary-delta" || s == "delta" || s == "delta-sign") return Encoding::BinaryDelta;
    if (s == "quantized") return Encoding::Quantized;
    throw std::invalid_argument("unknown encoding '" + std::string(s) + "'");
}

SymbolSequence::SymbolSequence(unsigned alphabet) : alphabet_(alphabet) {
    if (alphabet < 1 || alphabet > 10) throw std::invalid_argument("SymbolSequence: alphabet must be in [1,10]");
}

void SymbolSequence::append(Symbol s) {
    if (s >= alphabet_) throw std::invalid_argument("SymbolSequence: symbol outside alphabet");
    symbols_.push_back(s);
}

SymbolSequence SymbolSequence::from_string(std::string_view digits, unsigned alphabet) {
    SymbolSequence seq(alphabet);
    for (char c : digits) {
        if (c < '0' || c > '9') throw std::invalid_argument("SymbolSequence: non-digit symbol");
        seq.append(static_cast<Symbol>(c - '0'));
    }
    return seq;
}

Symbol binarize_gradient(double g, SignMode mode, std::optional<double> previous) {
    if (!std::isfinite(g)) throw std::invalid_argument("binarize_gradient: non-finite gradient");
    if (mode == SignMode::DeltaSign && previous) {
        if (!std::isfinite(*previous)) throw std::invalid_argument("binarize_gradient: non-finite previous gradient");
        return g - *previous > 0.0 ? 1 : 0;
    }
    return g > 0.0 ? 1 : 0;
}

Symbol quantize_gradient(double g, double magnitude_threshold) {
    if (!std::isfinite(g) || !std::isfinite(magnitude_threshold))
        throw std::invalid_argument("quantize_gradient: non-finite input");
    if (magnitude_threshold <= 0.0) throw std::invalid_argument("quantize_gradient: threshold must be positive");
    return static_cast<Symbol>(2 * (g > 0.0 ? 1 : 0) + (std::abs(g) >= magnitude_threshold ? 1 : 0));
}

double quantization_threshold(std::span<const double> gradients) {
    if (gradients.empty()) throw std::invalid_argument("quantization_threshold: empty input");
    std::vector<double> mag(gradients.size());
    std::transform(gradients.begin(), gradients.end(), mag.begin(), [](double g) { return std::abs(g); });
    std::sort(mag.begin(), mag.end());
    const std::size_t n = mag.size();
    const double median = n % 2 == 1 ? mag[n / 2] : 0.5 * (mag[n / 2 - 1] + mag[n / 2]);
    if (median > 0.0) return median;
    auto nz = std::upper_bound(mag.begin(), mag.end(), 0.0);
    return nz != mag.end() ? *nz : 1.0;
}

std::vector<Symbol> encode_gradients(std::span<const double> gradients, std::span<const double> previous,
                                     Encoding encoding) {
    if (!previous.empty() && previous.size() != gradients.size())
        throw std::invalid_argument("encode_gradients: length mismatch");
    std::vector<Symbol> out(gradients.size());
    switch (encoding) {
        case Encoding::BinarySign:
            for (std::size_t i = 0; i < gradients.size(); ++i) out[i] = binarize_gradient(gradients[i]);
            break;
        case Encoding::BinaryDelta:
            for (std::size_t i = 0; i < gradients.size(); ++i) {
                out[i] = previous.empty() ? binarize_gradient(gradients[i])
                                          : binarize_gradient(gradients[i], SignMode::DeltaSign, previous[i]);
            }
            break;
        case Encoding::Quantized: {
            const double threshold = quantization_threshold(gradients);
            for (std::size_t i = 0; i < gradients.size(); ++i) out[i] = quantize_gradient(gradients[i], threshold);
            break;
        }
    }
    return out;
}

std::size_t lz76_complexity(std::span<const Symbol> s) {
    const std::size_t n = s.size();
    if (n <= 1) return n;

    // l: start of the phrase being parsed; i: candidate earlier start;
    // k: current match length; kmax: longest match seen for this phrase.
    std::size_t c = 1, l = 1, i = 0, k = 1, kmax = 1;
    while (true) {
        if (s[i + k - 1] == s[l + k - 1]) {
            ++k;
            if (l + k > n) {
                ++c;
                break;
            }
        } else {
            kmax = std::max(k, kmax);
            ++i;
            if (i == l) {
                ++c;
                l += kmax;
                if (l + 1 > n) break;
                i = 0;
                k = 1;
                kmax = 1;
            } else {
                k = 1;
            }
        }
    }
    return c;
}

std::size_t IncrementalLz76::append(Symbol s) {
    const std::size_t j = seq_.size();
    seq_.push_back(s);
    if (phrase_start_ == j) {
        candidates_.clear();
        for (std::size_t i = 0; i < j; ++i)
            if (seq_[i] == s) candidates_.push_back(i);
    } else {
        const std::size_t offset = j - phrase_start_;
        std::erase_if(candidates_, [&](std::size_t i) { return seq_[i + offset] != s; });
    }
    if (candidates_.empty()) {
        ++completed_;
        phrase_start_ = j + 1;
    }
    return complexity();
}

std::vector<double> normalize_complexities(std::span<const std::size_t> raw) {
    if (raw.empty()) throw std::invalid_argument("normalize_complexities: empty input");
    const auto [lo_it, hi_it] = std::minmax_element(raw.begin(), raw.end());
    const double lo = static_cast<double>(*lo_it);
    const double range = static_cast<double>(*hi_it) - lo;
    std::vector<double> out(raw.size(), 0.0);
    if (range > 0.0) {
        for (std::size_t i = 0; i < raw.size(); ++i) out[i] = (static_cast<double>(raw[i]) - lo) / range;
    }
    return out;
}

TrustWeights trust_weights(std::span<const double> gradients, std::span<const double> normalized) {
    if (gradients.size() != normalized.size()) throw std::invalid_argument("trust_weights: length mismatch");
    TrustWeights tw{std::vector<double>(gradients.size()), std::vector<double>(gradients.size())};
    for (std::size_t i = 0; i < gradients.size(); ++i) {
        if (normalized[i] < 0.0 || normalized[i] > 1.0)
            throw std::invalid_argument("trust_weights: normalized complexity outside [0,1]");
        tw.trust[i] = std::exp(-normalized[i]);
        tw.weights[i] = std::abs(gradients[i]) * tw.trust[i];
    }
    return tw;
}

}  // namespace itboost
