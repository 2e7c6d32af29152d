#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace itboost {

using Symbol = std::uint8_t;

/// How a pseudo-residual is turned into a history symbol.
///   BinarySign  '1' iff g > 0
///   BinaryDelta '1' iff g - g_prev > 0 (first iteration falls back to sign)
///   Quantized   2*[g > 0] + [|g| >= median |g| of the iteration]
enum class Encoding { BinarySign, BinaryDelta, Quantized };

std::string_view to_string(Encoding e);
Encoding parse_encoding(std::string_view s);

constexpr unsigned alphabet_size(Encoding e) { return e == Encoding::Quantized ? 4u : 2u; }

/// Append-only residual history over a fixed alphabet.
class SymbolSequence {
public:
    explicit SymbolSequence(unsigned alphabet = 2);

    void append(Symbol s);
    std::size_t size() const { return symbols_.size(); }
    unsigned alphabet() const { return alphabet_; }
    std::span<const Symbol> symbols() const { return symbols_; }

    /// Digits '0'..'9', one per symbol.
    static SymbolSequence from_string(std::string_view digits, unsigned alphabet = 2);

private:
    unsigned alphabet_;
    std::vector<Symbol> symbols_;
};

enum class SignMode { Sign, DeltaSign };

/// Ties (g == 0, or g == g_prev in delta mode) map to 0.
Symbol binarize_gradient(double g, SignMode mode = SignMode::Sign,
                         std::optional<double> previous = std::nullopt);

Symbol quantize_gradient(double g, double magnitude_threshold);

/// Median of |g|. Falls back to the smallest nonzero |g| when the median is
/// zero, and to 1 when every g is zero, so the result is always positive.
double quantization_threshold(std::span<const double> gradients);

/// Encodes one iteration's gradients for all samples. `previous` is empty on
/// the first iteration.
std::vector<Symbol> encode_gradients(std::span<const double> gradients,
                                     std::span<const double> previous, Encoding encoding);

/// Number of phrases in the LZ76 exhaustive-history parsing (Kaspar-Schuster
/// scan); the trailing reproducible phrase counts as one. O(m^2) worst case.
std::size_t lz76_complexity(std::span<const Symbol> s);
inline std::size_t lz76_complexity(const SymbolSequence& s) { return lz76_complexity(s.symbols()); }

/// Online LZ76 parser. After every append, complexity() equals
/// lz76_complexity() of the sequence appended so far.
class IncrementalLz76 {
public:
    std::size_t append(Symbol s);
    std::size_t complexity() const { return completed_ + (phrase_start_ < seq_.size() ? 1 : 0); }
    std::size_t size() const { return seq_.size(); }

private:
    std::vector<Symbol> seq_;
    std::size_t completed_ = 0;
    std::size_t phrase_start_ = 0;
    // Start positions i < phrase_start_ where the open phrase reoccurs.
    std::vector<std::size_t> candidates_;
};

/// Per-iteration min-max scaling to [0,1]; all zeros when max == min.
std::vector<double> normalize_complexities(std::span<const std::size_t> raw);

struct TrustWeights {
    std::vector<double> trust;    // exp(-normalized)
    std::vector<double> weights;  // |g| * trust
};

TrustWeights trust_weights(std::span<const double> gradients, std::span<const double> normalized);

/// Everything computed at one boosting iteration's trust step.
struct TrustState {
    std::size_t iteration = 0;
    std::vector<std::size_t> raw_complexity;
    std::vector<double> normalized;
    std::vector<double> trust;
    std::vector<double> weights;
};

}  // namespace itboost
