#include "itboost/theory.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "itboost/error.hpp"
#include "itboost/text.hpp"

namespace itboost {

BoundReport trust_bound_check(const ComplexitySample& sample) {
    const auto& v = sample.values;
    if (v.empty()) throw std::invalid_argument("trust_bound_check: empty sample");
    for (double c : v)
        if (!std::isfinite(c)) throw std::invalid_argument("trust_bound_check: non-finite value");

    BoundReport r;
    r.n = v.size();
    const double n = static_cast<double>(v.size());
    double sum = 0.0, tau = 0.0;
    for (double c : v) {
        sum += c;
        tau += std::exp(-c);
    }
    r.mean = sum / n;
    r.empirical_tau = tau / n;
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    r.range = *hi - *lo;
    double ss = 0.0;
    for (double c : v) ss += (c - r.mean) * (c - r.mean);
    r.variance = ss / n;

    r.jensen_lower = std::exp(-r.mean);
    r.hoeffding_upper = std::exp(-r.mean + r.range * r.range / 8.0);
    r.subgaussian_upper = std::exp(-r.mean + r.variance / 2.0);
    r.jensen_ok = r.empirical_tau >= r.jensen_lower - kBoundTolerance;
    r.hoeffding_ok = r.empirical_tau <= r.hoeffding_upper + kBoundTolerance;
    r.subgaussian_ok = r.empirical_tau <= r.subgaussian_upper + kBoundTolerance;
    return r;
}

RatioReport ratio_bound_check(const ComplexitySample& clean, const ComplexitySample& noisy) {
    if (clean.values.empty() || noisy.values.empty()) throw std::invalid_argument("ratio_bound_check: empty group");
    RatioReport r;
    r.clean = trust_bound_check(clean);
    r.noisy = trust_bound_check(noisy);
    r.ratio = r.noisy.empirical_tau / r.clean.empirical_tau;
    r.gap = r.noisy.mean - r.clean.mean;
    r.corr = r.noisy.range * r.noisy.range / 8.0;
    r.bound = std::exp(-r.gap + r.corr);
    r.lemma_conditions_hold = r.clean.jensen_ok && r.noisy.hoeffding_ok;
    r.ratio_ok = r.ratio <= r.bound * (1.0 + kBoundTolerance) + kBoundTolerance;
    r.gap_exceeds_correction = r.gap > r.corr;
    return r;
}

std::size_t required_sample_size(double eps, double delta) {
    if (!(eps > 0.0)) throw std::invalid_argument("required_sample_size: eps must be > 0");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("required_sample_size: delta must be in (0,1)");
    return static_cast<std::size_t>(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
}

double hoeffding_radius(std::size_t n, double delta) {
    if (n == 0) throw std::invalid_argument("hoeffding_radius: n must be > 0");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

std::pair<ComplexitySample, ComplexitySample> split_complexities(const RunTrace& trace, std::size_t iteration,
                                                                 const NoiseMask& mask) {
    if (iteration < 1 || iteration > trace.iterations.size())
        throw std::invalid_argument("split_complexities: iteration " + std::to_string(iteration) + " not in trace");
    const auto& normalized = trace.iterations[iteration - 1].trust.normalized;
    ComplexitySample clean{{}, SampleGroup::Clean}, noisy{{}, SampleGroup::Noisy};
    for (std::size_t i = 0; i < trace.row_ids.size(); ++i)
        (mask.contains(trace.row_ids[i]) ? noisy : clean).values.push_back(normalized[i]);
    if (clean.values.empty() || noisy.values.empty())
        throw DataError("separability: mask must flag some but not all rows");
    return {std::move(clean), std::move(noisy)};
}

SeparabilityReport separability_report(const RunTrace& trace, std::size_t iteration, const NoiseMask& mask,
                                       double eps, double delta) {
    auto [clean, noisy] = split_complexities(trace, iteration, mask);
    SeparabilityReport r;
    r.iteration = iteration;
    r.eps = eps;
    r.delta = delta;
    r.n_required = required_sample_size(eps, delta);
    r.n_clean = clean.values.size();
    r.n_noisy = noisy.values.size();
    auto mean = [](const std::vector<double>& v) {
        double s = 0.0;
        for (double x : v) s += x;
        return s / static_cast<double>(v.size());
    };
    r.mean_clean = mean(clean.values);
    r.mean_noisy = mean(noisy.values);
    r.gap = r.mean_noisy - r.mean_clean;
    r.radius_clean = hoeffding_radius(r.n_clean, delta);
    r.radius_noisy = hoeffding_radius(r.n_noisy, delta);
    r.separable = r.gap > 2.0 * eps && r.n_clean >= r.n_required && r.n_noisy >= r.n_required;
    return r;
}

std::string to_text(const BoundReport& r, const std::string& prefix) {
    std::ostringstream out;
    out << prefix << "n=" << r.n << '\n'
        << prefix << "mean=" << format_real(r.mean) << '\n'
        << prefix << "range=" << format_real(r.range) << '\n'
        << prefix << "variance=" << format_real(r.variance) << '\n'
        << prefix << "empirical_tau=" << format_real(r.empirical_tau) << '\n'
        << prefix << "jensen_lower=" << format_real(r.jensen_lower) << '\n'
        << prefix << "hoeffding_upper=" << format_real(r.hoeffding_upper) << '\n'
        << prefix << "subgaussian_upper=" << format_real(r.subgaussian_upper) << '\n'
        << prefix << "jensen_ok=" << r.jensen_ok << '\n'
        << prefix << "hoeffding_ok=" << r.hoeffding_ok << '\n'
        << prefix << "subgaussian_ok=" << r.subgaussian_ok << '\n';
    return out.str();
}

std::string to_text(const RatioReport& r) {
    std::ostringstream out;
    out << to_text(r.clean, "clean.") << to_text(r.noisy, "noisy.") << "ratio=" << format_real(r.ratio) << '\n'
        << "gap=" << format_real(r.gap) << '\n'
        << "corr=" << format_real(r.corr) << '\n'
        << "bound=" << format_real(r.bound) << '\n'
        << "lemma_conditions_hold=" << r.lemma_conditions_hold << '\n'
        << "ratio_ok=" << r.ratio_ok << '\n'
        << "gap_exceeds_correction=" << r.gap_exceeds_correction << '\n';
    return out.str();
}

std::string to_text(const SeparabilityReport& r) {
    std::ostringstream out;
    out << "iteration=" << r.iteration << '\n'
        << "n_clean=" << r.n_clean << '\n'
        << "n_noisy=" << r.n_noisy << '\n'
        << "mean_clean=" << format_real(r.mean_clean) << '\n'
        << "mean_noisy=" << format_real(r.mean_noisy) << '\n'
        << "gap=" << format_real(r.gap) << '\n'
        << "eps=" << format_real(r.eps) << '\n'
        << "delta=" << format_real(r.delta) << '\n'
        << "radius_clean=" << format_real(r.radius_clean) << '\n'
        << "radius_noisy=" << format_real(r.radius_noisy) << '\n'
        << "n_required=" << r.n_required << '\n'
        << "separable=" << r.separable << '\n';
    return out.str();
}

}  // namespace itboost
