#include "itboost/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <numeric>
#include <stdexcept>

#include "itboost/error.hpp"
#include "itboost/metrics.hpp"
#include "itboost/parallel.hpp"
#include "itboost/text.hpp"

namespace itboost {

Summary summarize(const std::vector<double>& values) {
    if (values.empty()) return {};
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0};
}

UndersampleOrder parse_undersample(std::string_view s) {
    if (s == "none") return UndersampleOrder::None;
    if (s == "before") return UndersampleOrder::BeforeSplit;
    if (s == "after") return UndersampleOrder::AfterSplit;
    throw std::invalid_argument("unknown undersample order '" + std::string(s) + "'");
}

std::uint64_t label_hash(const Dataset& data) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    for (std::size_t i = 0; i < data.size(); ++i) {
        mix(static_cast<std::uint64_t>(data.row_ids()[i]));
        mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(data.labels()[i])));
    }
    return h;
}

CvResult cross_validate(const Dataset& data, const BoostConfig& config, const FoldPlan& folds,
                        const std::optional<NoiseSpec>& noise, const CvOptions& options) {
    config.validate();
    if (folds.assignments.size() != data.size()) throw std::invalid_argument("cross_validate: fold plan size mismatch");
    if (noise) noise->validate();
    const auto k = static_cast<std::size_t>(folds.k);

    std::vector<FoldMetrics> metrics(k);
    std::vector<std::optional<FoldArtifacts>> artifacts(k);
    BoostConfig inner = config;
    if (options.threads > 1) inner.threads = 1;

    parallel_for(k, options.threads, [&](std::size_t f) {
        const auto start = std::chrono::steady_clock::now();
        const int fold = static_cast<int>(f);
        Dataset train_set = data.subset(folds.train_positions(fold));
        Dataset test = data.subset(folds.test_positions(fold));
        if (options.undersample == UndersampleOrder::AfterSplit)
            train_set = random_undersample(train_set, config.seed + f);

        NoiseMask mask;
        if (noise && noise->rate > 0.0) {
            NoiseSpec spec = *noise;
            spec.seed += f;
            auto noisy = inject(train_set, spec);
            train_set = std::move(noisy.data);
            mask = std::move(noisy.mask);
        } else if (noise) {
            mask.spec = *noise;
        }

        auto [model, trace] = train(train_set, inner);
        const auto proba = model.predict_proba(test);
        const auto& y = test.labels();

        FoldMetrics& m = metrics[f];
        m.fold = fold;
        m.acc = accuracy(y, proba);
        m.f1 = f1_score(y, proba);
        m.auc = roc_auc(y, proba);
        m.log_loss = log_loss(y, proba);
        m.trust_seconds = trace.total_trust_seconds();
        m.n_train = train_set.size();
        m.n_test = test.size();
        m.n_corrupted = mask.size();
        m.test_label_hash = label_hash(test);
        m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.keep_artifacts)
            artifacts[f] = FoldArtifacts{std::move(train_set), std::move(test), std::move(mask), std::move(model),
                                         std::move(trace)};
    });

    CvResult result;
    auto& r = result.report;
    r.folds = std::move(metrics);
    std::vector<double> acc, f1, auc, ll;
    std::size_t history_bytes = 0;
    for (const auto& m : r.folds) {
        acc.push_back(m.acc);
        f1.push_back(m.f1);
        auc.push_back(m.auc);
        ll.push_back(m.log_loss);
        r.wall_time_seconds += m.wall_seconds;
        r.trust_seconds += m.trust_seconds;
        history_bytes = std::max(history_bytes, m.n_train * static_cast<std::size_t>(config.iterations));
    }
    r.acc = summarize(acc);
    r.f1 = summarize(f1);
    r.auc = summarize(auc);
    r.log_loss = summarize(ll);
    if (config.trust == TrustMode::Enabled) r.peak_memory_estimate = history_bytes;
    for (auto& a : artifacts)
        if (a) result.artifacts.push_back(std::move(*a));
    return result;
}

std::vector<SweepRow> noise_sweep(const Dataset& data, const BoostConfig& config, const FoldPlan& folds,
                                  NoiseKind kind, const std::vector<double>& rates,
                                  const std::vector<TrustMode>& modes, std::uint64_t seed,
                                  const CvOptions& options) {
    if (rates.empty()) throw std::invalid_argument("noise_sweep: no rates");
    if (modes.empty()) throw std::invalid_argument("noise_sweep: no trust modes");
    if (!std::is_sorted(rates.begin(), rates.end())) throw std::invalid_argument("noise_sweep: rates must be sorted");
    for (double r : rates) NoiseSpec{kind, r, seed}.validate();

    std::vector<SweepRow> rows;
    for (double rate : rates) {
        for (TrustMode mode : modes) {
            BoostConfig c = config;
            c.trust = mode;
            std::optional<NoiseSpec> spec;
            if (rate > 0.0) spec = NoiseSpec{kind, rate, seed};
            CvOptions opts = options;
            opts.keep_artifacts = false;
            rows.push_back({kind, rate, mode, cross_validate(data, c, folds, spec, opts).report});
        }
    }
    return rows;
}

const CategoryCurve* TrajectorySummary::find(const std::string& name) const {
    for (const auto& c : curves)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<double> early_margins(const RunTrace& trace) {
    const std::size_t m = trace.iterations.size();
    if (m == 0) throw std::invalid_argument("early_margins: empty trace");
    const std::size_t k = std::max<std::size_t>(1, m / 10);
    const auto& scores = k < m ? trace.iterations[k].scores : trace.final_scores;
    std::vector<double> out(scores.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = trace.labels[i] * scores[i];
    return out;
}

TrajectorySummary trajectory_summary(const RunTrace& trace, const NoiseMask& mask,
                                     const std::vector<double>& margins) {
    const std::size_t n = trace.row_ids.size();
    if (margins.size() != n) throw std::invalid_argument("trajectory_summary: margins length mismatch");
    for (const auto& it : trace.iterations)
        if (it.trust.weights.size() != n) throw std::invalid_argument("trajectory_summary: trace rows mismatch");

    std::vector<std::size_t> noisy, clean;
    for (std::size_t i = 0; i < n; ++i) (mask.contains(trace.row_ids[i]) ? noisy : clean).push_back(i);
    std::stable_sort(clean.begin(), clean.end(), [&](std::size_t a, std::size_t b) { return margins[a] < margins[b]; });

    std::vector<std::pair<std::string, std::vector<std::size_t>>> groups;
    if (!clean.empty()) {
        const std::size_t q = std::max<std::size_t>(1, clean.size() / 4);
        groups.emplace_back("easy", std::vector<std::size_t>(clean.end() - static_cast<std::ptrdiff_t>(q), clean.end()));
        groups.emplace_back("hard", std::vector<std::size_t>(clean.begin(), clean.begin() + static_cast<std::ptrdiff_t>(q)));
    }
    groups.emplace_back("noisy", std::move(noisy));

    TrajectorySummary out;
    for (auto& [name, rows] : groups) {
        if (rows.empty()) {
            out.warnings.push_back("category '" + name + "' is empty; omitted");
            continue;
        }
        CategoryCurve curve{name, rows.size(), {}, {}};
        for (const auto& it : trace.iterations) {
            double w = 0.0, t = 0.0;
            for (std::size_t i : rows) {
                w += it.trust.weights[i];
                t += it.trust.trust[i];
            }
            curve.mean_weight.push_back(w / static_cast<double>(rows.size()));
            curve.mean_trust.push_back(t / static_cast<double>(rows.size()));
        }
        out.curves.push_back(std::move(curve));
    }
    if (clean.empty()) out.warnings.push_back("no clean rows; easy and hard omitted");
    return out;
}

void write_report_csv(const MetricReport& report, std::ostream& out) {
    out << "fold,acc,f1,auc,log_loss,wall_seconds,trust_seconds,n_train,n_test,n_corrupted\n";
    for (const auto& m : report.folds) {
        out << m.fold << ',' << format_real(m.acc) << ',' << format_real(m.f1) << ',' << format_real(m.auc) << ','
            << format_real(m.log_loss) << ',' << format_real(m.wall_seconds) << ',' << format_real(m.trust_seconds)
            << ',' << m.n_train << ',' << m.n_test << ',' << m.n_corrupted << '\n';
    }
    out << "mean," << format_real(report.acc.mean) << ',' << format_real(report.f1.mean) << ','
        << format_real(report.auc.mean) << ',' << format_real(report.log_loss.mean) << ','
        << format_real(report.wall_time_seconds) << ',' << format_real(report.trust_seconds) << ",,,\n";
    out << "std," << format_real(report.acc.std) << ',' << format_real(report.f1.std) << ','
        << format_real(report.auc.std) << ',' << format_real(report.log_loss.std) << ",,,,,\n";
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "kind,rate,mode,acc_mean,acc_std,f1_mean,f1_std,auc_mean,auc_std,log_loss_mean,log_loss_std,"
           "wall_seconds,trust_seconds\n";
    for (const auto& r : rows) {
        const auto& m = r.report;
        out << to_string(r.kind) << ',' << format_real(r.rate) << ',' << to_string(r.mode) << ','
            << format_real(m.acc.mean) << ',' << format_real(m.acc.std) << ',' << format_real(m.f1.mean) << ','
            << format_real(m.f1.std) << ',' << format_real(m.auc.mean) << ',' << format_real(m.auc.std) << ','
            << format_real(m.log_loss.mean) << ',' << format_real(m.log_loss.std) << ','
            << format_real(m.wall_time_seconds) << ',' << format_real(m.trust_seconds) << '\n';
    }
}

void write_trajectory_csv(const TrajectorySummary& summary, std::ostream& out) {
    out << "iteration,category,rows,mean_weight,mean_trust\n";
    for (const auto& c : summary.curves) {
        for (std::size_t m = 0; m < c.mean_weight.size(); ++m) {
            out << m + 1 << ',' << c.name << ',' << c.rows << ',' << format_real(c.mean_weight[m]) << ','
                << format_real(c.mean_trust[m]) << '\n';
        }
    }
}

}  // namespace itboost
