#include "itboost/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "itboost/boosting.hpp"
#include "itboost/dataset.hpp"
#include "itboost/error.hpp"
#include "itboost/eval.hpp"
#include "itboost/model_io.hpp"
#include "itboost/noise.hpp"
#include "itboost/synth.hpp"
#include "itboost/text.hpp"
#include "itboost/theory.hpp"

namespace itboost::cli {

namespace {

struct Globals {
    std::uint64_t seed = 42;
    std::string config;
    std::string out;
    int threads = 1;
};

// Flag values are kept as text and applied on top of the config file, so
// "flag given" is simply "string non-empty".
struct ModelFlags {
    std::string iterations, learning_rate, max_depth, min_samples_leaf, loss, encoding, trust, schedule;
};

struct DataFlags {
    std::string path;
    std::string label;
    std::optional<std::size_t> label_index;
    std::string positive = "1";
    std::string undersample = "before";
};

struct NoiseFlags {
    std::string kind = "symmetric";
    double rate = 0.0;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
    cmd->add_option("--iterations", f.iterations, "boosting rounds M (default 100)");
    cmd->add_option("--learning-rate", f.learning_rate, "shrinkage nu (default 0.1)");
    cmd->add_option("--max-depth", f.max_depth, "tree depth (default 3)");
    cmd->add_option("--min-samples-leaf", f.min_samples_leaf, "minimum rows per leaf (default 1)");
    cmd->add_option("--loss", f.loss, "logistic | squared");
    cmd->add_option("--encoding", f.encoding, "binary-sign | binary-delta | quantized");
    cmd->add_option("--trust", f.trust, "enabled | disabled | magnitude-only");
    cmd->add_option("--schedule", f.schedule, "recompute | incremental");
}

void add_data_flags(CLI::App* cmd, DataFlags& f, bool with_undersample = true) {
    cmd->add_option("--data", f.path, "input CSV with a header row")->required();
    auto* by_name = cmd->add_option("--label", f.label, "label column name (default: 'label')");
    auto* by_index = cmd->add_option("--label-index", f.label_index, "zero-based label column index");
    by_name->excludes(by_index);
    cmd->add_option("--positive", f.positive, "label token mapped to +1")->capture_default_str();
    if (with_undersample)
        cmd->add_option("--undersample", f.undersample, "none | before | after (the CV split)")
            ->capture_default_str();
}

void add_noise_flags(CLI::App* cmd, NoiseFlags& f) {
    cmd->add_option("--noise-kind", f.kind, "symmetric | asymmetric | feature")->capture_default_str();
    cmd->add_option("--noise-rate", f.rate, "corruption rate; 0 disables noise")->capture_default_str();
}

BoostConfig build_config(const Globals& g, const ModelFlags& f, bool seed_given) {
    BoostConfig c;
    if (!g.config.empty()) c = load_config(g.config, c);
    const std::pair<const char*, const std::string*> entries[] = {
        {"iterations", &f.iterations}, {"learning_rate", &f.learning_rate}, {"max_depth", &f.max_depth},
        {"min_samples_leaf", &f.min_samples_leaf}, {"loss", &f.loss}, {"encoding", &f.encoding},
        {"trust", &f.trust}, {"schedule", &f.schedule}};
    for (const auto& [key, value] : entries)
        if (!value->empty()) apply_config_entry(c, key, *value);
    if (seed_given || g.config.empty()) c.seed = g.seed;
    c.threads = g.threads;
    c.validate();
    return c;
}

Dataset load_data(const DataFlags& f) {
    ColumnRef col = std::string("label");
    if (f.label_index) col = *f.label_index;
    else if (!f.label.empty()) col = f.label;
    return load_csv(f.path, col, f.positive);
}

std::optional<NoiseSpec> noise_spec(const NoiseFlags& f, std::uint64_t seed) {
    if (f.rate == 0.0) return std::nullopt;
    NoiseSpec spec{parse_noise_kind(f.kind), f.rate, seed};
    spec.validate();
    return spec;
}

/// Writes through `fn` to the file at `path`, or to `fallback` when empty.
void emit(const std::string& path, std::ostream& fallback, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(fallback);
        return;
    }
    std::ofstream file(path);
    if (!file) throw DataError("cannot open '" + path + "' for writing");
    fn(file);
    if (!file) throw DataError("write failed for '" + path + "'");
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        const auto t = trim(item);
        if (t.empty()) throw std::invalid_argument("empty entry in list '" + s + "'");
        out.emplace_back(t);
    }
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

/// Data after the optional before-split undersampling, plus CV options.
std::pair<Dataset, CvOptions> prepare_cv(const DataFlags& f, const Globals& g) {
    auto data = load_data(f);
    CvOptions opt;
    opt.undersample = parse_undersample(f.undersample);
    opt.threads = g.threads;
    if (opt.undersample == UndersampleOrder::BeforeSplit) data = random_undersample(data, g.seed);
    return {std::move(data), opt};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gradient boosting with complexity-based trust weights", "itboost"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    Globals g;
    auto* seed_opt = app.add_option("--seed", g.seed, "seed for folds, noise and sampling")->capture_default_str();
    app.add_option("--config", g.config, "key = value config file; flags override it");
    app.add_option("--out", g.out, "output path (default: standard output)");
    app.add_option("--threads", g.threads, "worker threads; 1 = fully serial")->capture_default_str()
        ->check(CLI::PositiveNumber);

    ModelFlags mf;
    DataFlags df;
    NoiseFlags nf;

    // train
    auto* train_cmd = app.add_subcommand("train", "fit a model on a CSV and write model + trace");
    std::string trace_path, mask_path;
    add_data_flags(train_cmd, df);
    add_model_flags(train_cmd, mf);
    add_noise_flags(train_cmd, nf);
    train_cmd->add_option("--trace", trace_path, "per-iteration trust trace CSV");
    train_cmd->add_option("--mask", mask_path, "noise mask CSV (when noise is injected)");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "stratified k-fold report");
    int k = 5;
    add_data_flags(eval_cmd, df);
    add_model_flags(eval_cmd, mf);
    add_noise_flags(eval_cmd, nf);
    eval_cmd->add_option("--k", k, "number of folds")->capture_default_str();

    // noise-sweep
    auto* sweep_cmd = app.add_subcommand("noise-sweep", "CV metrics over noise kinds, rates and trust modes");
    std::string kinds = "symmetric", rates = "0.1,0.2,0.3,0.4,0.5", modes = "disabled,enabled";
    add_data_flags(sweep_cmd, df);
    add_model_flags(sweep_cmd, mf);
    sweep_cmd->add_option("--k", k, "number of folds")->capture_default_str();
    sweep_cmd->add_option("--kind", kinds, "comma list of noise kinds")->capture_default_str();
    sweep_cmd->add_option("--rates", rates, "comma list of non-decreasing rates")->capture_default_str();
    sweep_cmd->add_option("--modes", modes, "comma list of trust modes")->capture_default_str();

    // ablate
    auto* ablate_cmd = app.add_subcommand("ablate", "binary vs quantized encoding, with timing");
    add_data_flags(ablate_cmd, df);
    add_model_flags(ablate_cmd, mf);
    add_noise_flags(ablate_cmd, nf);
    ablate_cmd->add_option("--k", k, "number of folds")->capture_default_str();

    // trajectory
    auto* traj_cmd = app.add_subcommand("trajectory", "mean trust weight per iteration for easy/hard/noisy rows");
    add_data_flags(traj_cmd, df, false);
    add_model_flags(traj_cmd, mf);
    add_noise_flags(traj_cmd, nf);

    // verify-bounds
    auto* bounds_cmd = app.add_subcommand("verify-bounds", "trust-term bound and separability checks on a trace");
    std::string bounds_trace, bounds_mask;
    std::size_t bounds_iteration = 0;
    double eps = 0.1, delta = 0.05;
    bounds_cmd->add_option("--trace", bounds_trace, "trace CSV written by train")->required();
    bounds_cmd->add_option("--mask", bounds_mask, "mask CSV written by train")->required();
    bounds_cmd->add_option("--iteration", bounds_iteration, "1-based iteration (default: last)");
    bounds_cmd->add_option("--eps", eps, "separability margin")->capture_default_str();
    bounds_cmd->add_option("--delta", delta, "failure probability")->capture_default_str();

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "write a seeded two-Gaussian dataset");
    SynthSpec ss;
    synth_cmd->add_option("--n", ss.n, "rows")->capture_default_str();
    synth_cmd->add_option("--d", ss.informative, "informative features")->capture_default_str();
    synth_cmd->add_option("--distractors", ss.distractors, "pure-noise features")->capture_default_str();
    synth_cmd->add_option("--sep", ss.sep, "distance between class means")->capture_default_str();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    const auto* cmd = app.get_subcommands().front();
    const std::string name = cmd->get_name();
    const bool seed_given = seed_opt->count() > 0;

    try {
        if (cmd == train_cmd) {
            const auto config = build_config(g, mf, seed_given);
            auto data = load_data(df);
            if (parse_undersample(df.undersample) != UndersampleOrder::None)
                data = random_undersample(data, config.seed);
            NoiseMask mask;
            if (auto spec = noise_spec(nf, config.seed)) {
                auto noisy = inject(data, *spec);
                data = std::move(noisy.data);
                mask = std::move(noisy.mask);
            }
            const auto result = train(data, config);
            emit(g.out, out, [&](std::ostream& os) { os << model_to_text(result.model, config); });
            if (!trace_path.empty())
                emit(trace_path, out, [&](std::ostream& os) { write_trace_csv(result.trace, os); });
            if (!mask_path.empty())
                emit(mask_path, out, [&](std::ostream& os) { write_mask_csv(mask, os); });
            err << "train: " << data.size() << " rows, " << config.iterations << " iterations, trust time "
                << format_real(result.trace.total_trust_seconds()) << " s\n";
        } else if (cmd == eval_cmd) {
            const auto config = build_config(g, mf, seed_given);
            auto [data, opt] = prepare_cv(df, g);
            const auto plan = stratified_kfold(data, k, config.seed);
            const auto result = cross_validate(data, config, plan, noise_spec(nf, config.seed), opt);
            emit(g.out, out, [&](std::ostream& os) { write_report_csv(result.report, os); });
            err << "evaluate: wall " << format_real(result.report.wall_time_seconds) << " s, trust "
                << format_real(result.report.trust_seconds) << " s\n";
        } else if (cmd == sweep_cmd) {
            const auto config = build_config(g, mf, seed_given);
            auto [data, opt] = prepare_cv(df, g);
            std::vector<double> rate_values;
            for (const auto& r : split_list(rates)) {
                auto v = parse_real(r);
                if (!v) throw std::invalid_argument("noise-sweep: bad rate '" + r + "'");
                rate_values.push_back(*v);
            }
            std::vector<TrustMode> mode_values;
            for (const auto& m : split_list(modes)) mode_values.push_back(parse_trust_mode(m));
            const auto plan = stratified_kfold(data, k, config.seed);
            std::vector<SweepRow> rows;
            for (const auto& kind : split_list(kinds)) {
                auto part = noise_sweep(data, config, plan, parse_noise_kind(kind), rate_values, mode_values,
                                        config.seed, opt);
                std::move(part.begin(), part.end(), std::back_inserter(rows));
            }
            emit(g.out, out, [&](std::ostream& os) { write_sweep_csv(rows, os); });
        } else if (cmd == ablate_cmd) {
            const auto base = build_config(g, mf, seed_given);
            auto [data, opt] = prepare_cv(df, g);
            const auto plan = stratified_kfold(data, k, base.seed);
            const auto noise = noise_spec(nf, base.seed);
            struct Entry {
                Encoding encoding;
                MetricReport report;
            };
            std::vector<Entry> entries;
            for (Encoding e : {Encoding::BinarySign, Encoding::Quantized}) {
                auto config = base;
                config.encoding = e;
                entries.push_back({e, cross_validate(data, config, plan, noise, opt).report});
            }
            const double quantized_wall = entries.back().report.wall_time_seconds;
            emit(g.out, out, [&](std::ostream& os) {
                os << "encoding,acc_mean,acc_std,f1_mean,auc_mean,log_loss_mean,wall_seconds,trust_seconds,"
                      "time_vs_quantized\n";
                for (const auto& [e, r] : entries) {
                    const double rel = quantized_wall > 0.0 ? r.wall_time_seconds / quantized_wall : 1.0;
                    os << to_string(e) << ',' << format_real(r.acc.mean) << ',' << format_real(r.acc.std) << ','
                       << format_real(r.f1.mean) << ',' << format_real(r.auc.mean) << ','
                       << format_real(r.log_loss.mean) << ',' << format_real(r.wall_time_seconds) << ','
                       << format_real(r.trust_seconds) << ',' << format_real(rel) << '\n';
                }
            });
            const double cut = 1.0 - entries.front().report.wall_time_seconds / std::max(quantized_wall, 1e-300);
            err << "ablate: binary-sign training time is " << format_real(100.0 * cut)
                << "% below quantized\n";
        } else if (cmd == traj_cmd) {
            const auto config = build_config(g, mf, seed_given);
            auto data = load_data(df);
            NoiseMask mask;
            if (auto spec = noise_spec(nf, config.seed)) {
                auto noisy = inject(data, *spec);
                data = std::move(noisy.data);
                mask = std::move(noisy.mask);
            }
            const auto result = train(data, config);
            const auto summary = trajectory_summary(result.trace, mask, early_margins(result.trace));
            for (const auto& w : summary.warnings) err << "trajectory: warning: " << w << '\n';
            emit(g.out, out, [&](std::ostream& os) { write_trajectory_csv(summary, os); });
        } else if (cmd == bounds_cmd) {
            const auto trace = read_trace_csv(bounds_trace);
            const auto mask = read_mask_csv(bounds_mask);
            const std::size_t it = bounds_iteration == 0 ? trace.iterations.size() : bounds_iteration;
            const auto [clean, noisy] = split_complexities(trace, it, mask);
            const auto ratio = ratio_bound_check(clean, noisy);
            const auto sep = separability_report(trace, it, mask, eps, delta);
            emit(g.out, out, [&](std::ostream& os) {
                os << "iteration=" << it << '\n' << to_text(ratio) << to_text(sep);
                os << "bounds_hold=" << std::boolalpha << (ratio.clean.satisfied() && ratio.noisy.satisfied() && ratio.ratio_ok)
                   << '\n';
            });
        } else if (cmd == synth_cmd) {
            ss.seed = g.seed;
            const auto data = make_two_gaussians(ss);
            emit(g.out, out, [&](std::ostream& os) { write_csv(data, os); });
        }
    } catch (const DataError& e) {
        err << "itboost " << name << ": data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::invalid_argument& e) {
        err << "itboost " << name << ": usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "itboost " << name << ": error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitOk;
}

}  // namespace itboost::cli
