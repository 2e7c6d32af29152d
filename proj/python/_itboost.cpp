#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "itboost/boosting.hpp"
#include "itboost/complexity.hpp"
#include "itboost/dataset.hpp"
#include "itboost/error.hpp"
#include "itboost/eval.hpp"
#include "itboost/model_io.hpp"
#include "itboost/stats.hpp"
#include "itboost/synth.hpp"
#include "itboost/theory.hpp"

namespace py = pybind11;
using namespace itboost;

namespace {

BoostConfig make_config(int iterations, double learning_rate, int max_depth, int min_samples_leaf,
                        const std::string& loss, const std::string& encoding, const std::string& trust,
                        const std::string& schedule, std::uint64_t seed) {
    BoostConfig c;
    c.iterations = iterations;
    c.learning_rate = learning_rate;
    c.max_depth = max_depth;
    c.min_samples_leaf = min_samples_leaf;
    c.loss = parse_loss(loss);
    c.encoding = parse_encoding(encoding);
    c.trust = parse_trust_mode(trust);
    c.schedule = parse_schedule(schedule);
    c.seed = seed;
    c.validate();
    return c;
}

Dataset to_dataset(const std::vector<std::vector<double>>& x, std::vector<int> y) {
    return Dataset::from_rows(x, std::move(y));
}

}  // namespace

PYBIND11_MODULE(_itboost, m) {
    m.doc() = "Gradient boosting with complexity-based trust weights";
    py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

    m.def("lz76_complexity", [](const std::vector<Symbol>& s) { return lz76_complexity(s); }, py::arg("symbols"));
    m.def("normalize_complexities", [](const std::vector<std::size_t>& raw) { return normalize_complexities(raw); });
    m.def(
        "trust_weights",
        [](const std::vector<double>& g, const std::vector<double>& c) {
            auto tw = trust_weights(g, c);
            return py::make_tuple(tw.trust, tw.weights);
        },
        py::arg("gradients"), py::arg("normalized"), "Returns (trust, weights).");

    py::class_<IncrementalLz76>(m, "IncrementalLz76")
        .def(py::init<>())
        .def("append", &IncrementalLz76::append)
        .def("complexity", &IncrementalLz76::complexity)
        .def("__len__", &IncrementalLz76::size);

    py::class_<Dataset>(m, "Dataset")
        .def(py::init(&to_dataset), py::arg("x"), py::arg("y"))
        .def_property_readonly("n_features", &Dataset::n_features)
        .def_property_readonly("labels", &Dataset::labels)
        .def_property_readonly("row_ids", &Dataset::row_ids)
        .def("rows",
             [](const Dataset& d) {
                 std::vector<std::vector<double>> out;
                 for (std::size_t i = 0; i < d.size(); ++i) out.emplace_back(d.row(i).begin(), d.row(i).end());
                 return out;
             })
        .def("__len__", &Dataset::size);

    m.def(
        "load_csv",
        [](const std::filesystem::path& path, const std::string& label, const std::string& positive) {
            return load_csv(path, label, positive);
        },
        py::arg("path"), py::arg("label") = "label", py::arg("positive") = "1");
    m.def(
        "make_two_gaussians",
        [](std::size_t n, std::size_t d, std::size_t distractors, double sep, std::uint64_t seed) {
            return make_two_gaussians({n, d, distractors, sep, seed});
        },
        py::arg("n") = 400, py::arg("d") = 10, py::arg("distractors") = 0, py::arg("sep") = 4.0, py::arg("seed") = 42);

    py::class_<Model>(m, "Model")
        .def("predict_score", [](const Model& mo, const std::vector<double>& x) { return mo.predict_score(x); })
        .def("predict_proba", [](const Model& mo, const Dataset& d) { return mo.predict_proba(d); })
        .def_property_readonly("n_trees", [](const Model& mo) { return mo.trees().size(); })
        .def_property_readonly("init_score", &Model::init_score)
        .def("to_text", [](const Model& mo) { return model_to_text(mo, BoostConfig{}); });

    m.def(
        "train",
        [](const Dataset& data, int iterations, double learning_rate, int max_depth, int min_samples_leaf,
           const std::string& loss, const std::string& encoding, const std::string& trust,
           const std::string& schedule, std::uint64_t seed) {
            const auto cfg = make_config(iterations, learning_rate, max_depth, min_samples_leaf, loss, encoding,
                                         trust, schedule, seed);
            py::gil_scoped_release release;
            return train(data, cfg).model;
        },
        py::arg("data"), py::arg("iterations") = 100, py::arg("learning_rate") = 0.1, py::arg("max_depth") = 3,
        py::arg("min_samples_leaf") = 1, py::arg("loss") = "logistic", py::arg("encoding") = "binary-sign",
        py::arg("trust") = "enabled", py::arg("schedule") = "recompute", py::arg("seed") = 42);

    m.def(
        "cross_validate",
        [](const Dataset& data, int k, const std::string& noise_kind, double noise_rate, int iterations,
           const std::string& loss, const std::string& encoding, const std::string& trust, std::uint64_t seed) {
            const auto cfg = make_config(iterations, 0.1, 3, 1, loss, encoding, trust, "recompute", seed);
            std::optional<NoiseSpec> noise;
            if (noise_rate > 0.0) noise = NoiseSpec{parse_noise_kind(noise_kind), noise_rate, seed};
            const auto plan = stratified_kfold(data, k, seed);
            MetricReport r;
            {
                py::gil_scoped_release release;
                r = cross_validate(data, cfg, plan, noise).report;
            }
            py::dict out;
            out["acc"] = py::make_tuple(r.acc.mean, r.acc.std);
            out["f1"] = py::make_tuple(r.f1.mean, r.f1.std);
            out["auc"] = py::make_tuple(r.auc.mean, r.auc.std);
            out["log_loss"] = py::make_tuple(r.log_loss.mean, r.log_loss.std);
            out["wall_seconds"] = r.wall_time_seconds;
            out["trust_seconds"] = r.trust_seconds;
            return out;
        },
        py::arg("data"), py::arg("k") = 5, py::arg("noise_kind") = "symmetric", py::arg("noise_rate") = 0.0,
        py::arg("iterations") = 100, py::arg("loss") = "logistic", py::arg("encoding") = "binary-sign",
        py::arg("trust") = "enabled", py::arg("seed") = 42);

    m.def(
        "friedman_from_mean_ranks",
        [](const std::vector<double>& ranks, std::size_t datasets) {
            const auto r = friedman_from_mean_ranks(ranks, datasets);
            return py::make_tuple(r.statistic, r.p_value);
        },
        py::arg("mean_ranks"), py::arg("datasets"), "Returns (chi2_F, p_value).");
    m.def("required_sample_size", &required_sample_size, py::arg("eps"), py::arg("delta"));
}
