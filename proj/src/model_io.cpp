#include "itboost/model_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "itboost/error.hpp"
#include "itboost/text.hpp"

namespace itboost {

namespace {

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
    Int out{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
    if (ec != std::errc{} || ptr != value.data() + value.size())
        throw std::invalid_argument("config: '" + std::string(key) + "' expects an integer, got '" +
                                    std::string(value) + "'");
    return out;
}

double parse_double(std::string_view key, std::string_view value) {
    auto v = parse_real(value);
    if (!v) throw std::invalid_argument("config: '" + std::string(key) + "' expects a real, got '" + std::string(value) + "'");
    return *v;
}

std::map<std::string, std::string> parse_pairs(std::string_view line) {
    std::map<std::string, std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("model: expected key=value, got '" + tok + "'");
        out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

const std::string& require(const std::map<std::string, std::string>& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw DataError("model: missing field '" + key + "'");
    return it->second;
}

}  // namespace

std::string config_to_line(const BoostConfig& c) {
    std::ostringstream out;
    out << "iterations=" << c.iterations << " learning_rate=" << format_real(c.learning_rate)
        << " max_depth=" << c.max_depth << " min_samples_leaf=" << c.min_samples_leaf << " loss=" << to_string(c.loss)
        << " encoding=" << to_string(c.encoding) << " trust=" << to_string(c.trust)
        << " schedule=" << to_string(c.schedule) << " seed=" << c.seed;
    return out.str();
}

void apply_config_entry(BoostConfig& c, std::string_view key, std::string_view value) {
    if (key == "iterations") c.iterations = parse_int<int>(key, value);
    else if (key == "learning_rate") c.learning_rate = parse_double(key, value);
    else if (key == "max_depth") c.max_depth = parse_int<int>(key, value);
    else if (key == "min_samples_leaf") c.min_samples_leaf = parse_int<int>(key, value);
    else if (key == "loss") c.loss = parse_loss(value);
    else if (key == "encoding") c.encoding = parse_encoding(value);
    else if (key == "trust") c.trust = parse_trust_mode(value);
    else if (key == "schedule") c.schedule = parse_schedule(value);
    else if (key == "seed") c.seed = parse_int<std::uint64_t>(key, value);
    else if (key == "threads") c.threads = parse_int<int>(key, value);
    else throw std::invalid_argument("config: unknown key '" + std::string(key) + "'");
}

BoostConfig parse_config_text(std::string_view text, BoostConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key = value");
        apply_config_entry(base, trim(body.substr(0, eq)), trim(body.substr(eq + 1)));
    }
    base.validate();
    return base;
}

BoostConfig load_config(const std::filesystem::path& path, BoostConfig base) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open config '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), base);
}

std::string model_to_text(const Model& model, const BoostConfig& config) {
    std::ostringstream out;
    out << "itboost-model " << kModelFormatVersion << '\n';
    out << "config " << config_to_line(config) << '\n';
    out << "model n_features=" << model.n_features() << " init_score=" << format_real(model.init_score())
        << " learning_rate=" << format_real(model.learning_rate()) << " loss=" << to_string(model.loss())
        << " trees=" << model.trees().size() << '\n';
    for (const auto& t : model.trees()) out << "tree " << t.to_text() << '\n';
    return out.str();
}

LoadedModel model_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "itboost-model " + std::to_string(kModelFormatVersion))
        throw DataError("model: unsupported header '" + line + "'");

    LoadedModel out;
    if (!std::getline(in, line) || line.rfind("config ", 0) != 0) throw DataError("model: missing config line");
    for (const auto& [k, v] : parse_pairs(std::string_view(line).substr(7))) apply_config_entry(out.config, k, v);

    if (!std::getline(in, line) || line.rfind("model ", 0) != 0) throw DataError("model: missing model line");
    const auto kv = parse_pairs(std::string_view(line).substr(6));
    const auto n_features = parse_int<std::size_t>("n_features", require(kv, "n_features"));
    const auto init = parse_double("init_score", require(kv, "init_score"));
    const auto nu = parse_double("learning_rate", require(kv, "learning_rate"));
    const auto loss = parse_loss(require(kv, "loss"));
    const auto n_trees = parse_int<std::size_t>("trees", require(kv, "trees"));

    std::vector<RegressionTree> trees;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        if (line.rfind("tree ", 0) != 0) throw DataError("model: unexpected line '" + line + "'");
        trees.push_back(RegressionTree::from_text(std::string_view(line).substr(5)));
    }
    if (trees.size() != n_trees)
        throw DataError("model: header declares " + std::to_string(n_trees) + " trees, found " +
                        std::to_string(trees.size()));
    out.model = Model(init, nu, loss, n_features, std::move(trees));
    return out;
}

void save_model(const Model& model, const BoostConfig& config, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
    out << model_to_text(model, config);
}

LoadedModel load_model(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open model '" + path.string() + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return model_from_text(ss.str());
}

void write_trace_csv(const RunTrace& trace, std::ostream& out) {
    out << "iteration,row_id,raw_C,normalized_C,tau,weight\n";
    for (const auto& it : trace.iterations) {
        const auto& t = it.trust;
        for (std::size_t i = 0; i < trace.row_ids.size(); ++i) {
            out << it.iteration << ',' << trace.row_ids[i] << ',' << t.raw_complexity[i] << ','
                << format_real(t.normalized[i]) << ',' << format_real(t.trust[i]) << ','
                << format_real(t.weights[i]) << '\n';
        }
    }
}

}  // namespace itboost

namespace itboost {

RunTrace read_trace_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("read_trace_csv: cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "iteration,row_id,raw_C,normalized_C,tau,weight")
        throw DataError("read_trace_csv: bad header in '" + path.string() + "'");
    RunTrace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto f = split_fields(line);
        std::array<double, 6> v{};
        if (f.size() != v.size()) throw DataError("read_trace_csv: line " + std::to_string(line_no) + " malformed");
        for (std::size_t j = 0; j < v.size(); ++j) {
            auto x = parse_real(f[j]);
            if (!x) throw DataError("read_trace_csv: line " + std::to_string(line_no) + " has bad value '" + f[j] + "'");
            v[j] = *x;
        }
        const auto iteration = static_cast<std::size_t>(v[0]);
        if (trace.iterations.empty() || trace.iterations.back().iteration != iteration) {
            if (iteration != trace.iterations.size() + 1)
                throw DataError("read_trace_csv: iterations must be consecutive from 1");
            trace.iterations.emplace_back();
            trace.iterations.back().iteration = iteration;
            trace.iterations.back().trust.iteration = iteration;
        }
        auto& snap = trace.iterations.back();
        const auto row = static_cast<RowId>(v[1]);
        if (iteration == 1) {
            trace.row_ids.push_back(row);
        } else if (snap.trust.weights.size() >= trace.row_ids.size() ||
                   trace.row_ids[snap.trust.weights.size()] != row) {
            throw DataError("read_trace_csv: row order differs between iterations");
        }
        snap.trust.raw_complexity.push_back(static_cast<std::size_t>(v[2]));
        snap.trust.normalized.push_back(v[3]);
        snap.trust.trust.push_back(v[4]);
        snap.trust.weights.push_back(v[5]);
    }
    if (trace.iterations.empty()) throw DataError("read_trace_csv: no rows");
    for (const auto& it : trace.iterations)
        if (it.trust.weights.size() != trace.row_ids.size())
            throw DataError("read_trace_csv: iteration " + std::to_string(it.iteration) + " has a different row count");
    return trace;
}

}  // namespace itboost
