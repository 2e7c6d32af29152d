#pragma once

// Independent reference implementations used as test oracles. None of
// these share code with the library beyond its public data types.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "itboost/dataset.hpp"

namespace oracle {

/// LZ76 by definition: each phrase is extended while it still occurs as a
/// substring of everything before its last symbol. Quadratic-or-worse on
/// purpose; only for short inputs.
inline std::size_t brute_lz76(const std::vector<std::uint8_t>& s) {
    const std::size_t n = s.size();
    std::size_t count = 0, p = 0;
    while (p < n) {
        std::size_t len = 1;
        for (;;) {
            if (p + len > n) break;  // incomplete last phrase
            // Does s[p, p+len) occur starting anywhere in [0, p+len-1)?
            bool found = false;
            for (std::size_t q = 0; q + len <= p + len - 1 && !found; ++q) {
                found = std::equal(s.begin() + static_cast<std::ptrdiff_t>(q),
                                   s.begin() + static_cast<std::ptrdiff_t>(q + len),
                                   s.begin() + static_cast<std::ptrdiff_t>(p));
            }
            if (!found) break;
            ++len;
        }
        ++count;
        p += len;
    }
    return count;
}

inline std::vector<std::uint8_t> symbols_of(const std::string& text) {
    std::vector<std::uint8_t> out;
    for (char c : text) out.push_back(static_cast<std::uint8_t>(c - '0'));
    return out;
}

// ---------------------------------------------------------------------------
// Greedy exhaustive split search: at every node, every (feature, midpoint)
// candidate is scored by direct summation over its two children.

struct Rows {
    std::vector<double> x;  // row-major
    std::size_t d = 0;
    std::vector<double> g, w;

    double at(std::size_t i, std::size_t j) const { return x[i * d + j]; }
    std::size_t size() const { return g.size(); }
};

inline double weighted_sse(const Rows& r, const std::vector<std::size_t>& idx) {
    double sw = 0.0, swg = 0.0;
    for (auto i : idx) {
        sw += r.w[i];
        swg += r.w[i] * r.g[i];
    }
    if (sw <= 0.0) return 0.0;
    const double mean = swg / sw;
    double sse = 0.0;
    for (auto i : idx) sse += r.w[i] * (r.g[i] - mean) * (r.g[i] - mean);
    return sse;
}

/// Weighted training SSE of the greedy tree built by exhaustive per-node
/// search with the same stopping rules as the library (depth, 2*min_leaf
/// positive-weight rows, strict improvement).
inline double greedy_tree_sse(const Rows& r, const std::vector<std::size_t>& members, int depth, int max_depth,
                              std::size_t min_leaf) {
    std::vector<std::size_t> active;
    for (auto i : members)
        if (r.w[i] > 0.0) active.push_back(i);
    const double here = weighted_sse(r, active);
    if (depth >= max_depth || active.size() < 2 * min_leaf || here <= 0.0) return here;

    double best = here;
    std::vector<std::size_t> best_left, best_right;
    bool found = false;
    for (std::size_t f = 0; f < r.d; ++f) {
        std::vector<double> values;
        for (auto i : active) values.push_back(r.at(i, f));
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        for (std::size_t t = 0; t + 1 < values.size(); ++t) {
            const double thr = 0.5 * (values[t] + values[t + 1]);
            std::vector<std::size_t> l, rr;
            for (auto i : active) (r.at(i, f) <= thr ? l : rr).push_back(i);
            if (l.size() < min_leaf || rr.size() < min_leaf) continue;
            const double sse = weighted_sse(r, l) + weighted_sse(r, rr);
            if (sse < best - 1e-12 * std::max(1.0, here)) {
                best = sse;
                best_left = l;
                best_right = rr;
                found = true;
            }
        }
    }
    if (!found) return here;
    return greedy_tree_sse(r, best_left, depth + 1, max_depth, min_leaf) +
           greedy_tree_sse(r, best_right, depth + 1, max_depth, min_leaf);
}

// ---------------------------------------------------------------------------
// Plain (unweighted) gradient boosting with logistic loss, written from
// scratch. Summation conventions: node totals accumulate in ascending row
// order; a candidate's left side accumulates in sorted order (ties by row
// index) and its right side is total minus left.

struct RefNode {
    bool leaf = true;
    std::size_t feature = 0;
    double threshold = 0.0;
    double value = 0.0;
    int left = -1, right = -1;
};

struct RefTree {
    std::vector<RefNode> nodes;

    double predict(const double* x) const {
        int i = 0;
        while (!nodes[static_cast<std::size_t>(i)].leaf) {
            const auto& n = nodes[static_cast<std::size_t>(i)];
            i = x[n.feature] <= n.threshold ? n.left : n.right;
        }
        return nodes[static_cast<std::size_t>(i)].value;
    }
};

class RefGbdt {
public:
    RefGbdt(const std::vector<double>& x, std::size_t d, const std::vector<int>& y, int m, double nu, int depth)
        : x_(x), d_(d), y_(y), depth_(depth) {
        const std::size_t n = y.size();
        double pos = 0.0;
        for (int v : y) pos += v > 0 ? 1.0 : 0.0;
        init_ = std::log(pos / (static_cast<double>(n) - pos));
        std::vector<double> f(n, init_);
        for (int it = 0; it < m; ++it) {
            g_.assign(n, 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const double yf = y[i] * f[i];
                g_[i] = yf > 500.0 ? y[i] * std::exp(-yf) : y[i] / (1.0 + std::exp(yf));
            }
            RefTree t;
            std::vector<std::size_t> all(n);
            for (std::size_t i = 0; i < n; ++i) all[i] = i;
            grow(t, all, 0);
            for (std::size_t i = 0; i < n; ++i) f[i] += nu * t.predict(&x_[i * d_]);
            trees_.push_back(std::move(t));
        }
    }

    double init() const { return init_; }
    const std::vector<RefTree>& trees() const { return trees_; }

private:
    int grow(RefTree& t, const std::vector<std::size_t>& rows, int depth) {
        const int id = static_cast<int>(t.nodes.size());
        t.nodes.emplace_back();
        double cnt = 0.0, s = 0.0, ss = 0.0;
        for (auto i : rows) {
            cnt += 1.0;
            s += g_[i];
            ss += g_[i] * g_[i];
        }
        t.nodes.back().value = s / cnt;
        const double sse = std::max(0.0, ss - s * s / cnt);
        if (depth >= depth_ || rows.size() < 2 || sse <= 1e-14 * ss) return id;

        double best = sse, best_thr = 0.0;
        long best_f = -1;
        for (std::size_t f = 0; f < d_; ++f) {
            std::vector<std::pair<double, std::size_t>> v;
            for (auto i : rows) v.emplace_back(x_[i * d_ + f], i);
            std::sort(v.begin(), v.end());
            double lc = 0.0, ls = 0.0, lss = 0.0;
            for (std::size_t k = 0; k + 1 < v.size(); ++k) {
                const double gi = g_[v[k].second];
                lc += 1.0;
                ls += gi;
                lss += gi * gi;
                if (!(v[k].first < v[k + 1].first)) continue;
                const double rc = cnt - lc, rs = s - ls, rss = ss - lss;
                const double cand = std::max(0.0, lss - ls * ls / lc) + std::max(0.0, rss - rs * rs / rc);
                if (cand < best) {
                    best = cand;
                    best_f = static_cast<long>(f);
                    best_thr = 0.5 * (v[k].first + v[k + 1].first);
                    if (!(best_thr < v[k + 1].first)) best_thr = v[k].first;
                }
            }
        }
        if (best_f < 0) return id;
        std::vector<std::size_t> l, r;
        for (auto i : rows) (x_[i * d_ + static_cast<std::size_t>(best_f)] <= best_thr ? l : r).push_back(i);
        const int li = grow(t, l, depth + 1);
        const int ri = grow(t, r, depth + 1);
        auto& node = t.nodes[static_cast<std::size_t>(id)];
        node.leaf = false;
        node.feature = static_cast<std::size_t>(best_f);
        node.threshold = best_thr;
        node.left = li;
        node.right = ri;
        return id;
    }

    const std::vector<double>& x_;
    std::size_t d_;
    const std::vector<int>& y_;
    int depth_;
    double init_ = 0.0;
    std::vector<double> g_;
    std::vector<RefTree> trees_;
};

// ---------------------------------------------------------------------------

/// Upper tail of chi-square with 1 degree of freedom: erfc(sqrt(x/2)).
inline double chi2_sf_1dof(double x) { return std::erfc(std::sqrt(x / 2.0)); }

/// Random dataset with a weak linear signal; both classes always present.
inline itboost::Dataset random_dataset(std::size_t n, std::size_t d, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> z(0.0, 1.0);
    std::vector<double> x(n * d);
    std::vector<int> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            x[i * d + j] = z(rng);
            s += x[i * d + j];
        }
        y[i] = s + z(rng) > 0.0 ? 1 : -1;
    }
    y[0] = 1;
    y[n - 1] = -1;
    std::vector<itboost::RowId> ids(n);
    for (std::size_t i = 0; i < n; ++i) ids[i] = i;
    return itboost::Dataset(std::move(x), d, std::move(y), std::move(ids), {});
}

/// Scratch directory removed on destruction.
class TempDir {
public:
    TempDir() {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / ("itboost-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace oracle
