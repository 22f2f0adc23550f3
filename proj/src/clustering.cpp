#include "pathmine/clustering.hpp"

#include "pathmine/error.hpp"
#include "pathmine/kernels.hpp"
#include "pathmine/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace pathmine {

std::string_view to_string(DistanceMode mode) { return mode == DistanceMode::Flat ? "flat" : "grouped"; }

DistanceMode parse_distance_mode(std::string_view s) {
    if (s == "flat") return DistanceMode::Flat;
    if (s == "grouped") return DistanceMode::Grouped;
    throw InvalidParams("unknown distance '" + std::string(s) + "' (flat, grouped)");
}

std::uint64_t mix_seed(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::map<std::string, std::size_t> ClusterModel::assignment_map() const {
    std::map<std::string, std::size_t> out;
    for (std::size_t i = 0; i < doc_ids.size(); ++i) out.emplace(doc_ids[i], assignments[i]);
    return out;
}

std::vector<std::size_t> ClusterModel::cluster_sizes() const {
    std::vector<std::size_t> sizes(k(), 0);
    for (std::size_t a : assignments) ++sizes[a];
    return sizes;
}

namespace {

void check_indices(const SparseVector& v, std::size_t dimension) {
    if (v.indices.size() != v.values.size()) throw DimensionMismatch(v.indices.size(), v.values.size());
    if (!v.indices.empty() && v.indices.back() >= dimension) throw DimensionMismatch(v.indices.back() + 1, dimension);
}

// Squared distance restricted to indices in [begin, end), by merging.
double sparse_squared(const SparseVector& x, const SparseVector& y, std::size_t begin, std::size_t end) {
    auto i = std::lower_bound(x.indices.begin(), x.indices.end(), begin) - x.indices.begin();
    auto j = std::lower_bound(y.indices.begin(), y.indices.end(), begin) - y.indices.begin();
    const auto xn = static_cast<std::ptrdiff_t>(x.nnz());
    const auto yn = static_cast<std::ptrdiff_t>(y.nnz());
    double s = 0.0;
    while ((i < xn && x.indices[i] < end) || (j < yn && y.indices[j] < end)) {
        const std::size_t xi = i < xn ? x.indices[i] : end;
        const std::size_t yj = j < yn ? y.indices[j] : end;
        double d;
        if (xi == yj) {
            d = x.values[i++] - y.values[j++];
        } else if (xi < yj) {
            d = x.values[i++];
        } else {
            d = y.values[j++];
        }
        s += d * d;
    }
    return s;
}

}  // namespace

double distance(const SparseVector& x, const SparseVector& y, std::span<const IndexRange> groups, DistanceMode mode,
                std::size_t dimension) {
    check_indices(x, dimension);
    check_indices(y, dimension);
    if (mode == DistanceMode::Flat) return std::sqrt(sparse_squared(x, y, 0, dimension));
    double s = 0.0;
    for (const IndexRange& g : groups) s += sparse_squared(x, y, g.begin, g.end);
    return std::sqrt(s);
}

double squared_distance(std::span<const double> x, std::span<const double> y, std::span<const IndexRange> groups,
                        DistanceMode mode) {
    if (x.size() != y.size()) throw DimensionMismatch(x.size(), y.size());
    if (mode == DistanceMode::Flat) return kernels::squared_distance(x, y);
    double s = 0.0;
    for (const IndexRange& g : groups)
        s += kernels::squared_distance(x.subspan(g.begin, g.size()), y.subspan(g.begin, g.size()));
    return s;
}

namespace {

void normalize_groups(std::span<double> v, std::span<const IndexRange> groups) {
    for (const IndexRange& g : groups) {
        const auto part = v.subspan(g.begin, g.size());
        const double mass = kernels::sum(part);
        if (mass > 0.0) kernels::divide(part, mass);
    }
}

void scatter_add(std::span<double> dense, const SparseVector& v) {
    for (std::size_t k = 0; k < v.nnz(); ++k) dense[v.indices[k]] += v.values[k];
}

}  // namespace

SparseVector compute_prototype(std::span<const SparseVector> members, bool normalize,
                               std::span<const IndexRange> groups, std::size_t dimension) {
    if (members.empty()) throw EmptyCluster();
    std::vector<double> acc(dimension, 0.0);
    for (const SparseVector& m : members) {
        check_indices(m, dimension);
        scatter_add(acc, m);
    }
    if (normalize) normalize_groups(acc, groups);
    return SparseVector::from_dense(acc);
}

namespace {

class KMeans {
public:
    KMeans(const FeatureMatrix& m, const ClusterConfig& c)
        : m_(m), c_(c), p_(m.dimension()), groups_(m.group_ranges()) {}

    ClusterModel run(std::span<const std::size_t> initial, std::uint64_t run_seed) {
        const std::size_t n = m_.rows.size();
        const std::size_t k = initial.size();
        std::vector<std::vector<double>> protos(k, std::vector<double>(p_, 0.0));
        for (std::size_t c = 0; c < k; ++c) {
            scatter_add(protos[c], m_.rows[initial[c]].weights);
            if (c_.prototype_normalize) normalize_groups(protos[c], groups_);
        }

        ClusterModel model;
        model.run_seed = run_seed;
        model.doc_ids.reserve(n);
        for (const DocumentRow& r : m_.rows) model.doc_ids.push_back(r.doc_id);

        std::vector<std::size_t> assign(n), previous;
        std::vector<double> own(n);
        for (std::size_t it = 1; it <= std::max<std::size_t>(1, c_.max_iterations); ++it) {
            assign_step(protos, assign, own);
            repair_empty(k, assign, own);
            const bool changed = assign != previous;
            update_step(protos, assign);
            model.objective_trace.push_back(objective(protos, assign));
            model.iterations = it;
            if (!changed) {
                model.converged = true;
                break;
            }
            previous = assign;
        }
        model.assignments = std::move(assign);
        model.prototypes = std::move(protos);
        model.objective = model.objective_trace.back();
        return model;
    }

private:
    double dist2(std::span<const double> x, std::span<const double> g) const {
        return squared_distance(x, g, groups_, c_.distance);
    }

    // Nearest prototype per document, lowest index on ties.
    void assign_step(const std::vector<std::vector<double>>& protos, std::vector<std::size_t>& assign,
                     std::vector<double>& own) const {
        const std::size_t n = m_.rows.size();
        const std::size_t grain = std::max<std::size_t>(1, (1u << 16) / std::max<std::size_t>(1, p_ * protos.size()));
        parallel_for(n, grain, [&](std::size_t, std::size_t begin, std::size_t end) {
            std::vector<double> x(p_, 0.0);
            for (std::size_t s = begin; s < end; ++s) {
                const SparseVector& row = m_.rows[s].weights;
                scatter_add(x, row);
                std::size_t best = 0;
                double best_d = std::numeric_limits<double>::infinity();
                for (std::size_t c = 0; c < protos.size(); ++c) {
                    const double d = dist2(x, protos[c]);
                    if (d < best_d) {
                        best_d = d;
                        best = c;
                    }
                }
                assign[s] = best;
                own[s] = best_d;
                for (std::uint32_t idx : row.indices) x[idx] = 0.0;
            }
        });
    }

    // Each empty cluster takes the document farthest from its prototype among
    // clusters that can spare one.
    static void repair_empty(std::size_t k, std::vector<std::size_t>& assign, std::vector<double>& own) {
        std::vector<std::size_t> sizes(k, 0);
        for (std::size_t a : assign) ++sizes[a];
        for (std::size_t e = 0; e < k; ++e) {
            if (sizes[e] != 0) continue;
            std::size_t pick = assign.size();
            for (std::size_t s = 0; s < assign.size(); ++s) {
                if (sizes[assign[s]] < 2) continue;
                if (pick == assign.size() || own[s] > own[pick]) pick = s;
            }
            if (pick == assign.size()) break;  // unreachable while k <= n
            --sizes[assign[pick]];
            assign[pick] = e;
            own[pick] = 0.0;
            ++sizes[e];
        }
    }

    void update_step(std::vector<std::vector<double>>& protos, const std::vector<std::size_t>& assign) const {
        for (auto& g : protos) std::fill(g.begin(), g.end(), 0.0);
        for (std::size_t s = 0; s < assign.size(); ++s) scatter_add(protos[assign[s]], m_.rows[s].weights);
        if (c_.prototype_normalize)
            for (auto& g : protos) normalize_groups(g, groups_);
    }

    double objective(const std::vector<std::vector<double>>& protos, const std::vector<std::size_t>& assign) const {
        const std::size_t n = assign.size();
        std::vector<double> per_doc(n, 0.0);
        parallel_for(n, std::max<std::size_t>(1, (1u << 16) / std::max<std::size_t>(1, p_)),
                     [&](std::size_t, std::size_t begin, std::size_t end) {
                         std::vector<double> x(p_, 0.0);
                         for (std::size_t s = begin; s < end; ++s) {
                             const SparseVector& row = m_.rows[s].weights;
                             scatter_add(x, row);
                             per_doc[s] = dist2(x, protos[assign[s]]);
                             for (std::uint32_t idx : row.indices) x[idx] = 0.0;
                         }
                     });
        // Fixed summation order keeps the objective independent of threading.
        return std::accumulate(per_doc.begin(), per_doc.end(), 0.0);
    }

    const FeatureMatrix& m_;
    const ClusterConfig& c_;
    std::size_t p_;
    std::vector<IndexRange> groups_;
};

void check_config(const FeatureMatrix& m, const ClusterConfig& c) {
    if (m.vocab.empty()) throw EmptyVocabulary();
    if (c.k < 1) throw InvalidParams("k must be at least 1");
    if (c.k > m.rows.size()) throw KTooLarge(c.k, m.rows.size());
}

// k distinct row indices, uniformly without replacement (partial Fisher-Yates).
std::vector<std::size_t> forgy(std::size_t n, std::size_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, n - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }
    idx.resize(k);
    return idx;
}

}  // namespace

ClusterModel cluster(const FeatureMatrix& matrix, const ClusterConfig& config) {
    check_config(matrix, config);
    KMeans km(matrix, config);
    ClusterModel best;
    bool have = false;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, config.restarts); ++r) {
        const std::uint64_t seed = mix_seed(config.seed + r);
        ClusterModel m = km.run(forgy(matrix.rows.size(), config.k, seed), seed);
        if (!have || m.objective < best.objective) {
            best = std::move(m);
            have = true;
        }
    }
    return best;
}

ClusterModel cluster_from(const FeatureMatrix& matrix, const ClusterConfig& config,
                          std::span<const std::string> initial_doc_ids) {
    ClusterConfig c = config;
    c.k = initial_doc_ids.size();
    check_config(matrix, c);
    std::vector<std::size_t> initial;
    for (const std::string& id : initial_doc_ids) {
        const DocumentRow* row = matrix.find_row(id);
        if (!row) throw InvalidParams("unknown initial document '" + id + "'");
        initial.push_back(static_cast<std::size_t>(row - matrix.rows.data()));
    }
    return KMeans(matrix, c).run(initial, c.seed);
}

}  // namespace pathmine
