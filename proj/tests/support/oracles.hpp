#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls into the code under test except to build inputs.

#include "pathmine/clustering.hpp"
#include "pathmine/features.hpp"
#include "pathmine/path_model.hpp"
#include "pathmine/xml_tree.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

using pathmine::DocumentTree;
using pathmine::ExtractionParams;
using pathmine::NodeId;
using pathmine::NodeKind;
using pathmine::TextMode;

// ---------------------------------------------------------------------------
// Random inputs

/// Random labeled tree with at most `max_nodes` element/attribute nodes and
/// element depth at most `max_depth`. Text nodes carry tokens directly.
inline DocumentTree random_tree(std::mt19937_64& rng, std::size_t max_nodes = 30, std::size_t max_depth = 6) {
    static const std::vector<std::string> labels{"a", "b", "c", "d", "x.y", "e\\f"};
    static const std::vector<std::string> words{"alpha", "beta", "gamma", "delta", "omega"};
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    auto coin = [&](double p) { return std::bernoulli_distribution(p)(rng); };
    auto some_tokens = [&] {
        std::vector<std::string> t(1 + pick(3));
        for (auto& w : t) w = words[pick(words.size())];
        return t;
    };

    pathmine::TreeBuilder b("random");
    std::vector<std::pair<NodeId, std::size_t>> elements{{b.add_root(labels[pick(labels.size())]), 1}};
    const std::size_t target = 1 + pick(max_nodes);
    std::size_t nodes = 1;
    while (nodes < target) {
        const auto [parent, depth] = elements[pick(elements.size())];
        const std::size_t roll = pick(10);
        if (roll < 5 && depth < max_depth) {
            elements.emplace_back(b.add_element(parent, labels[pick(labels.size())]), depth + 1);
            ++nodes;
        } else if (roll < 7) {
            const NodeId attr = b.add_attribute(parent, "at" + std::to_string(pick(3)), "v");
            ++nodes;
            const auto& children = b.peek().node(attr).children;
            if (!children.empty() && coin(0.8)) b.set_tokens(children.front(), some_tokens());
        } else {
            const NodeId text = b.add_text(parent, "t");
            b.set_tokens(text, coin(0.9) ? some_tokens() : std::vector<std::string>{});
        }
    }
    return std::move(b).build();
}

inline ExtractionParams random_params(std::mt19937_64& rng) {
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    ExtractionParams p;
    p.min_len = 1 + pick(5);
    if (pick(5) == 0) p.max_len.reset();
    else p.max_len = p.min_len + pick(4);
    p.root_only = pick(2) == 1;
    p.leaf_only = pick(2) == 1;
    p.text_mode = static_cast<TextMode>(pick(3));
    p.include_attributes = pick(2) == 1;
    return p;
}

// ---------------------------------------------------------------------------
// Brute-force sliding-window path oracle

inline std::string escape_label(const pathmine::Node& n) {
    std::string s;
    for (char c : n.label) {
        if (c == '.' || c == '\\') s += '\\';
        s += c;
    }
    if (n.kind == NodeKind::Attribute) s += '@';
    return s;
}

/// Label as stored in PathKey::labels(): unescaped, `@` on attributes.
inline std::string key_label(const pathmine::Node& n) {
    return n.kind == NodeKind::Attribute ? n.label + "@" : n.label;
}

inline bool structural(const pathmine::Node& n) { return n.kind != NodeKind::Text; }

inline bool oracle_leaf(const DocumentTree& t, NodeId id) {
    for (NodeId c : t.node(id).children)
        if (structural(t.node(c))) return false;
    return true;
}

/// Every root-to-leaf branch is materialized and every window of every
/// length is slid along it; a window occurrence is its (first, last) node
/// pair, so windows shared by several branches count once.
inline std::map<std::string, std::uint64_t> window_oracle(const DocumentTree& t, const ExtractionParams& p) {
    std::vector<std::vector<NodeId>> branches;
    std::vector<NodeId> branch;
    std::function<void(NodeId)> walk = [&](NodeId id) {
        branch.push_back(id);
        bool any = false;
        for (NodeId c : t.node(id).children) {
            if (!structural(t.node(c))) continue;
            any = true;
            walk(c);
        }
        if (!any) branches.push_back(branch);
        branch.pop_back();
    };
    walk(t.root());

    std::set<std::pair<NodeId, NodeId>> seen;
    std::vector<std::vector<NodeId>> windows;
    for (const auto& br : branches)
        for (std::size_t i = 0; i < br.size(); ++i)
            for (std::size_t j = i + 1; j <= br.size(); ++j)
                if (seen.emplace(br[i], br[j - 1]).second)
                    windows.emplace_back(br.begin() + static_cast<std::ptrdiff_t>(i),
                                         br.begin() + static_cast<std::ptrdiff_t>(j));

    auto admits = [&](std::size_t l) { return l >= p.min_len && (!p.max_len || l <= *p.max_len); };

    // Tokens of every Text node below `id`, not crossing excluded attributes.
    std::function<void(NodeId, std::vector<std::string>&)> words = [&](NodeId id, std::vector<std::string>& out) {
        for (NodeId c : t.node(id).children) {
            const auto& n = t.node(c);
            if (n.kind == NodeKind::Text) out.insert(out.end(), n.tokens.begin(), n.tokens.end());
            else if (n.kind == NodeKind::Element || p.include_attributes) words(c, out);
        }
    };

    std::map<std::string, std::uint64_t> out;
    for (const auto& w : windows) {
        bool has_attr = false;
        for (NodeId id : w) has_attr |= t.node(id).kind == NodeKind::Attribute;
        if (has_attr && !p.include_attributes) continue;
        if (p.root_only && w.front() != t.root()) continue;
        if (p.leaf_only && !oracle_leaf(t, w.back())) continue;
        std::string labels;
        for (std::size_t i = 0; i < w.size(); ++i) labels += (i ? "." : "") + escape_label(t.node(w[i]));
        if (p.text_mode != TextMode::TextOnly && admits(w.size())) ++out[labels];
        if (p.text_mode != TextMode::None && admits(w.size() + 1)) {
            std::vector<std::string> ws;
            words(w.back(), ws);
            for (const auto& word : ws) ++out[labels + ".\"" + word + "\""];
        }
    }
    if (p.text_mode != TextMode::None && admits(1) && !p.root_only && !p.leaf_only) {
        std::vector<std::string> ws;
        for (const auto& n : t.nodes())
            if (n.kind == NodeKind::Text) {
                // Reachable only when no attribute sits above it, or attributes are on.
                bool blocked = false;
                for (auto up = n.parent; up && !blocked; up = t.node(*up).parent)
                    blocked = t.node(*up).kind == NodeKind::Attribute && !p.include_attributes;
                if (!blocked) ws.insert(ws.end(), n.tokens.begin(), n.tokens.end());
            }
        for (const auto& word : ws) ++out["\"" + word + "\""];
    }
    return out;
}

inline std::map<std::string, std::uint64_t> as_strings(const pathmine::PathBag& bag) {
    std::map<std::string, std::uint64_t> out;
    for (const auto& [k, v] : bag.counts) out[k.str()] = v;
    return out;
}

// ---------------------------------------------------------------------------
// Partitions and pair counting

/// Calls f(labels) for every set partition of n items as a restricted growth
/// string; with `blocks` set, only partitions into exactly that many blocks.
inline void for_each_partition(std::size_t n, std::size_t blocks,
                               const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> a(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
        if (i == n) {
            if (blocks == 0 || used == blocks) f(a);
            return;
        }
        if (blocks != 0 && used + (n - i) < blocks) return;
        for (std::size_t v = 0; v <= used && (blocks == 0 || v < blocks); ++v) {
            a[i] = v;
            rec(i + 1, std::max(used, v + 1));
        }
    };
    if (n == 0) f(a);
    else rec(0, 0);
}

/// Adjusted Rand index from the four pair counts over all item pairs.
inline double pair_counting_ari(const std::vector<std::size_t>& x, const std::vector<std::size_t>& y) {
    std::int64_t a = 0, b = 0, c = 0, d = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            const bool sx = x[i] == x[j], sy = y[i] == y[j];
            if (sx && sy) ++a;
            else if (sx) ++b;
            else if (sy) ++c;
            else ++d;
        }
    const std::int64_t num = 2 * (a * d - b * c);
    const std::int64_t den = (a + b) * (b + d) + (a + c) * (c + d);
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

// ---------------------------------------------------------------------------
// k-means

/// Within-cluster sum of squared distances to the member mean.
inline double partition_cost(const std::vector<std::vector<double>>& rows, const std::vector<std::size_t>& labels,
                             std::size_t k) {
    const std::size_t dim = rows.empty() ? 0 : rows.front().size();
    std::vector<std::vector<double>> mean(k, std::vector<double>(dim, 0.0));
    std::vector<std::size_t> size(k, 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        ++size[labels[i]];
        for (std::size_t j = 0; j < dim; ++j) mean[labels[i]][j] += rows[i][j];
    }
    for (std::size_t c = 0; c < k; ++c)
        for (double& v : mean[c]) v /= static_cast<double>(size[c]);
    double cost = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < dim; ++j) {
            const double diff = rows[i][j] - mean[labels[i]][j];
            cost += diff * diff;
        }
    return cost;
}

inline double exhaustive_minimum(const std::vector<std::vector<double>>& rows, std::size_t k) {
    double best = std::numeric_limits<double>::infinity();
    for_each_partition(rows.size(), k,
                       [&](const std::vector<std::size_t>& labels) { best = std::min(best, partition_cost(rows, labels, k)); });
    return best;
}

/// Matrix whose rows are strictly positive and sum to 1 in every group.
/// `group_sizes` lists the width of each group.
inline pathmine::FeatureMatrix random_matrix(std::mt19937_64& rng, std::size_t docs,
                                             const std::vector<std::size_t>& group_sizes) {
    pathmine::FeatureMatrix m;
    std::size_t begin = 0;
    for (std::size_t g = 0; g < group_sizes.size(); ++g) {
        for (std::size_t j = 0; j < group_sizes[g]; ++j)
            m.vocab.push_back({pathmine::PathKey({"g" + std::to_string(g), "f" + std::to_string(j)}), 1, 1});
        m.groups.push_back({g + 1, {begin, begin + group_sizes[g]}});
        begin += group_sizes[g];
    }
    m.distinct_paths = m.vocab.size();
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (std::size_t d = 0; d < docs; ++d) {
        pathmine::DocumentRow row{"d" + std::to_string(d), {}};
        for (const auto& g : m.groups) {
            std::vector<double> w(g.range.size());
            double total = 0.0;
            for (double& v : w) total += (v = u(rng));
            for (std::size_t j = 0; j < w.size(); ++j)
                row.weights.push(static_cast<std::uint32_t>(g.range.begin + j), w[j] / total);
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

inline std::vector<std::vector<double>> dense_rows(const pathmine::FeatureMatrix& m) {
    std::vector<std::vector<double>> out;
    for (const auto& r : m.rows) out.push_back(r.weights.to_dense(m.dimension()));
    return out;
}

}  // namespace oracle
