#include "pathmine/features.hpp"

#include "pathmine/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

namespace pathmine {

SparseVector SparseVector::from_dense(std::span<const double> dense) {
    SparseVector v;
    for (std::size_t i = 0; i < dense.size(); ++i)
        if (dense[i] != 0.0) v.push(static_cast<std::uint32_t>(i), dense[i]);
    return v;
}

std::vector<double> SparseVector::to_dense(std::size_t dimension) const {
    std::vector<double> out(dimension, 0.0);
    for (std::size_t k = 0; k < indices.size(); ++k) out.at(indices[k]) = values[k];
    return out;
}

std::string_view to_string(WeightScheme scheme) {
    switch (scheme) {
    case WeightScheme::Raw: return "raw";
    case WeightScheme::TfOverCollection: return "tf-over-collection";
    case WeightScheme::TfIdf: return "tf-idf";
    }
    return "raw";
}

WeightScheme parse_weight_scheme(std::string_view s) {
    if (s == "raw") return WeightScheme::Raw;
    if (s == "tf-over-collection" || s == "tfcf") return WeightScheme::TfOverCollection;
    if (s == "tf-idf" || s == "tfidf") return WeightScheme::TfIdf;
    throw InvalidParams("unknown weight scheme '" + std::string(s) + "' (raw, tf-over-collection, tf-idf)");
}

void PruneRules::validate() const {
    if (!(max_doc_freq_ratio > 0.0 && max_doc_freq_ratio <= 1.0))
        throw InvalidParams("max_doc_freq_ratio must lie in (0, 1]");
}

std::size_t PruneRules::max_df(std::size_t docs) const {
    if (max_doc_freq_ratio >= 1.0) return keep_universal ? docs : docs - 1;
    // Guard against ratio * N landing a hair above an integer.
    return static_cast<std::size_t>(std::ceil(max_doc_freq_ratio * static_cast<double>(docs) - 1e-9));
}

std::vector<IndexRange> FeatureMatrix::group_ranges() const {
    std::vector<IndexRange> out;
    out.reserve(groups.size());
    for (const VariableGroup& g : groups) out.push_back(g.range);
    return out;
}

const DocumentRow* FeatureMatrix::find_row(std::string_view doc_id) const {
    for (const DocumentRow& r : rows)
        if (r.doc_id == doc_id) return &r;
    return nullptr;
}

std::size_t count_distinct_paths(std::span<const PathBag> bags) {
    std::unordered_set<std::string_view> seen;
    for (const PathBag& bag : bags)
        for (const auto& [key, count] : bag.counts) seen.insert(key.str());
    return seen.size();
}

FeatureMatrix build_matrix(std::span<const PathBag> bags, const PruneRules& rules) {
    rules.validate();
    if (bags.size() < 2) throw DegenerateCorpus(bags.size());
    {
        std::unordered_set<std::string_view> ids;
        for (const PathBag& bag : bags)
            if (!ids.insert(bag.doc_id).second) throw CorpusError("duplicate document id '" + bag.doc_id + "'");
    }

    // Pass 1: collection statistics.
    struct Stats {
        const PathKey* key;
        std::size_t df = 0;
        std::uint64_t cf = 0;
    };
    std::unordered_map<std::string_view, Stats> stats;
    for (const PathBag& bag : bags) {
        for (const auto& [key, count] : bag.counts) {
            auto [it, fresh] = stats.try_emplace(key.str(), Stats{&key});
            ++it->second.df;
            it->second.cf += count;
        }
    }

    FeatureMatrix m;
    m.distinct_paths = stats.size();
    if (m.distinct_paths > rules.vocab_cap) throw VocabularyTooLarge(m.distinct_paths, rules.vocab_cap);

    const std::size_t n_docs = bags.size();
    const std::size_t max_df = rules.max_df(n_docs);
    for (const auto& [text, s] : stats) {
        const std::uint64_t rarity = rules.rare_basis == RareBasis::DocumentFrequency ? s.df : s.cf;
        if (rarity < rules.min_doc_freq || s.df > max_df) continue;
        m.vocab.push_back(VocabEntry{*s.key, s.df, s.cf});
    }
    if (m.vocab.empty()) throw EmptyVocabulary();

    std::sort(m.vocab.begin(), m.vocab.end(), [](const VocabEntry& a, const VocabEntry& b) {
        if (a.key.length() != b.key.length()) return a.key.length() < b.key.length();
        return a.key < b.key;
    });
    for (std::size_t j = 0; j < m.vocab.size(); ++j) {
        const std::size_t len = m.vocab[j].key.length();
        if (m.groups.empty() || m.groups.back().length != len) m.groups.push_back({len, {j, j}});
        m.groups.back().range.end = j + 1;
    }

    std::unordered_map<std::string_view, std::uint32_t> index;
    index.reserve(m.vocab.size());
    for (std::size_t j = 0; j < m.vocab.size(); ++j)
        index.emplace(m.vocab[j].key.str(), static_cast<std::uint32_t>(j));

    // Pass 2: per-document weights.
    m.rows.reserve(n_docs);
    for (const PathBag& bag : bags) {
        std::vector<std::pair<std::uint32_t, double>> entries;
        for (const auto& [key, count] : bag.counts) {
            const auto it = index.find(key.str());
            if (it == index.end()) continue;
            const VocabEntry& v = m.vocab[it->second];
            const double tf = static_cast<double>(count);
            double w = tf;
            if (rules.weight_scheme == WeightScheme::TfOverCollection) {
                w = tf / static_cast<double>(v.cf);
            } else if (rules.weight_scheme == WeightScheme::TfIdf) {
                w = tf * std::log(static_cast<double>(n_docs) / static_cast<double>(v.df));
            }
            entries.emplace_back(it->second, w);
        }
        std::sort(entries.begin(), entries.end());

        DocumentRow row{bag.doc_id, {}};
        std::size_t k = 0;
        for (const VariableGroup& g : m.groups) {
            const std::size_t first = k;
            double mass = 0.0;
            while (k < entries.size() && entries[k].first < g.range.end) mass += entries[k++].second;
            const bool rescale = rules.length_normalize && mass > 0.0;
            for (std::size_t e = first; e < k; ++e) {
                const double w = rescale ? entries[e].second / mass : entries[e].second;
                if (w != 0.0) row.weights.push(entries[e].first, w);
            }
        }
        m.rows.push_back(std::move(row));
    }
    return m;
}

VocabularyReport vocabulary_report(const FeatureMatrix& matrix) {
    VocabularyReport r;
    r.docs = matrix.rows.size();
    r.distinct_paths = matrix.distinct_paths;
    r.vocab_size = matrix.vocab.size();
    for (const VariableGroup& g : matrix.groups) r.group_sizes.emplace_back(g.length, g.range.size());
    for (const DocumentRow& row : matrix.rows) r.nonzeros += row.weights.nnz();
    const double cells = static_cast<double>(r.docs) * static_cast<double>(r.vocab_size);
    r.density = cells > 0 ? static_cast<double>(r.nonzeros) / cells : 0.0;
    return r;
}

std::string format_double(double v) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

void write_report(std::ostream& out, const VocabularyReport& r) {
    out << "docs = " << r.docs << '\n'
        << "distinct_paths = " << r.distinct_paths << '\n'
        << "vocab_size = " << r.vocab_size << '\n'
        << "groups = " << r.group_sizes.size() << '\n';
    for (const auto& [len, size] : r.group_sizes) out << "group." << len << " = " << size << '\n';
    out << "nonzeros = " << r.nonzeros << '\n' << "density = " << format_double(r.density) << '\n';
}

void write_matrix(std::ostream& out, const FeatureMatrix& m) {
    out << "#vocab " << m.vocab.size() << " #docs " << m.rows.size() << " #groups " << m.groups.size() << '\n';
    for (const VariableGroup& g : m.groups)
        for (std::size_t j = g.range.begin; j < g.range.end; ++j)
            out << j << ' ' << g.length << ' ' << m.vocab[j].key.str() << ' ' << m.vocab[j].df << ' '
                << m.vocab[j].cf << '\n';
    for (const DocumentRow& row : m.rows) {
        out << row.doc_id;
        for (std::size_t k = 0; k < row.weights.nnz(); ++k)
            out << ' ' << row.weights.indices[k] << ':' << format_double(row.weights.values[k]);
        out << '\n';
    }
}

}  // namespace pathmine
