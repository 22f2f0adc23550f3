#pragma once

#include "pathmine/path_model.hpp"
#include "pathmine/sparse.hpp"

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace pathmine {

enum class WeightScheme { Raw, TfOverCollection, TfIdf };

std::string_view to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(std::string_view s);

/// Which frequency the rare-path threshold counts.
enum class RareBasis { DocumentFrequency, CollectionFrequency };

struct PruneRules {
    /// Paths below this frequency (see rare_basis) are dropped; 2 removes
    /// collection singletons.
    std::size_t min_doc_freq = 2;
    RareBasis rare_basis = RareBasis::DocumentFrequency;
    /// Upper document-frequency bound as a fraction of the corpus: a path
    /// survives when df <= ceil(ratio * N), except that ratio 1.0 excludes
    /// paths present in every document unless keep_universal is set.
    double max_doc_freq_ratio = 1.0;
    bool keep_universal = false;
    WeightScheme weight_scheme = WeightScheme::TfOverCollection;
    /// Rescale each document's group sub-vectors to sum 1.
    bool length_normalize = true;
    /// Distinct paths allowed before pruning; beyond it VocabularyTooLarge.
    std::size_t vocab_cap = 5'000'000;

    void validate() const;
    std::size_t max_df(std::size_t docs) const;
};

struct VocabEntry {
    PathKey key;
    std::size_t df = 0;     // documents containing the path
    std::uint64_t cf = 0;   // occurrences in the whole collection
};

/// Paths sharing one length, treated as one independent variable.
struct VariableGroup {
    std::size_t length = 0;
    IndexRange range;
};

struct DocumentRow {
    std::string doc_id;
    SparseVector weights;
};

/// Corpus matrix. Vocabulary is sorted by path length, then by serialized
/// path, so every group occupies a contiguous index range.
struct FeatureMatrix {
    std::vector<VocabEntry> vocab;
    std::vector<VariableGroup> groups;
    std::vector<DocumentRow> rows;  // input order
    std::size_t distinct_paths = 0; // before pruning

    std::size_t dimension() const noexcept { return vocab.size(); }
    std::vector<IndexRange> group_ranges() const;
    const DocumentRow* find_row(std::string_view doc_id) const;
};

/// Number of distinct paths across all bags.
std::size_t count_distinct_paths(std::span<const PathBag> bags);

/// Prunes, weights and normalizes. Throws DegenerateCorpus, EmptyVocabulary,
/// VocabularyTooLarge.
FeatureMatrix build_matrix(std::span<const PathBag> bags, const PruneRules& rules);

struct VocabularyReport {
    std::size_t docs = 0;
    std::size_t distinct_paths = 0;
    std::size_t vocab_size = 0;
    std::vector<std::pair<std::size_t, std::size_t>> group_sizes;  // (path length, entries)
    std::size_t nonzeros = 0;
    double density = 0.0;
};

VocabularyReport vocabulary_report(const FeatureMatrix& matrix);

void write_report(std::ostream& out, const VocabularyReport& report);

/// Text dump: `#vocab <size> #docs <N> #groups <G>`, one line per vocabulary
/// entry `<index> <group length> <path> <df> <cf>`, then one line per
/// document `<doc_id> <index>:<weight> ...`.
void write_matrix(std::ostream& out, const FeatureMatrix& matrix);

/// Shortest round-trip decimal for a double.
std::string format_double(double v);

}  // namespace pathmine
