#pragma once

#include "pathmine/clustering.hpp"
#include "pathmine/features.hpp"
#include "pathmine/metrics.hpp"
#include "pathmine/path_model.hpp"
#include "pathmine/tokenize.hpp"
#include "pathmine/xml_tree.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pathmine {

/// Lists swept by `sweep`; an empty list leaves that parameter at its base
/// value. `length` sets min and max together; `anchor` takes root, leaf,
/// both or none and sets the root/leaf pair together.
struct SweepSpec {
    std::vector<std::size_t> length;
    std::vector<std::size_t> min_len;
    std::vector<std::optional<std::size_t>> max_len;
    std::vector<std::string> anchor;
    std::vector<bool> root;
    std::vector<bool> leaf;
    std::vector<std::size_t> k;
    bool parallel = false;

    bool empty() const;
};

struct ExperimentConfig {
    std::filesystem::path corpus_dir;
    std::optional<std::filesystem::path> manifest;
    std::optional<std::filesystem::path> tagmap_path;
    std::optional<std::filesystem::path> stoplist_path;
    std::optional<std::filesystem::path> labels_path;
    std::filesystem::path output_dir = "run";
    bool dump_matrix = false;

    ExtractionParams extraction;
    TokenPipeline tokens;
    PruneRules prune;
    ClusterConfig cluster;
    SweepSpec sweep;
};

/// Every `section.key` accepted by apply_setting, in documentation order.
std::vector<std::string> config_keys();

/// Sets one dotted key. Throws ConfigError.
void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value);

/// `key = value` lines under `[section]` headers; `#` and `;` start comments.
ExperimentConfig parse_config(std::string_view text, ExperimentConfig base = {});
ExperimentConfig load_config(const std::filesystem::path& file, ExperimentConfig base = {});

/// One concrete parameter combination of a sweep.
struct RunSpec {
    std::size_t index = 0;
    ExtractionParams extraction;
    ClusterConfig cluster;
    std::string name;  // directory name under runs/
};

/// Cross product of the sweep lists (length, then k, then anchor), or the
/// base configuration alone. Every combination is validated.
std::vector<RunSpec> expand_sweep(const ExperimentConfig& config);

struct ParsedCorpus {
    std::vector<DocumentTree> docs;                                  // tokenized, tag-mapped
    std::vector<std::pair<std::string, std::string>> failures;       // (doc_id, message)
};

/// Files of the corpus as (doc_id, path): the manifest's entries, or every
/// *.xml file below corpus_dir. Ids are paths relative to the corpus root,
/// sorted.
std::vector<std::pair<std::string, std::filesystem::path>> list_corpus(const ExperimentConfig& config);

/// Parses, tag-maps and tokenizes every file concurrently. A document that
/// fails is recorded in `failures` and skipped; fewer than two parsed
/// documents is a CorpusError.
ParsedCorpus load_corpus(const ExperimentConfig& config);

struct SummaryRow {
    RunSpec run;
    std::size_t vocab_size = 0;
    double objective = 0.0;
    std::size_t iterations = 0;
    std::optional<MetricsReport> metrics;
};

struct ExperimentResult {
    std::filesystem::path output_dir;
    std::vector<SummaryRow> rows;
    std::size_t parsed = 0;
    std::size_t failed = 0;
};

/// Runs every sweep combination and writes, under output_dir:
///   summary.csv, errors.log, run.log (the only file with timestamps) and
///   runs/<name>/{vocab.txt, assignments.tsv[, metrics.csv, metrics.txt,
///   contingency.csv, matrix.txt]}.
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Vocabulary report for the base extraction; when the cap is exceeded the
/// report carries only document and distinct-path counts.
struct VocabularyOutcome {
    VocabularyReport report;
    bool over_cap = false;
};
VocabularyOutcome corpus_vocabulary(const ExperimentConfig& config);

/// Paths of one bag in matrix order: by length, then serialized form.
std::vector<std::pair<PathKey, std::uint64_t>> sorted_paths(const PathBag& bag);

/// Writes `<path> <count>` lines for one file.
void dump_paths(std::ostream& out, const std::filesystem::path& file, const ExtractionParams& params,
                const TokenPipeline& pipeline, const TagMap& tags = {});

void write_assignments(std::ostream& out, const ClusterModel& model, const RunSpec& run);

}  // namespace pathmine
