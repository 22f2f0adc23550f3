// pathmine: extract, cluster, sweep, eval, vocab and generate over XML corpora.

#include "pathmine/error.hpp"
#include "pathmine/experiment.hpp"
#include "pathmine/synthetic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace pathmine;

constexpr int kExitConfig = 2;
constexpr int kExitCorpus = 3;
constexpr int kExitCapacity = 4;

/// Options shared by every corpus verb: a config file, the dotted keys, and
/// the short parameter flags, applied in that order.
struct Settings {
    std::string config_file;
    std::string preset_name;
    std::vector<std::pair<std::string, std::string>> dotted;
    std::map<std::string, std::string> dotted_values;

    std::optional<std::size_t> min_len;
    std::string max_len;
    std::optional<bool> root, leaf, attributes;
    std::string text;
    std::optional<std::size_t> k;
    std::optional<std::uint64_t> seed;

    void attach(CLI::App& app) {
        app.add_option("--config", config_file, "key = value configuration file")->check(CLI::ExistingFile);
        app.add_option("--preset", preset_name, "named extraction preset");
        app.add_option("--min-len", min_len, "minimum path length");
        app.add_option("--max-len", max_len, "maximum path length or *");
        app.add_flag("--root", root, "root-beginning paths only");
        app.add_flag("--leaf", leaf, "leaf-ending paths only");
        app.add_option("--text", text, "text mode")->check(CLI::IsMember({"none", "text", "text-and-node"}));
        app.add_flag("--attributes", attributes, "include attribute nodes");
        app.add_option("--k", k, "number of clusters");
        app.add_option("--seed", seed, "random seed");
        for (const std::string& key : config_keys())
            app.add_option("--" + key, dotted_values[key], "configuration key " + key)->group("Configuration keys");
    }

    ExperimentConfig resolve(const CLI::App& app) const {
        ExperimentConfig c = config_file.empty() ? ExperimentConfig{} : load_config(config_file);
        if (!preset_name.empty()) apply_setting(c, "extract.preset", preset_name);
        for (const std::string& key : config_keys())
            if (app.count("--" + key) > 0) apply_setting(c, key, dotted_values.at(key));
        if (min_len) c.extraction.min_len = *min_len;
        if (!max_len.empty()) apply_setting(c, "extract.max_len", max_len);
        if (root) c.extraction.root_only = *root;
        if (leaf) c.extraction.leaf_only = *leaf;
        if (attributes) c.extraction.include_attributes = *attributes;
        if (!text.empty()) c.extraction.text_mode = parse_text_mode(text);
        if (k) c.cluster.k = *k;
        if (seed) c.cluster.seed = *seed;
        return c;
    }
};

void print_summary(const ExperimentResult& r) {
    std::cout << "parsed " << r.parsed << " document(s), " << r.failed << " failed\n";
    for (const SummaryRow& row : r.rows) {
        std::cout << row.run.name << "  vocab=" << row.vocab_size << "  objective=" << format_double(row.objective)
                  << "  iterations=" << row.iterations;
        if (row.metrics)
            std::cout << "  purity=" << format_double(row.metrics->micro_purity)
                      << "  entropy=" << format_double(row.metrics->micro_entropy);
        std::cout << '\n';
    }
    std::cout << "wrote " << (r.output_dir / "summary.csv").string() << '\n';
}

int run(int argc, char** argv) {
    CLI::App app{"Sub-path extraction and clustering for XML collections"};
    app.require_subcommand(1);

    // extract
    Settings extract_settings;
    std::string extract_file;
    CLI::App* extract = app.add_subcommand("extract", "print the sub-paths of one document");
    extract->add_option("file", extract_file, "XML document")->required();
    extract_settings.attach(*extract);

    // cluster / sweep / vocab share the corpus settings
    Settings cluster_settings, sweep_settings, vocab_settings;
    std::string cluster_corpus, sweep_corpus, vocab_corpus;
    CLI::App* cluster_cmd = app.add_subcommand("cluster", "one clustering run over a corpus");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "every combination of the sweep lists");
    CLI::App* vocab_cmd = app.add_subcommand("vocab", "vocabulary size report");
    cluster_cmd->add_option("corpus", cluster_corpus, "corpus directory");
    sweep_cmd->add_option("corpus", sweep_corpus, "corpus directory");
    vocab_cmd->add_option("corpus", vocab_corpus, "corpus directory");
    cluster_settings.attach(*cluster_cmd);
    sweep_settings.attach(*sweep_cmd);
    vocab_settings.attach(*vocab_cmd);

    // eval
    std::string eval_assignments, eval_labels, eval_out;
    CLI::App* eval = app.add_subcommand("eval", "metrics for an existing assignment file");
    eval->add_option("assignments", eval_assignments, "assignments.tsv")->required()->check(CLI::ExistingFile);
    eval->add_option("labels", eval_labels, "doc<TAB>label file")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", eval_out, "directory for metrics.csv, metrics.txt and contingency.csv");

    // generate
    SyntheticSpec gen_spec;
    std::string gen_out;
    CLI::App* generate = app.add_subcommand("generate", "write a synthetic multi-schema corpus");
    generate->add_option("out", gen_out, "output directory")->required();
    generate->add_option("--schemas", gen_spec.schemas, "number of disjoint-tag schemas")->capture_default_str();
    generate->add_option("--docs", gen_spec.docs, "number of documents")->capture_default_str();
    generate->add_option("--seed", gen_spec.seed, "random seed")->capture_default_str();
    generate->add_flag("--text-heavy", gen_spec.text_heavy, "deeper nesting and longer text");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    auto with_corpus = [](ExperimentConfig c, const std::string& dir) {
        if (!dir.empty()) c.corpus_dir = dir;
        return c;
    };

    if (*extract) {
        const ExperimentConfig c = extract_settings.resolve(*extract);
        c.extraction.validate();
        TokenPipeline pipeline = c.tokens;
        if (c.stoplist_path) pipeline.stoplist = load_stoplist(*c.stoplist_path);
        const TagMap tags = c.tagmap_path ? TagMap::load(*c.tagmap_path) : TagMap{};
        dump_paths(std::cout, extract_file, c.extraction, pipeline, tags);
        return 0;
    }
    if (*cluster_cmd) {
        ExperimentConfig c = with_corpus(cluster_settings.resolve(*cluster_cmd), cluster_corpus);
        c.sweep = {};
        print_summary(run_experiment(c));
        return 0;
    }
    if (*sweep_cmd) {
        print_summary(run_experiment(with_corpus(sweep_settings.resolve(*sweep_cmd), sweep_corpus)));
        return 0;
    }
    if (*vocab_cmd) {
        const VocabularyOutcome v = corpus_vocabulary(with_corpus(vocab_settings.resolve(*vocab_cmd), vocab_corpus));
        write_report(std::cout, v.report);
        if (v.over_cap) {
            std::cerr << "pathmine: vocabulary exceeds the configured cap\n";
            return kExitCapacity;
        }
        return 0;
    }
    if (*eval) {
        const ContingencyTable t = contingency(read_label_file(eval_assignments), read_label_file(eval_labels));
        const MetricsReport m = evaluate(t);
        write_metrics(std::cout, m);
        if (!eval_out.empty()) {
            std::filesystem::create_directories(eval_out);
            std::ofstream(std::filesystem::path(eval_out) / "metrics.csv")
                << kMetricsCsvHeader << '\n' << metrics_csv_row(m) << '\n';
            std::ofstream txt(std::filesystem::path(eval_out) / "metrics.txt");
            write_metrics(txt, m);
            std::ofstream csv(std::filesystem::path(eval_out) / "contingency.csv");
            write_contingency_csv(csv, t);
        }
        return 0;
    }
    if (*generate) {
        write_corpus(gen_out, generate_corpus(gen_spec));
        std::cout << "wrote " << gen_spec.docs << " document(s) to " << gen_out << '\n';
        return 0;
    }
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const VocabularyTooLarge& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCapacity;
    } catch (const CorpusError& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCorpus;
    } catch (const MalformedXml& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCorpus;
    } catch (const EmptyDocument& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCorpus;
    } catch (const DegenerateCorpus& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCorpus;
    } catch (const EmptyVocabulary& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCorpus;
    } catch (const Error& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "pathmine: " << e.what() << '\n';
        return kExitCorpus;
    }
}
