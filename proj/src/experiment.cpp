#include "pathmine/experiment.hpp"

#include "pathmine/error.hpp"
#include "pathmine/parallel.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <sstream>

namespace pathmine {

namespace fs = std::filesystem;

bool SweepSpec::empty() const {
    return length.empty() && min_len.empty() && max_len.empty() && anchor.empty() && root.empty() && leaf.empty() &&
           k.empty();
}

// ---------------------------------------------------------------------------
// Settings

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
    throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) + " (expected " +
                      std::string(expected) + ")");
}

bool parse_bool(std::string_view key, std::string_view v) {
    const std::string s = trim(v);
    if (s == "true" || s == "yes" || s == "on" || s == "1" || s == "T") return true;
    if (s == "false" || s == "no" || s == "off" || s == "0" || s == "F") return false;
    bad_value(key, v, "a boolean");
}

std::uint64_t parse_uint(std::string_view key, std::string_view v) {
    const std::string s = trim(v);
    std::uint64_t out = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) bad_value(key, v, "a non-negative integer");
    return out;
}

double parse_real(std::string_view key, std::string_view v) {
    const std::string s = trim(v);
    double out = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) bad_value(key, v, "a number");
    return out;
}

std::optional<std::size_t> parse_max(std::string_view key, std::string_view v) {
    if (trim(v) == "*") return std::nullopt;
    return parse_uint(key, v);
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in{std::string(v)};
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

template <typename T, typename F>
std::vector<T> parse_list(std::string_view key, std::string_view v, F&& one) {
    std::vector<T> out;
    for (const std::string& item : split_list(v)) out.push_back(one(key, item));
    if (out.empty()) throw ConfigError("sweep list " + std::string(key) + " is empty");
    return out;
}

using Setter = std::function<void(ExperimentConfig&, std::string_view key, std::string_view value)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
    static const std::vector<std::pair<std::string, Setter>> table = [] {
        std::vector<std::pair<std::string, Setter>> t;
        auto add = [&](std::string key, Setter s) { t.emplace_back(std::move(key), std::move(s)); };
        using C = ExperimentConfig;
        using K = std::string_view;

        add("corpus.dir", [](C& c, K, K v) { c.corpus_dir = trim(v); });
        add("corpus.manifest", [](C& c, K, K v) { c.manifest = fs::path(trim(v)); });
        add("corpus.tagmap", [](C& c, K, K v) { c.tagmap_path = fs::path(trim(v)); });
        add("corpus.stoplist", [](C& c, K, K v) { c.stoplist_path = fs::path(trim(v)); });
        add("corpus.labels", [](C& c, K, K v) { c.labels_path = fs::path(trim(v)); });
        add("output.dir", [](C& c, K, K v) { c.output_dir = trim(v); });
        add("output.matrix", [](C& c, K k, K v) { c.dump_matrix = parse_bool(k, v); });

        add("extract.preset", [](C& c, K, K v) { c.extraction = preset(trim(v)); });
        add("extract.min_len", [](C& c, K k, K v) { c.extraction.min_len = parse_uint(k, v); });
        add("extract.max_len", [](C& c, K k, K v) { c.extraction.max_len = parse_max(k, v); });
        add("extract.root", [](C& c, K k, K v) { c.extraction.root_only = parse_bool(k, v); });
        add("extract.leaf", [](C& c, K k, K v) { c.extraction.leaf_only = parse_bool(k, v); });
        add("extract.text", [](C& c, K, K v) { c.extraction.text_mode = parse_text_mode(trim(v)); });
        add("extract.attributes", [](C& c, K k, K v) { c.extraction.include_attributes = parse_bool(k, v); });

        add("tokens.min_token_len", [](C& c, K k, K v) { c.tokens.min_token_len = parse_uint(k, v); });
        add("tokens.stem", [](C& c, K k, K v) { c.tokens.stem = parse_bool(k, v); });
        add("tokens.lowercase", [](C& c, K k, K v) { c.tokens.lowercase = parse_bool(k, v); });

        add("prune.min_doc_freq", [](C& c, K k, K v) { c.prune.min_doc_freq = parse_uint(k, v); });
        add("prune.rare_basis", [](C& c, K k, K v) {
            const std::string s = trim(v);
            if (s == "df") c.prune.rare_basis = RareBasis::DocumentFrequency;
            else if (s == "cf") c.prune.rare_basis = RareBasis::CollectionFrequency;
            else bad_value(k, v, "df or cf");
        });
        add("prune.max_doc_freq_ratio", [](C& c, K k, K v) { c.prune.max_doc_freq_ratio = parse_real(k, v); });
        add("prune.keep_universal", [](C& c, K k, K v) { c.prune.keep_universal = parse_bool(k, v); });
        add("prune.weight", [](C& c, K, K v) { c.prune.weight_scheme = parse_weight_scheme(trim(v)); });
        add("prune.length_normalize", [](C& c, K k, K v) { c.prune.length_normalize = parse_bool(k, v); });
        add("prune.vocab_cap", [](C& c, K k, K v) { c.prune.vocab_cap = parse_uint(k, v); });

        add("cluster.k", [](C& c, K k, K v) { c.cluster.k = parse_uint(k, v); });
        add("cluster.max_iterations", [](C& c, K k, K v) { c.cluster.max_iterations = parse_uint(k, v); });
        add("cluster.seed", [](C& c, K k, K v) { c.cluster.seed = parse_uint(k, v); });
        add("cluster.distance", [](C& c, K, K v) { c.cluster.distance = parse_distance_mode(trim(v)); });
        add("cluster.prototype_normalize", [](C& c, K k, K v) { c.cluster.prototype_normalize = parse_bool(k, v); });
        add("cluster.restarts", [](C& c, K k, K v) { c.cluster.restarts = parse_uint(k, v); });

        add("sweep.length", [](C& c, K k, K v) { c.sweep.length = parse_list<std::size_t>(k, v, parse_uint); });
        add("sweep.min_len", [](C& c, K k, K v) { c.sweep.min_len = parse_list<std::size_t>(k, v, parse_uint); });
        add("sweep.max_len",
            [](C& c, K k, K v) { c.sweep.max_len = parse_list<std::optional<std::size_t>>(k, v, parse_max); });
        add("sweep.anchor", [](C& c, K k, K v) {
            c.sweep.anchor = parse_list<std::string>(k, v, [](K key, K item) {
                const std::string s = trim(item);
                if (s != "root" && s != "leaf" && s != "both" && s != "none") bad_value(key, item, "root, leaf, both or none");
                return s;
            });
        });
        add("sweep.root", [](C& c, K k, K v) { c.sweep.root = parse_list<bool>(k, v, parse_bool); });
        add("sweep.leaf", [](C& c, K k, K v) { c.sweep.leaf = parse_list<bool>(k, v, parse_bool); });
        add("sweep.k", [](C& c, K k, K v) { c.sweep.k = parse_list<std::size_t>(k, v, parse_uint); });
        add("sweep.parallel", [](C& c, K k, K v) { c.sweep.parallel = parse_bool(k, v); });
        return t;
    }();
    return table;
}

}  // namespace

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& [key, setter] : setters()) keys.push_back(key);
    return keys;
}

void apply_setting(ExperimentConfig& config, std::string_view key, std::string_view value) {
    for (const auto& [name, setter] : setters()) {
        if (name != key) continue;
        try {
            setter(config, key, value);
        } catch (const ConfigError&) {
            throw;
        } catch (const Error& e) {
            throw ConfigError(std::string(key) + ": " + e.what());
        }
        return;
    }
    throw ConfigError("unknown configuration key '" + std::string(key) + "'");
}

ExperimentConfig parse_config(std::string_view text, ExperimentConfig base) {
    std::istringstream in{std::string(text)};
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty()) continue;
        const auto where = " (config line " + std::to_string(lineno) + ")";
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("unterminated section header" + where);
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'" + where);
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        try {
            apply_setting(base, section.empty() ? key : section + "." + key, value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what() + where);
        }
    }
    return base;
}

ExperimentConfig load_config(const fs::path& file, ExperimentConfig base) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    ExperimentConfig c = parse_config(buf.str(), std::move(base));
    // Relative paths in a config file are resolved against its directory.
    const fs::path dir = file.parent_path();
    auto resolve = [&](fs::path& p) {
        if (!p.empty() && p.is_relative()) p = dir / p;
    };
    resolve(c.corpus_dir);
    resolve(c.output_dir);
    for (auto* opt : {&c.manifest, &c.tagmap_path, &c.stoplist_path, &c.labels_path})
        if (*opt) resolve(**opt);
    return c;
}

// ---------------------------------------------------------------------------
// Sweep

namespace {

char flag(bool b) { return b ? 'T' : 'F'; }

std::string run_name(std::size_t index, const ExtractionParams& e, std::size_t k) {
    std::ostringstream s;
    s << std::setw(2) << std::setfill('0') << index << "_len" << length_range(e) << "_root" << flag(e.root_only)
      << "_leaf" << flag(e.leaf_only) << "_k" << k;
    return s.str();
}

}  // namespace

std::vector<RunSpec> expand_sweep(const ExperimentConfig& config) {
    const SweepSpec& sw = config.sweep;

    // Extraction length choices.
    std::vector<std::pair<std::size_t, std::optional<std::size_t>>> lengths;
    if (!sw.length.empty()) {
        for (std::size_t l : sw.length) lengths.emplace_back(l, l);
    } else {
        const std::vector<std::size_t> mins = sw.min_len.empty() ? std::vector{config.extraction.min_len} : sw.min_len;
        const auto maxs = sw.max_len.empty() ? std::vector{config.extraction.max_len} : sw.max_len;
        for (std::size_t lo : mins)
            for (const auto& hi : maxs) lengths.emplace_back(lo, hi);
    }

    // Root/leaf choices.
    std::vector<std::pair<bool, bool>> anchors;
    if (!sw.anchor.empty()) {
        for (const std::string& a : sw.anchor) {
            if (a == "root") anchors.emplace_back(true, false);
            else if (a == "leaf") anchors.emplace_back(false, true);
            else if (a == "both") anchors.emplace_back(true, true);
            else anchors.emplace_back(false, false);
        }
    } else {
        const std::vector<bool> roots = sw.root.empty() ? std::vector{config.extraction.root_only} : sw.root;
        const std::vector<bool> leaves = sw.leaf.empty() ? std::vector{config.extraction.leaf_only} : sw.leaf;
        for (bool r : roots)
            for (bool l : leaves) anchors.emplace_back(r, l);
    }

    const std::vector<std::size_t> ks = sw.k.empty() ? std::vector{config.cluster.k} : sw.k;

    std::vector<RunSpec> runs;
    for (const auto& [lo, hi] : lengths) {
        for (std::size_t k : ks) {
            for (const auto& [root, leaf] : anchors) {
                RunSpec r;
                r.index = runs.size();
                r.extraction = config.extraction;
                r.extraction.min_len = lo;
                r.extraction.max_len = hi;
                r.extraction.root_only = root;
                r.extraction.leaf_only = leaf;
                try {
                    r.extraction.validate();
                } catch (const InvalidParams& e) {
                    throw ConfigError("sweep combination " + std::to_string(r.index) + ": " + e.what());
                }
                if (k < 1) throw ConfigError("sweep combination " + std::to_string(r.index) + ": k must be >= 1");
                r.cluster = config.cluster;
                r.cluster.k = k;
                // Golden-ratio stride keeps combination 0 on the configured seed.
                r.cluster.seed = config.cluster.seed ^ (0x9E3779B97F4A7C15ULL * r.index);
                r.name = run_name(r.index, r.extraction, k);
                runs.push_back(std::move(r));
            }
        }
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Corpus

std::vector<std::pair<std::string, fs::path>> list_corpus(const ExperimentConfig& config) {
    std::vector<std::pair<std::string, fs::path>> files;
    if (config.manifest) {
        std::ifstream in(*config.manifest);
        if (!in) throw CorpusError("cannot open manifest " + config.manifest->string());
        const fs::path base = config.corpus_dir.empty() ? config.manifest->parent_path() : config.corpus_dir;
        std::string line;
        while (std::getline(in, line)) {
            line = trim(line);
            if (line.empty() || line.front() == '#') continue;
            fs::path p(line);
            const fs::path full = p.is_absolute() ? p : base / p;
            std::string id = p.is_absolute() ? fs::relative(p, base).generic_string() : p.generic_string();
            files.emplace_back(std::move(id), full);
        }
    } else {
        if (config.corpus_dir.empty()) throw ConfigError("no corpus directory or manifest given");
        std::error_code ec;
        if (!fs::is_directory(config.corpus_dir, ec)) throw CorpusError("not a directory: " + config.corpus_dir.string());
        for (const auto& entry : fs::recursive_directory_iterator(config.corpus_dir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".xml") continue;
            files.emplace_back(fs::relative(entry.path(), config.corpus_dir).generic_string(), entry.path());
        }
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end(),
                            [](const auto& a, const auto& b) { return a.first == b.first; }),
                files.end());
    return files;
}

namespace {

TokenPipeline make_pipeline(const ExperimentConfig& config) {
    TokenPipeline p = config.tokens;
    if (config.stoplist_path) p.stoplist = load_stoplist(*config.stoplist_path);
    return p;
}

}  // namespace

ParsedCorpus load_corpus(const ExperimentConfig& config) {
    const auto files = list_corpus(config);
    const TagMap tags = config.tagmap_path ? TagMap::load(*config.tagmap_path) : TagMap{};
    const TokenPipeline pipeline = make_pipeline(config);

    std::vector<std::optional<DocumentTree>> trees(files.size());
    std::vector<std::string> errors(files.size());
    parallel_for(files.size(), 8, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            try {
                trees[i] = tokenize_tree(apply_tag_map(parse_file(files[i].second, files[i].first), tags), pipeline);
            } catch (const Error& e) {
                errors[i] = e.what();
            }
        }
    });

    ParsedCorpus out;
    for (std::size_t i = 0; i < files.size(); ++i) {
        if (trees[i]) out.docs.push_back(std::move(*trees[i]));
        else out.failures.emplace_back(files[i].first, errors[i]);
    }
    if (out.docs.size() < 2)
        throw CorpusError("only " + std::to_string(out.docs.size()) + " of " + std::to_string(files.size()) +
                          " documents parsed; at least 2 are needed");
    return out;
}

// ---------------------------------------------------------------------------
// Runs

std::vector<std::pair<PathKey, std::uint64_t>> sorted_paths(const PathBag& bag) {
    std::vector<std::pair<PathKey, std::uint64_t>> out(bag.counts.begin(), bag.counts.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.first.length() < b.first.length(); });
    return out;
}

void dump_paths(std::ostream& out, const fs::path& file, const ExtractionParams& params, const TokenPipeline& pipeline,
                const TagMap& tags) {
    const DocumentTree tree = tokenize_tree(apply_tag_map(parse_file(file, file.filename().string()), tags), pipeline);
    for (const auto& [key, count] : sorted_paths(enumerate_paths(tree, params)))
        out << key.str() << ' ' << count << '\n';
}

void write_assignments(std::ostream& out, const ClusterModel& model, const RunSpec& run) {
    const ExtractionParams& e = run.extraction;
    const ClusterConfig& c = run.cluster;
    out << "# objective = " << format_double(model.objective) << '\n'
        << "# iterations = " << model.iterations << '\n'
        << "# converged = " << (model.converged ? "true" : "false") << '\n'
        << "# seed = " << c.seed << '\n'
        << "# run_seed = " << model.run_seed << '\n'
        << "# k = " << c.k << '\n'
        << "# distance = " << to_string(c.distance) << '\n'
        << "# prototype_normalize = " << (c.prototype_normalize ? "true" : "false") << '\n'
        << "# restarts = " << c.restarts << '\n'
        << "# max_iterations = " << c.max_iterations << '\n'
        << "# min_len = " << e.min_len << '\n'
        << "# max_len = " << (e.max_len ? std::to_string(*e.max_len) : std::string("*")) << '\n'
        << "# root = " << (e.root_only ? "true" : "false") << '\n'
        << "# leaf = " << (e.leaf_only ? "true" : "false") << '\n'
        << "# text = " << to_string(e.text_mode) << '\n'
        << "# attributes = " << (e.include_attributes ? "true" : "false") << '\n';
    for (std::size_t i = 0; i < model.doc_ids.size(); ++i) out << model.doc_ids[i] << '\t' << model.assignments[i] << '\n';
}

namespace {

std::string extraction_key(const ExtractionParams& e) {
    return length_range(e) + flag(e.root_only) + flag(e.leaf_only) + std::string(to_string(e.text_mode)) +
           flag(e.include_attributes);
}

FeatureMatrix matrix_for(const std::vector<DocumentTree>& docs, const ExtractionParams& e, const PruneRules& rules) {
    std::vector<PathBag> bags(docs.size());
    parallel_for(docs.size(), 16, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) bags[i] = enumerate_paths(docs[i], e);
    });
    return build_matrix(bags, rules);
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CorpusError("cannot write " + path.string());
    out << content;
}

std::string timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream s;
    s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return s.str();
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream s;
    s << "run,min_len,max_len,root,leaf,text,attributes,k,vocab,objective,iterations," << kMetricsCsvHeader << '\n';
    for (const SummaryRow& r : rows) {
        const ExtractionParams& e = r.run.extraction;
        s << r.run.name << ',' << e.min_len << ',' << (e.max_len ? std::to_string(*e.max_len) : std::string("*")) << ','
          << flag(e.root_only) << ',' << flag(e.leaf_only) << ',' << to_string(e.text_mode) << ','
          << flag(e.include_attributes) << ',' << r.run.cluster.k << ',' << r.vocab_size << ','
          << format_double(r.objective) << ',' << r.iterations << ',';
        s << (r.metrics ? metrics_csv_row(*r.metrics) : std::string(",,,,,,")) << '\n';
    }
    return s.str();
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    const std::vector<RunSpec> runs = expand_sweep(config);
    config.prune.validate();

    ExperimentResult result;
    result.output_dir = config.output_dir;
    fs::create_directories(config.output_dir / "runs");
    std::ofstream log(config.output_dir / "run.log", std::ios::app);
    log << timestamp() << " start: " << runs.size() << " run(s)\n";

    const ParsedCorpus corpus = load_corpus(config);
    result.parsed = corpus.docs.size();
    result.failed = corpus.failures.size();
    {
        std::string errors;
        for (const auto& [id, msg] : corpus.failures) errors += id + '\t' + msg + '\n';
        write_file(config.output_dir / "errors.log", errors);
    }
    log << timestamp() << " parsed " << result.parsed << " document(s), " << result.failed << " failure(s)\n";

    std::optional<std::map<std::string, std::string>> labels;
    if (config.labels_path) {
        const auto all = read_label_file(config.labels_path->string());
        labels.emplace();
        std::vector<std::string> missing;
        for (const DocumentTree& d : corpus.docs) {
            const auto it = all.find(d.doc_id());
            if (it == all.end()) missing.push_back(d.doc_id());
            else labels->emplace(it->first, it->second);
        }
        if (!missing.empty()) throw LabelMismatch(std::move(missing));
    }

    // Matrices are shared by every run with the same extraction.
    std::map<std::string, FeatureMatrix> matrices;
    for (const RunSpec& r : runs) {
        const std::string key = extraction_key(r.extraction);
        if (!matrices.count(key)) matrices.emplace(key, matrix_for(corpus.docs, r.extraction, config.prune));
    }

    result.rows.resize(runs.size());
    auto execute = [&](const RunSpec& r) {
        const FeatureMatrix& m = matrices.at(extraction_key(r.extraction));
        const ClusterModel model = cluster(m, r.cluster);
        const fs::path dir = config.output_dir / "runs" / r.name;
        fs::create_directories(dir);

        std::ostringstream vocab;
        write_report(vocab, vocabulary_report(m));
        write_file(dir / "vocab.txt", vocab.str());
        std::ostringstream assigned;
        write_assignments(assigned, model, r);
        write_file(dir / "assignments.tsv", assigned.str());
        if (config.dump_matrix) {
            std::ostringstream dump;
            write_matrix(dump, m);
            write_file(dir / "matrix.txt", dump.str());
        }

        SummaryRow row;
        row.run = r;
        row.vocab_size = m.dimension();
        row.objective = model.objective;
        row.iterations = model.iterations;
        if (labels) {
            const ContingencyTable t = contingency(model, *labels);
            const MetricsReport metrics = evaluate(t);
            write_file(dir / "metrics.csv", std::string(kMetricsCsvHeader) + '\n' + metrics_csv_row(metrics) + '\n');
            std::ostringstream kv, table;
            write_metrics(kv, metrics);
            write_file(dir / "metrics.txt", kv.str());
            write_contingency_csv(table, t);
            write_file(dir / "contingency.csv", table.str());
            row.metrics = metrics;
        }
        result.rows[r.index] = std::move(row);
    };

    if (config.sweep.parallel) {
        std::mutex failure_lock;
        std::exception_ptr failure;
        parallel_for(runs.size(), 1, [&](std::size_t, std::size_t begin, std::size_t end) {
            for (std::size_t i = begin; i < end; ++i) {
                try {
                    execute(runs[i]);
                } catch (...) {
                    std::lock_guard lock(failure_lock);
                    if (!failure) failure = std::current_exception();
                }
            }
        });
        if (failure) std::rethrow_exception(failure);
    } else {
        for (const RunSpec& r : runs) {
            execute(r);
            log << timestamp() << " finished " << r.name << '\n';
        }
    }

    write_file(config.output_dir / "summary.csv", summary_csv(result.rows));
    log << timestamp() << " done\n";
    return result;
}

VocabularyOutcome corpus_vocabulary(const ExperimentConfig& config) {
    config.extraction.validate();
    const ParsedCorpus corpus = load_corpus(config);
    VocabularyOutcome out;
    try {
        out.report = vocabulary_report(matrix_for(corpus.docs, config.extraction, config.prune));
    } catch (const VocabularyTooLarge& e) {
        out.over_cap = true;
        out.report.docs = corpus.docs.size();
        out.report.distinct_paths = e.distinct();
    }
    return out;
}

}  // namespace pathmine
