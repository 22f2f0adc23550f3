// Acceptance suite: one PASS/FAIL line per criterion. Exits non-zero when any
// criterion fails.

#include "pathmine/clustering.hpp"
#include "pathmine/experiment.hpp"
#include "pathmine/features.hpp"
#include "pathmine/metrics.hpp"
#include "pathmine/path_model.hpp"
#include "pathmine/synthetic.hpp"
#include "pathmine/tokenize.hpp"

#include "support/oracles.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace pathmine;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o, double secs) {
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << title << "  [" << std::fixed
              << std::setprecision(2) << secs << " s]";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("pathmine_acceptance_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

bool group_sums_ok(const std::vector<double>& dense, const std::vector<IndexRange>& groups) {
    for (const IndexRange& g : groups) {
        double total = 0.0;
        for (std::size_t j = g.begin; j < g.end; ++j) total += dense[j];
        if (total != 0.0 && std::abs(total - 1.0) > 1e-9) return false;
    }
    return true;
}

// Per-group sum-to-one over every row and prototype seen by criteria 4 and 6.
struct NormalizationLedger {
    std::size_t checked = 0;
    std::size_t violations = 0;

    void add(const FeatureMatrix& m, const ClusterModel& model) {
        const auto groups = m.group_ranges();
        for (const DocumentRow& row : m.rows) {
            ++checked;
            violations += !group_sums_ok(row.weights.to_dense(m.dimension()), groups);
        }
        for (const auto& p : model.prototypes) {
            ++checked;
            violations += !group_sums_ok(p, groups);
        }
    }
};

NormalizationLedger normalization;

// ---------------------------------------------------------------------------

Outcome fixture_exactness() {
    Outcome o;
    const DocumentTree tree = tokenize_tree(parse_file(PATHMINE_FIXTURES "/article.xml", "article"), TokenPipeline{});

    ExtractionParams nodes;
    nodes.min_len = 3;
    nodes.max_len = 3;
    nodes.include_attributes = true;
    const auto got = oracle::as_strings(enumerate_paths(tree, nodes));
    const std::map<std::string, std::uint64_t> table1{{"article.bdy.sec", 1}, {"article.fm.au", 1},
                                                      {"bdy.sec.p", 2},       {"bdy.bb.au", 2},
                                                      {"bdy.sec.sno@", 1}};
    std::string extra, missing;
    for (const auto& [k, v] : got)
        if (!table1.count(k) || table1.at(k) != v) extra += " " + k + ":" + std::to_string(v);
    for (const auto& [k, v] : table1)
        if (!got.count(k) || got.at(k) != v) missing += " " + k + ":" + std::to_string(v);

    ExtractionParams text = nodes;
    text.max_len = 4;
    text.text_mode = TextMode::TextOnly;
    const auto words = oracle::as_strings(enumerate_paths(tree, text));
    const std::map<std::string, std::uint64_t> table2{{R"(article.fm.abs."offer")", 1},
                                                      {R"(bdy.sec.p."historian")", 1},
                                                      {R"(bdy.sec.sno@."01")", 1},
                                                      {R"(article.fm.au."werner")", 1},
                                                      {R"(bdy.sec."historian")", 1}};
    std::string text_missing;
    for (const auto& [k, v] : table2)
        if (!words.count(k) || words.at(k) != v) text_missing += " " + k;

    o.pass = extra.empty() && missing.empty() && text_missing.empty();
    o.detail = "length-3 rows " + std::to_string(got.size()) + "/5";
    if (!extra.empty()) o.detail += "; extra:" + extra;
    if (!missing.empty()) o.detail += "; missing:" + missing;
    o.detail += text_missing.empty() ? "; text rows 5/5 present" : "; text rows missing:" + text_missing;
    return o;
}

Outcome path_oracle() {
    Outcome o;
    std::mt19937_64 rng(20240501);
    std::size_t cases = 0, mismatches = 0;
    for (int t = 0; t < 500; ++t) {
        const DocumentTree tree = oracle::random_tree(rng, 30, 6);
        for (int p = 0; p < 20; ++p) {
            const ExtractionParams params = oracle::random_params(rng);
            ++cases;
            mismatches += oracle::as_strings(enumerate_paths(tree, params)) != oracle::window_oracle(tree, params);
        }
    }
    o.pass = mismatches == 0;
    o.detail = std::to_string(cases - mismatches) + "/" + std::to_string(cases) + " tree/parameter cases equal";
    return o;
}

Outcome preset_equivalences() {
    Outcome o;
    std::mt19937_64 rng(77);
    std::size_t bad_words = 0, bad_tags = 0, bad_terminal = 0;
    for (int t = 0; t < 100; ++t) {
        const DocumentTree tree = oracle::random_tree(rng, 30, 6);

        std::map<std::string, std::uint64_t> words, tags;
        std::set<std::string> terminal;
        for (NodeId id = 0; id < tree.size(); ++id) {
            const Node& n = tree.node(id);
            if (n.kind == NodeKind::Text && tree.node(*n.parent).kind == NodeKind::Element)
                for (const auto& w : n.tokens) ++words["\"" + w + "\""];
            if (n.kind == NodeKind::Element) {
                ++tags[oracle::escape_label(n)];
                if (oracle::oracle_leaf(tree, id)) {
                    std::string path = oracle::escape_label(n);
                    for (auto up = n.parent; up; up = tree.node(*up).parent)
                        path = oracle::escape_label(tree.node(*up)) + "." + path;
                    terminal.insert(path);
                }
            }
        }
        bad_words += oracle::as_strings(enumerate_paths(tree, preset("bag-of-words"))) != words;
        bad_tags += oracle::as_strings(enumerate_paths(tree, preset("tag-set"))) != tags;
        for (const auto& [key, count] : enumerate_paths(tree, preset("terminal-paths")).counts)
            bad_terminal += key.labels().front() != oracle::key_label(tree.node(0)) || !terminal.count(key.str());
    }
    o.pass = bad_words + bad_tags + bad_terminal == 0;
    o.detail = "100 trees; mismatches bag-of-words=" + std::to_string(bad_words) + " tag-set=" +
               std::to_string(bad_tags) + " terminal-paths=" + std::to_string(bad_terminal);
    return o;
}

Outcome kmeans_correctness() {
    Outcome o;
    std::mt19937_64 rng(4242);
    std::size_t runs = 0, optimal = 0, traces = 0, monotone = 0;
    auto monotone_trace = [](const ClusterModel& m) {
        for (std::size_t i = 1; i < m.objective_trace.size(); ++i)
            if (m.objective_trace[i] > m.objective_trace[i - 1] + 1e-12 * (1.0 + m.objective_trace[i - 1]))
                return false;
        return true;
    };
    for (int corpus = 0; corpus < 200; ++corpus) {
        const std::size_t docs = 3 + rng() % 8;      // 3..10
        const std::size_t features = 2 + rng() % 5;  // 2..6
        std::vector<std::size_t> groups{features};
        if (features >= 4 && rng() % 2) groups = {features / 2, features - features / 2};
        const FeatureMatrix m = oracle::random_matrix(rng, docs, groups);
        const auto rows = oracle::dense_rows(m);
        const std::size_t k = 2 + rng() % std::min<std::size_t>(3, docs - 1);  // 2..4, below docs
        const double best = oracle::exhaustive_minimum(rows, k);

        ClusterConfig c;
        c.k = k;
        c.restarts = 10;
        c.seed = rng();
        c.distance = rng() % 2 ? DistanceMode::Grouped : DistanceMode::Flat;
        const ClusterModel model = cluster(m, c);
        ++runs;
        optimal += std::abs(model.objective - best) <= 1e-9;
        ++traces;
        monotone += monotone_trace(model);
        normalization.add(m, model);

        // Every individual restart must be monotone too.
        ClusterConfig single = c;
        single.restarts = 1;
        for (std::size_t r = 0; r < c.restarts; ++r) {
            single.seed = c.seed + r;
            const ClusterModel one = cluster(m, single);
            ++traces;
            monotone += monotone_trace(one);
            normalization.add(m, one);
        }
    }
    const double rate = static_cast<double>(optimal) / static_cast<double>(runs);
    o.pass = rate >= 0.8 && monotone == traces;
    std::ostringstream d;
    d << "optimum reached in " << optimal << "/" << runs << " runs (" << std::setprecision(3) << 100 * rate
      << "%); monotone traces " << monotone << "/" << traces;
    o.detail = d.str();
    return o;
}

Outcome metric_oracles() {
    Outcome o;
    std::size_t pairs = 0, mismatches = 0;
    for (std::size_t n = 1; n <= 8; ++n) {
        std::vector<std::vector<std::size_t>> parts;
        oracle::for_each_partition(n, 0, [&](const std::vector<std::size_t>& p) { parts.push_back(p); });
        for (const auto& x : parts) {
            const std::size_t rows = 1 + *std::max_element(x.begin(), x.end());
            for (const auto& y : parts) {
                const std::size_t cols = 1 + *std::max_element(y.begin(), y.end());
                std::vector<std::vector<std::uint64_t>> counts(rows, std::vector<std::uint64_t>(cols, 0));
                for (std::size_t i = 0; i < n; ++i) ++counts[x[i]][y[i]];
                ++pairs;
                mismatches += corrected_rand(ContingencyTable::from_counts(std::move(counts))) !=
                              oracle::pair_counting_ari(x, y);
            }
        }
    }

    // Worked table [[2,0],[1,3]]; ARI and MI are frozen at their oracle values.
    const ContingencyTable t = ContingencyTable::from_counts({{2, 0}, {1, 3}});
    const MetricsReport r = evaluate(t);
    const double ari_oracle = oracle::pair_counting_ari({0, 0, 1, 1, 1, 1}, {0, 0, 0, 1, 1, 1});
    const double mi_oracle = (2.0 / 6) * std::log(2.0 * 6 / (2 * 3)) + (1.0 / 6) * std::log(1.0 * 6 / (4 * 3)) +
                             (3.0 / 6) * std::log(3.0 * 6 / (4 * 3));
    struct Check {
        const char* name;
        double got, want;
    };
    const Check checks[] = {{"F", r.f_measure, 0.8286},
                            {"ARI", r.corrected_rand, ari_oracle},
                            {"micro-entropy", r.micro_entropy, 0.5409},
                            {"micro-purity", r.micro_purity, 0.8333},
                            {"MI", r.mutual_information, mi_oracle}};
    std::ostringstream d;
    d << "ARI exhaustive " << pairs - mismatches << "/" << pairs << " partition pairs exact;";
    bool values_ok = true;
    for (const Check& c : checks) {
        const bool ok = std::abs(c.got - c.want) <= 1e-4;
        values_ok &= ok;
        d << " " << c.name << "=" << std::setprecision(6) << c.got << (ok ? "" : "(!)");
    }
    o.pass = mismatches == 0 && values_ok;
    o.detail = d.str();
    return o;
}

struct SchemaRun {
    std::size_t good_seeds = 0;
    std::size_t summary_rows = 0;
};

SchemaRun schema_separation_result;

Outcome schema_separation() {
    Outcome o;
    const fs::path dir = scratch("schemas");
    const TokenPipeline pipeline;

    ExtractionParams root3;
    root3.min_len = 3;
    root3.max_len = 3;
    root3.root_only = true;

    std::size_t good = 0;
    double worst_purity = 1.0, worst_entropy = 0.0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SyntheticSpec spec;
        spec.schemas = 2;
        spec.docs = 200;
        spec.seed = seed;
        std::vector<PathBag> bags;
        std::map<std::string, std::string> labels;
        for (const SyntheticDoc& d : generate_corpus(spec)) {
            bags.push_back(enumerate_paths(tokenize_tree(parse_document(d.xml, d.id), pipeline), root3));
            labels[d.id] = d.label;
        }
        const FeatureMatrix m = build_matrix(bags, PruneRules{});
        ClusterConfig c;
        c.k = 2;
        c.seed = seed;
        const ClusterModel model = cluster(m, c);
        normalization.add(m, model);
        const MetricsReport r = evaluate(contingency(model, labels));
        worst_purity = std::min(worst_purity, r.micro_purity);
        worst_entropy = std::max(worst_entropy, r.micro_entropy);
        good += r.micro_purity >= 0.99 && r.micro_entropy <= 0.05;
    }

    // Four schemas swept over length x anchor x k.
    SyntheticSpec spec4;
    spec4.schemas = 4;
    spec4.docs = 120;
    spec4.seed = 5;
    write_corpus(dir / "four", generate_corpus(spec4));
    ExperimentConfig c4;
    c4.corpus_dir = dir / "four";
    c4.labels_path = dir / "four" / "labels.tsv";
    c4.output_dir = dir / "four_run";
    c4.sweep.length = {3, 4};
    c4.sweep.anchor = {"root", "leaf"};
    c4.sweep.k = {9, 11, 13};
    const ExperimentResult r4 = run_experiment(c4);
    std::size_t data_rows = 0;
    {
        std::istringstream summary(slurp(c4.output_dir / "summary.csv"));
        std::string line;
        std::getline(summary, line);
        while (std::getline(summary, line))
            if (!line.empty()) ++data_rows;
    }
    bool metrics_filled = true;
    for (const SummaryRow& row : r4.rows) metrics_filled &= row.metrics.has_value();

    o.pass = good >= 19 && data_rows == 12 && metrics_filled;
    std::ostringstream d;
    d << "2 schemas: " << good << "/20 seeds with purity>=0.99 and entropy<=0.05 (worst purity " << worst_purity
      << ", worst entropy " << worst_entropy << "); 4 schemas: " << data_rows << " summary rows";
    o.detail = d.str();
    fs::remove_all(dir);
    return o;
}

Outcome normalization_invariants() {
    Outcome o;
    o.pass = normalization.checked > 0 && normalization.violations == 0;
    o.detail = std::to_string(normalization.checked - normalization.violations) + "/" +
               std::to_string(normalization.checked) + " rows and prototypes sum to 1 per group";
    return o;
}

Outcome determinism() {
    Outcome o;
    const fs::path dir = scratch("determinism");
    SyntheticSpec spec;
    spec.schemas = 2;
    spec.docs = 200;
    spec.seed = 11;
    write_corpus(dir / "corpus", generate_corpus(spec));

    ExperimentConfig c;
    c.corpus_dir = dir / "corpus";
    c.labels_path = dir / "corpus" / "labels.tsv";
    c.extraction.min_len = 3;
    c.extraction.max_len = 3;
    c.extraction.root_only = true;
    c.cluster.k = 2;
    c.cluster.seed = 11;
    c.output_dir = dir / "first";
    run_experiment(c);
    c.output_dir = dir / "second";
    run_experiment(c);

    std::size_t compared = 0, differing = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir / "first")) {
        if (!entry.is_regular_file() || entry.path().filename() == "run.log") continue;
        const fs::path twin = dir / "second" / fs::relative(entry.path(), dir / "first");
        ++compared;
        differing += slurp(entry.path()) != slurp(twin);
    }
    const bool has_outputs = compared >= 7;  // summary, errors and the five run files
    o.pass = has_outputs && differing == 0;
    o.detail = std::to_string(compared - differing) + "/" + std::to_string(compared) +
               " output files byte-identical (assignments, metrics, contingency, vocab, summary)";
    fs::remove_all(dir);
    return o;
}

Outcome capacity_behavior() {
    Outcome o;
    const fs::path dir = scratch("capacity");
    SyntheticSpec spec;
    spec.schemas = 2;
    spec.docs = 300;
    spec.text_heavy = true;
    write_corpus(dir / "corpus", generate_corpus(spec));

    bool all = true;
    std::ostringstream d;
    for (std::size_t len = 2; len <= 4; ++len) {
        std::size_t vocab[2] = {0, 0}, distinct[2] = {0, 0};
        for (int leaf = 0; leaf <= 1; ++leaf) {
            ExperimentConfig c;
            c.corpus_dir = dir / "corpus";
            c.extraction.min_len = len;
            c.extraction.max_len = len;
            c.extraction.text_mode = TextMode::TextOnly;
            c.extraction.root_only = leaf == 0;
            c.extraction.leaf_only = leaf == 1;
            const VocabularyOutcome v = corpus_vocabulary(c);
            vocab[leaf] = v.report.vocab_size;
            distinct[leaf] = v.report.distinct_paths;
        }
        all &= vocab[1] > vocab[0] && distinct[1] > distinct[0];
        d << " len " << len << ": leaf " << vocab[1] << " (" << distinct[1] << " distinct) vs root " << vocab[0]
          << " (" << distinct[0] << ");";
    }
    o.pass = all;
    o.detail = d.str();
    fs::remove_all(dir);
    return o;
}

template <typename F>
void run(int id, const std::string& title, F&& f, double budget_seconds = 0.0) {
    const auto start = Clock::now();
    Outcome o;
    try {
        o = f();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("threw: ") + e.what();
    }
    const double secs = seconds_since(start);
    if (budget_seconds > 0.0 && secs > budget_seconds) {
        o.pass = false;
        o.detail += "; over the " + std::to_string(static_cast<int>(budget_seconds)) + " s budget";
    }
    report(id, title, o, secs);
}

}  // namespace

int main() {
    run(1, "fixture exactness", fixture_exactness, 1.0);
    run(2, "path enumeration oracle", path_oracle, 30.0);
    run(3, "preset equivalences", preset_equivalences);
    run(4, "k-means correctness", kmeans_correctness);
    run(5, "metric oracles", metric_oracles);
    run(6, "schema separation", schema_separation, 60.0);
    run(7, "normalization invariants", normalization_invariants);
    run(8, "determinism", determinism);
    run(9, "capacity behavior", capacity_behavior);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criterion(s) failed") << '\n';
    return failures == 0 ? 0 : 1;
}
