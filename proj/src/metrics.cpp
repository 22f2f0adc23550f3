#include "pathmine/metrics.hpp"

#include "pathmine/clustering.hpp"
#include "pathmine/error.hpp"
#include "pathmine/features.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>

namespace pathmine {

namespace {

void fill_marginals(ContingencyTable& t) {
    const std::size_t rows = t.counts.size();
    const std::size_t cols = rows ? t.counts.front().size() : t.classes.size();
    t.cluster_sizes.assign(rows, 0);
    t.class_sizes.assign(cols, 0);
    t.total = 0;
    for (std::size_t i = 0; i < rows; ++i) {
        if (t.counts[i].size() != cols) throw InvalidParams("ragged contingency table");
        for (std::size_t j = 0; j < cols; ++j) {
            t.cluster_sizes[i] += t.counts[i][j];
            t.class_sizes[j] += t.counts[i][j];
            t.total += t.counts[i][j];
        }
    }
}

bool all_digits(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Numeric labels in numeric order, others lexicographic after them.
bool label_less(const std::string& a, const std::string& b) {
    const bool da = all_digits(a), db = all_digits(b);
    if (da && db) return a.size() != b.size() ? a.size() < b.size() : a < b;
    if (da != db) return da;
    return a < b;
}

ContingencyTable tabulate(const std::vector<std::string>& cluster_order,
                          const std::map<std::string, std::string>& assignments,
                          const std::map<std::string, std::string>& labels) {
    std::vector<std::string> missing;
    auto x = assignments.begin();
    auto y = labels.begin();
    while (x != assignments.end() || y != labels.end()) {
        if (y == labels.end() || (x != assignments.end() && x->first < y->first)) {
            missing.push_back((x++)->first);
        } else if (x == assignments.end() || y->first < x->first) {
            missing.push_back((y++)->first);
        } else {
            ++x;
            ++y;
        }
    }
    if (!missing.empty()) throw LabelMismatch(std::move(missing));

    ContingencyTable t;
    t.clusters = cluster_order;
    std::set<std::string> classes;
    for (const auto& [doc, cls] : labels) classes.insert(cls);
    t.classes.assign(classes.begin(), classes.end());
    t.counts.assign(t.clusters.size(), std::vector<std::uint64_t>(t.classes.size(), 0));
    for (const auto& [doc, cl] : assignments) {
        const auto i = std::find(t.clusters.begin(), t.clusters.end(), cl) - t.clusters.begin();
        const auto j = std::lower_bound(t.classes.begin(), t.classes.end(), labels.at(doc)) - t.classes.begin();
        ++t.counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    fill_marginals(t);
    return t;
}

}  // namespace

ContingencyTable ContingencyTable::from_counts(std::vector<std::vector<std::uint64_t>> counts) {
    ContingencyTable t;
    t.counts = std::move(counts);
    for (std::size_t i = 0; i < t.counts.size(); ++i) t.clusters.push_back(std::to_string(i));
    const std::size_t cols = t.counts.empty() ? 0 : t.counts.front().size();
    for (std::size_t j = 0; j < cols; ++j)
        t.classes.push_back(j < 26 ? std::string(1, static_cast<char>('A' + j)) : "C" + std::to_string(j));
    fill_marginals(t);
    return t;
}

ContingencyTable contingency(const std::map<std::string, std::string>& assignments,
                             const std::map<std::string, std::string>& labels) {
    std::set<std::string> seen;
    for (const auto& [doc, cl] : assignments) seen.insert(cl);
    std::vector<std::string> order(seen.begin(), seen.end());
    std::sort(order.begin(), order.end(), label_less);
    return tabulate(order, assignments, labels);
}

ContingencyTable contingency(const ClusterModel& model, const std::map<std::string, std::string>& labels) {
    std::map<std::string, std::string> assignments;
    for (std::size_t i = 0; i < model.doc_ids.size(); ++i)
        assignments.emplace(model.doc_ids[i], std::to_string(model.assignments[i]));
    std::vector<std::string> order;
    for (std::size_t c = 0; c < model.k(); ++c) order.push_back(std::to_string(c));
    return tabulate(order, assignments, labels);
}

double f_measure(const ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    double f = 0.0;
    for (std::size_t j = 0; j < t.class_sizes.size(); ++j) {
        if (t.class_sizes[j] == 0) continue;
        double best = 0.0;
        for (std::size_t i = 0; i < t.cluster_sizes.size(); ++i) {
            const auto nij = static_cast<double>(t.counts[i][j]);
            if (nij == 0) continue;
            const double p = nij / static_cast<double>(t.cluster_sizes[i]);
            const double r = nij / static_cast<double>(t.class_sizes[j]);
            best = std::max(best, 2 * p * r / (p + r));
        }
        f += static_cast<double>(t.class_sizes[j]) / static_cast<double>(t.total) * best;
    }
    return f;
}

double corrected_rand(const ContingencyTable& t) {
    using I = __int128;
    auto pairs = [](std::uint64_t x) { return static_cast<I>(x) * static_cast<I>(x ? x - 1 : 0) / 2; };
    I index = 0, rows = 0, cols = 0;
    for (const auto& row : t.counts)
        for (std::uint64_t v : row) index += pairs(v);
    for (std::uint64_t v : t.cluster_sizes) rows += pairs(v);
    for (std::uint64_t v : t.class_sizes) cols += pairs(v);
    const I all = pairs(t.total);
    // (index - rows*cols/all) / ((rows+cols)/2 - rows*cols/all), scaled by 2*all.
    const I num = 2 * (index * all - rows * cols);
    const I den = (rows + cols) * all - 2 * rows * cols;
    if (den == 0) return 0.0;
    return static_cast<double>(num) / static_cast<double>(den);
}

MicroMacro entropy(const ContingencyTable& t) {
    const std::size_t q = static_cast<std::size_t>(
        std::count_if(t.class_sizes.begin(), t.class_sizes.end(), [](std::uint64_t v) { return v > 0; }));
    MicroMacro out;
    if (t.total == 0 || q <= 1) return out;
    const double norm = std::log(static_cast<double>(q));
    std::size_t non_empty = 0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        if (t.cluster_sizes[i] == 0) continue;
        ++non_empty;
        double h = 0.0;
        for (std::uint64_t v : t.counts[i]) {
            if (v == 0) continue;
            const double p = static_cast<double>(v) / static_cast<double>(t.cluster_sizes[i]);
            h -= p * std::log(p);
        }
        h /= norm;
        out.micro += static_cast<double>(t.cluster_sizes[i]) / static_cast<double>(t.total) * h;
        out.macro += h;
    }
    out.macro /= static_cast<double>(non_empty);
    return out;
}

MicroMacro purity(const ContingencyTable& t) {
    MicroMacro out;
    if (t.total == 0) return out;
    std::uint64_t hits = 0;
    std::size_t non_empty = 0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        if (t.cluster_sizes[i] == 0) continue;
        ++non_empty;
        const std::uint64_t top = *std::max_element(t.counts[i].begin(), t.counts[i].end());
        hits += top;
        out.macro += static_cast<double>(top) / static_cast<double>(t.cluster_sizes[i]);
    }
    out.micro = static_cast<double>(hits) / static_cast<double>(t.total);
    out.macro /= static_cast<double>(non_empty);
    return out;
}

double mutual_information(const ContingencyTable& t) {
    if (t.total == 0) return 0.0;
    const auto n = static_cast<double>(t.total);
    double mi = 0.0;
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        for (std::size_t j = 0; j < t.counts[i].size(); ++j) {
            const auto nij = static_cast<double>(t.counts[i][j]);
            if (nij == 0) continue;
            mi += nij / n *
                  std::log(nij * n / (static_cast<double>(t.cluster_sizes[i]) * static_cast<double>(t.class_sizes[j])));
        }
    }
    return std::max(0.0, mi);
}

MetricsReport evaluate(const ContingencyTable& t) {
    MetricsReport r;
    r.f_measure = f_measure(t);
    r.corrected_rand = corrected_rand(t);
    const MicroMacro e = entropy(t);
    r.micro_entropy = e.micro;
    r.macro_entropy = e.macro;
    const MicroMacro p = purity(t);
    r.micro_purity = p.micro;
    r.macro_purity = p.macro;
    r.mutual_information = mutual_information(t);
    return r;
}

std::string metrics_csv_row(const MetricsReport& r) {
    return format_double(r.f_measure) + ',' + format_double(r.corrected_rand) + ',' + format_double(r.micro_entropy) +
           ',' + format_double(r.macro_entropy) + ',' + format_double(r.micro_purity) + ',' +
           format_double(r.macro_purity) + ',' + format_double(r.mutual_information);
}

void write_metrics(std::ostream& out, const MetricsReport& r) {
    out << "fmeasure = " << format_double(r.f_measure) << '\n'
        << "corr_rand = " << format_double(r.corrected_rand) << '\n'
        << "micro_entropy = " << format_double(r.micro_entropy) << '\n'
        << "macro_entropy = " << format_double(r.macro_entropy) << '\n'
        << "micro_purity = " << format_double(r.micro_purity) << '\n'
        << "macro_purity = " << format_double(r.macro_purity) << '\n'
        << "mutual_info = " << format_double(r.mutual_information) << '\n';
}

void write_contingency_csv(std::ostream& out, const ContingencyTable& t) {
    out << "cluster";
    for (const std::string& c : t.classes) out << ',' << c;
    out << '\n';
    for (std::size_t i = 0; i < t.counts.size(); ++i) {
        out << t.clusters[i];
        for (std::uint64_t v : t.counts[i]) out << ',' << v;
        out << '\n';
    }
}

std::map<std::string, std::string> read_label_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    std::map<std::string, std::string> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0 || tab + 1 == line.size())
            throw ConfigError(path + ":" + std::to_string(lineno) + ": expected '<doc_id>\\t<label>'");
        if (!out.emplace(line.substr(0, tab), line.substr(tab + 1)).second)
            throw ConfigError(path + ":" + std::to_string(lineno) + ": duplicate document id");
    }
    return out;
}

}  // namespace pathmine
