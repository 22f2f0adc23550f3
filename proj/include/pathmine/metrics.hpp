#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pathmine {

struct ClusterModel;

/// Cluster x class counts n_ij with their marginals.
struct ContingencyTable {
    std::vector<std::string> clusters;
    std::vector<std::string> classes;
    std::vector<std::vector<std::uint64_t>> counts;  // [cluster][class]
    std::vector<std::uint64_t> cluster_sizes;
    std::vector<std::uint64_t> class_sizes;
    std::uint64_t total = 0;

    /// Builds marginals from raw counts; labels default to 0.. and A..
    static ContingencyTable from_counts(std::vector<std::vector<std::uint64_t>> counts);
};

/// Throws LabelMismatch listing documents present in only one map.
ContingencyTable contingency(const std::map<std::string, std::string>& assignments,
                             const std::map<std::string, std::string>& labels);

/// Rows are the model's k clusters, empty ones included.
ContingencyTable contingency(const ClusterModel& model, const std::map<std::string, std::string>& labels);

/// Class-weighted best-match F-measure.
double f_measure(const ContingencyTable& t);

/// Hubert-Arabie adjusted Rand index; 0 when the expected and maximum index
/// coincide.
double corrected_rand(const ContingencyTable& t);

struct MicroMacro {
    double micro = 0.0;
    double macro = 0.0;
};

/// Per-cluster class entropy normalized by log(number of classes).
MicroMacro entropy(const ContingencyTable& t);

MicroMacro purity(const ContingencyTable& t);

/// In nats.
double mutual_information(const ContingencyTable& t);

struct MetricsReport {
    double f_measure = 0.0;
    double corrected_rand = 0.0;
    double micro_entropy = 0.0;
    double macro_entropy = 0.0;
    double micro_purity = 0.0;
    double macro_purity = 0.0;
    double mutual_information = 0.0;
};

MetricsReport evaluate(const ContingencyTable& t);

inline constexpr const char* kMetricsCsvHeader =
    "fmeasure,corr_rand,micro_entropy,macro_entropy,micro_purity,macro_purity,mutual_info";

std::string metrics_csv_row(const MetricsReport& r);
void write_metrics(std::ostream& out, const MetricsReport& r);

/// Header `cluster,<class>...`, one row per cluster.
void write_contingency_csv(std::ostream& out, const ContingencyTable& t);

/// `<doc_id>\t<label>` lines; blank lines and `#` lines skipped.
std::map<std::string, std::string> read_label_file(const std::string& path);

}  // namespace pathmine
