#pragma once

#include "pathmine/features.hpp"
#include "pathmine/sparse.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace pathmine {

enum class DistanceMode { Flat, Grouped };

std::string_view to_string(DistanceMode mode);
DistanceMode parse_distance_mode(std::string_view s);

struct ClusterConfig {
    std::size_t k = 2;
    std::size_t max_iterations = 100;
    std::uint64_t seed = 0;
    DistanceMode distance = DistanceMode::Grouped;
    /// Rescale each prototype group to sum 1; false keeps the raw member sum.
    bool prototype_normalize = true;
    std::size_t restarts = 1;
};

struct ClusterModel {
    std::vector<std::string> doc_ids;        // matrix row order
    std::vector<std::size_t> assignments;    // parallel to doc_ids, in [0, k)
    std::vector<std::vector<double>> prototypes;  // k dense vectors over the vocabulary
    double objective = 0.0;                  // sum of squared distances to own prototype
    std::vector<double> objective_trace;     // objective after every iteration
    std::size_t iterations = 0;
    bool converged = false;
    std::uint64_t run_seed = 0;              // seed of the winning restart

    std::size_t k() const noexcept { return prototypes.size(); }
    std::map<std::string, std::size_t> assignment_map() const;
    std::vector<std::size_t> cluster_sizes() const;
};

/// Euclidean distance between two sparse vectors over `dimension`
/// coordinates. Grouped sums per variable group; the value is the same up to
/// rounding. Throws DimensionMismatch for an index outside the vocabulary.
double distance(const SparseVector& x, const SparseVector& y, std::span<const IndexRange> groups,
                DistanceMode mode, std::size_t dimension);

/// Dense counterpart used by the clustering loop.
double squared_distance(std::span<const double> x, std::span<const double> y, std::span<const IndexRange> groups,
                        DistanceMode mode);

/// Coordinate-wise sum of the members; with normalize, each non-zero group is
/// rescaled to sum 1. Throws EmptyCluster.
SparseVector compute_prototype(std::span<const SparseVector> members, bool normalize,
                               std::span<const IndexRange> groups, std::size_t dimension);

/// Seeded k-means over the matrix rows: `restarts` runs from distinct random
/// documents, best objective kept. Throws KTooLarge, EmptyVocabulary.
ClusterModel cluster(const FeatureMatrix& matrix, const ClusterConfig& config);

/// A single run whose initial prototypes are the named documents, in order.
ClusterModel cluster_from(const FeatureMatrix& matrix, const ClusterConfig& config,
                          std::span<const std::string> initial_doc_ids);

/// SplitMix64 step, used to derive per-restart and per-run seeds.
std::uint64_t mix_seed(std::uint64_t seed);

}  // namespace pathmine
