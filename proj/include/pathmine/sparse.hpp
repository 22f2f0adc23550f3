#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace pathmine {

/// Sparse vector over a vocabulary; indices strictly increasing.
struct SparseVector {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;

    std::size_t nnz() const noexcept { return indices.size(); }
    bool operator==(const SparseVector&) const = default;

    /// Appends one coordinate; index must exceed the last one.
    void push(std::uint32_t index, double value) {
        indices.push_back(index);
        values.push_back(value);
    }

    static SparseVector from_dense(std::span<const double> dense);
    std::vector<double> to_dense(std::size_t dimension) const;
};

/// Half-open index range [begin, end) of one variable group.
struct IndexRange {
    std::size_t begin = 0;
    std::size_t end = 0;

    std::size_t size() const noexcept { return end - begin; }
    bool operator==(const IndexRange&) const = default;
};

}  // namespace pathmine
