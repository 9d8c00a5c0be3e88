#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "secantkit/exactlinalg.hpp"
#include "secantkit/zeroweight.hpp"

namespace secantkit {

// Unordered set partitions of the rows {0..r-1} with block sizes mu; entry i
// lists the source rows that collapse into target row i.
std::vector<std::vector<std::vector<int>>> row_set_partitions(const Partition& mu);
Integer set_partition_count(const Partition& mu);

// Columnwise union of the given groups of rows, re-canonicalized.
Block collapse_rows(const Block& b, const std::vector<std::vector<int>>& groups);

struct PiMatrix {
    Shape shape;
    Partition mu;
    std::shared_ptr<const BlockBasis> source;
    std::shared_ptr<const BlockBasis> target;
    std::vector<SparseVector> columns;  // image of each source block

    ExactMatrix matrix() const;
    std::vector<SparseVector> rows() const;
    SparseVector apply(const SparseVector& v) const;
};

PiMatrix build_pi(const Shape& shape, const Partition& mu);

// Partitions of r with exactly k parts, reverse-lexicographic.
std::vector<Partition> exact_part_partitions(int r, int k);

Subspace generic_ideal_part(const Shape& shape);

struct IdealDimOptions {
    // Stop adding maps once the running dimension reaches this value.
    std::optional<std::size_t> stop_at;
};
std::size_t generic_ideal_dim(const Shape& shape, const IdealDimOptions& opts = {});

}  // namespace secantkit
