#pragma once

#include <functional>
#include <string>
#include <vector>

#include "secantkit/exactlinalg.hpp"
#include "secantkit/zeroweight.hpp"

namespace secantkit {

struct FlatteningSplit {
    std::vector<int> A;
    std::vector<int> B;

    int size_a() const;
    int size_b() const;
    FlatteningSplit transposed() const { return {B, A}; }
    std::string to_string() const;  // "1,1/1,0"
    bool operator==(const FlatteningSplit&) const = default;
};

// All splits A + B = delta with |A| >= 1 and |B| >= 1, ordered by A
// lexicographically descending.
std::vector<FlatteningSplit> flattening_splits(const Shape& shape);

// [alpha^1..alpha^k | beta^1..beta^k] * z_gamma^(k+1) ... z_gamma^r.
// Each entry is an n-tuple of label sets, one per column.
struct MinorGenerator {
    using Tuple = std::vector<std::vector<int>>;
    std::vector<Tuple> alphas;
    std::vector<Tuple> betas;
    std::vector<Tuple> gammas;

    int minor_size() const { return static_cast<int>(alphas.size()); }
};

struct SignedBlock {
    Block block;
    int sign;
};

// Throws std::invalid_argument when the sets do not partition each column.
void validate(const Shape& shape, const MinorGenerator& g);

// The k! determinant terms, in lexicographic permutation order, each block
// canonicalized but not merged.
std::vector<SignedBlock> expand_minor_terms(const Shape& shape, const MinorGenerator& g);
SparseVector expand_minor(const Shape& shape, const MinorGenerator& g, const BlockBasis& basis);

// Every generator of the split, once up to sign.
void for_each_minor(const Shape& shape, const FlatteningSplit& split, int minor_size,
                    const std::function<void(const MinorGenerator&)>& fn);
Integer minor_count(const Shape& shape, const FlatteningSplit& split, int minor_size);

// The sum of a vector's images under g.
SparseVector act(const GroupElement& g, const SparseVector& v, const BlockBasis& basis);

struct FlatteningOptions {
    int minor_size = 0;  // 0 means k + 1
    bool one_flattenings_only = false;
    std::size_t full_enumeration_threshold = 200000;
    bool force_saturation = false;
};

struct SplitReport {
    FlatteningSplit split;
    Integer generators;
    std::size_t dim = 0;
};

struct FlatteningResult {
    Subspace span;
    std::vector<SplitReport> splits;
    bool saturated = false;
};

// Splits used for the span; (A,B) and (B,A) give the same minors up to
// transposition, so only one of each pair is kept.
std::vector<FlatteningSplit> distinct_splits(const Shape& shape, bool one_flattenings_only);

FlatteningResult build_flattening_space(const Shape& shape, const FlatteningOptions& opts);
Subspace flattening_space(const Shape& shape);
Subspace one_flattening_space(const Shape& shape, int minor_size = 0);

// Closure of a span under the adjacent transpositions of every factor.
void saturate(Subspace& span, std::vector<SparseVector> seeds, const Shape& shape, const BlockBasis& basis);

}  // namespace secantkit
