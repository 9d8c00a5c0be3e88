#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "secantkit/exactlinalg.hpp"
#include "secantkit/zeroweight.hpp"

namespace secantkit {

// Throws std::invalid_argument unless lam^j is a partition of r * d_j.
void check_profile(const NPartition& lam, const std::vector<int>& delta, int r);

// Canonical n-tableau of lam: boxes of factor j are numbered 1..|lam^j|
// left to right, top to bottom.
struct YoungSymmetrizer {
    NPartition lam;
    std::vector<std::vector<std::vector<int>>> rows;     // [j][i] boxes in row i
    std::vector<std::vector<std::vector<int>>> columns;  // [j][c] boxes in column c, top to bottom
    std::vector<std::vector<int>> row_of;                // [j][a-1] row index of box a

    explicit YoungSymmetrizer(NPartition lam);

    Integer row_group_order() const;
    Integer column_group_order() const;
    // Adjacent transpositions inside rows (R) and inside columns (C).
    std::vector<GroupElement> row_generators() const;
    std::vector<GroupElement> column_generators() const;
    // Every element of C with its sign; throws std::length_error above `cap`.
    std::vector<std::pair<GroupElement, int>> column_group(std::size_t cap = 2000000) const;
};

// b_lam * v, a_lam * v and c_lam * v = a_lam * (b_lam * v) on U_mu coordinates.
SparseVector apply_column_antisymmetrizer(const YoungSymmetrizer& ys, const BlockBasis& basis, const SparseVector& v);
SparseVector apply_row_symmetrizer(const YoungSymmetrizer& ys, const BlockBasis& basis, const SparseVector& v);
SparseVector apply_symmetrizer(const NPartition& lam, const BlockBasis& basis, const SparseVector& v);

// Relabels each entry a of column j by the row of box a in lam^j (1-based),
// then canonicalizes. The result lives on the same layout.
Block specialize_labels(const YoungSymmetrizer& ys, const Block& b);

// y(b) = Q_lam(b_lam * b), a weight-monomial expansion. Since Q_lam is
// injective on a_lam * U and Q_lam(a_lam x) = |R| Q_lam(x), the rank of
// {y(w)} over a spanning set of W equals dim c_lam * W.
class HwtProjector {
public:
    HwtProjector(NPartition lam, std::shared_ptr<const BlockBasis> basis);

    const NPartition& lam() const { return ys_.lam; }
    const YoungSymmetrizer& symmetrizer() const { return ys_; }
    const BlockBasis& basis() const { return *basis_; }

    // One block per C_lam-orbit of the basis, skipping orbits that b_lam
    // kills; y(g b) = sgn(g) y(b) for g in C_lam, so these span the image.
    const std::vector<std::uint32_t>& orbit_representatives();
    // Computes y for every orbit representative (in parallel).
    void precompute();
    const SparseVector& image(std::uint32_t block);
    SparseVector apply(const SparseVector& v);
    BigVector apply(const BigVector& v);

    std::size_t monomial_count() const { return monomials_.size(); }
    Block monomial(std::uint32_t id) const;

    // Pure: the expansion of y(b) keyed by monomial labels.
    std::vector<std::pair<std::string, std::int64_t>> raw_image(const Block& b) const;

private:
    SparseVector intern(const std::vector<std::pair<std::string, std::int64_t>>& raw);

    YoungSymmetrizer ys_;
    std::shared_ptr<const BlockBasis> basis_;
    std::vector<std::optional<SparseVector>> cache_;
    std::optional<std::vector<std::uint32_t>> reps_;
    std::unordered_map<std::string, std::uint32_t> ids_;
    std::vector<std::string> monomials_;
};

std::size_t multiplicity_sym(HwtProjector& proj, const std::vector<SparseVector>& spanning,
                             std::optional<std::size_t> stop_at = {});
std::size_t multiplicity_sym(HwtProjector& proj, const std::vector<BigVector>& spanning);
// W given in the coordinates of `basis`.
std::size_t multiplicity_sym(const NPartition& lam, std::shared_ptr<const BlockBasis> basis, const Subspace& W);
std::size_t multiplicity_in_full(const NPartition& lam, const Shape& shape, const Partition& mu);
DecompositionTable decompose_sym(const Shape& shape, const Partition& mu);

// Murnaghan-Nakayama; memoized.
Integer character_value(const Partition& lam, const Partition& ct);

using CycleType = std::vector<Partition>;
// Consecutive cycles: (1..c1)(c1+1..c1+c2)...
GroupElement cycle_type_representative(const CycleType& ct);
Integer centralizer_order(const Partition& ct);
// Number of basis blocks fixed by each class representative; cached.
const std::vector<std::pair<CycleType, std::int64_t>>& fixed_block_counts(const Shape& shape, const Partition& mu);
std::int64_t multiplicity_char(const NPartition& lam, const Shape& shape, const Partition& mu);
DecompositionTable decompose_char(const Shape& shape, const Partition& mu);

// Multiplicities of one irreducible in U, in I_r, in F and in F_1.
struct IsotypicRow {
    NPartition lam;
    std::size_t in_U = 0;
    std::size_t in_I = 0;
    std::size_t in_F = 0;
    std::size_t in_F1 = 0;
};

struct IsotypicOptions {
    int minor_size = 0;  // 0 means k + 1
    bool one_flattenings = false;
    // Above this many generators in total, throws std::length_error.
    std::size_t generator_cap = 3000000;
};

// Per-lambda analysis of U_r, I_r and the flattening spans without building
// them in U coordinates.
class IsotypicAnalysis {
public:
    IsotypicAnalysis(Shape shape, IsotypicOptions opts = {});

    const Shape& shape() const { return shape_; }
    IsotypicRow analyze(const NPartition& lam) const;
    // All lam whose components have at most r parts, in n_partitions order,
    // computed in parallel.
    std::vector<IsotypicRow> analyze_all() const;
    std::size_t generator_count() const { return generators_.size(); }

private:
    Shape shape_;
    IsotypicOptions opts_;
    std::shared_ptr<const BlockBasis> basis_;
    std::vector<std::vector<SparseVector>> pi_columns_;  // per mu, image of each block
    std::vector<std::shared_ptr<const BlockBasis>> targets_;
    std::vector<SparseVector> generators_;
    std::size_t one_flattening_count_ = 0;  // the first generators are the 1-flattenings
};

}  // namespace secantkit
