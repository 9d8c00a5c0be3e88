#pragma once

#include <cstddef>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "secantkit/combinatorics.hpp"
#include "secantkit/zeroweight.hpp"

namespace secantkit {

// A product of commuting variables z_alpha, one per block row; cell (i, j)
// is the multiset alpha_j of variable indices 1..dims[j] (mu_i * d_j of them).
struct WeightMonomial {
    std::vector<int> dims;
    Block cells;  // canonical; labels are variable indices

    // counts[j][v-1]: occurrences of variable v in column j
    std::vector<std::vector<int>> weight() const;
    bool has_weight(const NPartition& lam) const;
    std::string to_string() const { return cells.to_string(); }
    // Same text format as blocks, e.g. "1,2|1 ; 1,1|3"; entries must lie in 1..dims[j].
    static WeightMonomial parse(const std::vector<int>& delta, const std::vector<int>& dims, const std::string& text);
    bool operator==(const WeightMonomial& o) const { return dims == o.dims && cells == o.cells; }
};

// Replaces each entry a of column j by the row of box a in lam^j. Empty dims
// means dims[j] = number of parts of lam^j.
WeightMonomial specialize_Q(const NPartition& lam, const Block& b, std::vector<int> dims = {});

// The uniform average of the blocks specializing to a weight monomial, kept
// as one representative plus the size of its row-group orbit.
struct Polarization {
    NPartition lam;
    Block representative;
    Integer orbit_size;

    Rational coefficient() const { return Rational(1, 1) / Rational(orbit_size); }
    // Uniform element of the orbit.
    Block sample(std::mt19937_64& rng) const;
    // All blocks of the orbit, sorted; throws std::length_error above `cap`.
    std::vector<Block> expand(std::size_t cap = 100000) const;
};

// Throws std::invalid_argument unless w has weight lam.
Polarization polarize_P(const NPartition& lam, const WeightMonomial& w);

// Formal sums keyed by the canonical text of a block or monomial.
using TermSum = std::map<std::string, Integer>;

// Sum over set partitions of the rows of w into blocks of sizes mu of the
// monomial obtained by merging each block into one variable.
TermSum pi_mu_nongeneric(const WeightMonomial& w, const Partition& mu);
// specialize_Q applied term by term to a formal sum of blocks.
TermSum specialize_sum(const NPartition& lam, const std::vector<std::pair<Block, Integer>>& terms,
                       const std::vector<int>& dims = {});

// Multiplicity of S_lam V in U_r(V), in the multi-prolongation I_r(V) and in
// the span F(V) of (k+1)-minors of flattenings, computed on the lam-weight
// space with raising operators.
struct NongenericRow {
    std::size_t weight_space_dim = 0;
    std::size_t in_U = 0;
    std::size_t in_I = 0;
    std::size_t in_F = 0;
};
// Throws std::length_error when the weight space exceeds `cap` monomials.
NongenericRow nongeneric_multiplicities(const Shape& shape, const std::vector<int>& dims, const NPartition& lam,
                                        std::size_t cap = 20000);

// Compares the nongeneric multiplicity of lam in F(V) with the generic one.
// Lambdas with more parts than dims are vacuously true.
bool nongeneric_flattening_rank_check(const Shape& shape, const std::vector<int>& dims, const NPartition& lam,
                                      std::size_t cap = 20000);

}  // namespace secantkit
