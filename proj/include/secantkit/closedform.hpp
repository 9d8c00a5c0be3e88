#pragma once

#include <vector>

#include "secantkit/combinatorics.hpp"

namespace secantkit {

// f = max_i ceil(lam^i_2 / d_i), e = sum_i lam^i_2.
struct LambdaStats {
    int f = 0;
    int e = 0;
};
LambdaStats lambda_stats(const std::vector<int>& delta, const NPartition& lam);

// Multiplicity of S_lam V in the degree r part of the coordinate ring of the
// secant line variety. Requires shape.k == 2.
std::int64_t m_lambda(const Shape& shape, const NPartition& lam);

// n-partitions of the profile whose components have at most two parts.
std::vector<NPartition> two_row_candidates(const Shape& shape);
DecompositionTable closed_form_table(const Shape& shape);

// Sum of m_lambda * prod dim_schur(lam^i, dims[i]); dims[i] >= 2.
Integer hilbert(const Shape& shape, const std::vector<int>& dims);
Integer table_dimension(const DecompositionTable& table, const std::vector<int>& dims);

// Sym^r(V1 x V2 x V3), dim V_i = 2.
DecompositionTable sym_of_triple_tensor(int r);
// S_mu(V1 x V2), dim V_i = 2, mu with at most two parts.
DecompositionTable schur_of_pair_tensor(const Partition& mu);
// Sym^r(Sym^3 V), dim V = 2.
DecompositionTable sym_of_sym3(int r);

}  // namespace secantkit
