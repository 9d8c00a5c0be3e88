#include "secantkit/closedform.hpp"

#include <stdexcept>

namespace secantkit {

LambdaStats lambda_stats(const std::vector<int>& delta, const NPartition& lam) {
    if (lam.n() != delta.size()) throw std::invalid_argument("lambda has the wrong number of factors");
    LambdaStats s;
    for (std::size_t i = 0; i < delta.size(); ++i) {
        const int l2 = lam[i][1];
        s.e += l2;
        s.f = std::max(s.f, (l2 + delta[i] - 1) / delta[i]);
    }
    return s;
}

std::int64_t m_lambda(const Shape& shape, const NPartition& lam) {
    if (shape.k != 2) throw std::invalid_argument("the closed form covers k = 2 only");
    for (int i = 0; i < shape.n(); ++i)
        if (lam[i].size() != shape.label_count(i)) throw std::invalid_argument("lambda does not match the shape");
    if (lam.max_length() > 2) return 0;
    const auto [f, e] = lambda_stats(shape.delta, lam);
    const int r = shape.r;
    if (e < 2 * f) return 0;
    std::int64_t m;
    if (e >= r - 1) {
        m = r / 2 - f + 1;
        if (e % 2 == 1 && r % 2 == 0) --m;
    } else {
        m = (e + 1) / 2 - f + 1;
        if (e % 2 == 1) --m;
    }
    if (m < 0) throw std::logic_error("negative multiplicity for " + lam.to_string());
    return m;
}

std::vector<NPartition> two_row_candidates(const Shape& shape) { return n_partitions(shape, 2); }

DecompositionTable closed_form_table(const Shape& shape) {
    DecompositionTable out;
    for (const auto& lam : two_row_candidates(shape))
        if (auto m = m_lambda(shape, lam)) out[lam] = m;
    return out;
}

Integer table_dimension(const DecompositionTable& table, const std::vector<int>& dims) {
    Integer total = 0;
    for (const auto& [lam, m] : table) {
        if (lam.n() != dims.size()) throw std::invalid_argument("dims do not match the table");
        Integer d = m;
        for (std::size_t i = 0; i < dims.size(); ++i) d *= dim_schur(lam[i], dims[i]);
        total += d;
    }
    return total;
}

Integer hilbert(const Shape& shape, const std::vector<int>& dims) {
    if (static_cast<int>(dims.size()) != shape.n()) throw std::invalid_argument("one dimension per factor");
    for (int m : dims)
        if (m < 2) throw std::invalid_argument("dimensions must be at least 2");
    return table_dimension(closed_form_table(shape), dims);
}

namespace {

DecompositionTable degree_zero(std::size_t n) { return {{NPartition(std::vector<Partition>(n)), 1}}; }

}  // namespace

DecompositionTable sym_of_triple_tensor(int r) {
    if (r < 0) throw std::invalid_argument("r must be nonnegative");
    if (r == 0) return degree_zero(3);
    return closed_form_table(Shape({1, 1, 1}, r));
}

DecompositionTable schur_of_pair_tensor(const Partition& mu) {
    if (mu.length() > 2) throw std::invalid_argument("mu must have at most two parts");
    if (mu.size() == 0) return degree_zero(2);
    DecompositionTable out;
    for (const auto& [lam, m] : sym_of_triple_tensor(mu.size()))
        if (lam[2] == mu) out[NPartition({lam[0], lam[1]})] = m;
    return out;
}

DecompositionTable sym_of_sym3(int r) {
    if (r < 0) throw std::invalid_argument("r must be nonnegative");
    if (r == 0) return degree_zero(1);
    return closed_form_table(Shape({3}, r));
}

}  // namespace secantkit
