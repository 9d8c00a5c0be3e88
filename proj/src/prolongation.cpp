#include "secantkit/prolongation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace secantkit {

std::vector<std::vector<std::vector<int>>> row_set_partitions(const Partition& mu) {
    std::vector<SlotGroup> groups;
    for (int i = 0; i < mu.length();) {
        int e = i;
        while (e < mu.length() && mu[e] == mu[i]) ++e;
        groups.push_back({e - i, mu[i], true});
        i = e;
    }
    std::vector<int> pool(mu.size());
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::vector<std::vector<int>>> out;
    for_each_distribution(pool, groups, [&](const auto& slots) { out.push_back(slots); });
    return out;
}

Integer set_partition_count(const Partition& mu) {
    Integer den = 1;
    for (int i = 0; i < mu.length();) {
        int e = i;
        while (e < mu.length() && mu[e] == mu[i]) ++e;
        den *= factorial(e - i);
        for (int k = i; k < e; ++k) den *= factorial(mu[k]);
        i = e;
    }
    return factorial(mu.size()) / den;
}

Block collapse_rows(const Block& b, const std::vector<std::vector<int>>& groups) {
    const auto& src = *b.layout;
    std::vector<std::pair<int, std::size_t>> sizes;
    std::vector<bool> used(src.rows(), false);
    for (std::size_t g = 0; g < groups.size(); ++g) {
        int m = 0;
        for (int i : groups[g]) {
            if (i < 0 || i >= src.rows() || used[i]) throw std::invalid_argument("collapse: bad row groups");
            used[i] = true;
            m += src.mu()[i];
        }
        sizes.emplace_back(m, g);
    }
    if (std::find(used.begin(), used.end(), false) != used.end())
        throw std::invalid_argument("collapse: groups must cover all rows");
    std::stable_sort(sizes.begin(), sizes.end(), [](auto x, auto y) { return x.first > y.first; });
    std::vector<int> mu;
    for (auto [m, g] : sizes) mu.push_back(m);
    const auto& dst = BlockLayout::get(src.delta(), Partition(mu));

    Block out{&dst, std::string(dst.total(), '\0')};
    for (int t = 0; t < dst.rows(); ++t) {
        for (int j = 0; j < dst.columns(); ++j) {
            auto w = out.labels.begin() + dst.cell_offset(t, j);
            for (int i : groups[sizes[t].second]) {
                auto r = b.labels.begin() + src.cell_offset(i, j);
                w = std::copy(r, r + src.cell_size(i, j), w);
            }
        }
    }
    canonicalize(dst, out.labels);
    return out;
}

ExactMatrix PiMatrix::matrix() const { return ExactMatrix::from_columns(target->size(), columns); }

std::vector<SparseVector> PiMatrix::rows() const {
    std::vector<SparseVector> out(target->size());
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const auto& [r, v] : columns[c]) out[r].emplace_back(static_cast<std::uint32_t>(c), v);
    return out;
}

SparseVector PiMatrix::apply(const SparseVector& v) const {
    SparseVector out;
    for (const auto& [c, x] : v)
        for (const auto& [r, y] : columns[c]) out.emplace_back(r, x * y);
    normalize(out);
    return out;
}

PiMatrix build_pi(const Shape& shape, const Partition& mu) {
    if (mu.size() != shape.r) throw std::invalid_argument("build_pi: mu must partition r");
    PiMatrix pi{shape, mu, enumerate_basis(shape), enumerate_basis(shape, mu), {}};
    const auto parts = row_set_partitions(mu);
    pi.columns.reserve(pi.source->size());
    for (const auto& b : pi.source->blocks()) {
        SparseVector col;
        col.reserve(parts.size());
        for (const auto& groups : parts) col.emplace_back(index_of(collapse_rows(b, groups), *pi.target), 1);
        normalize(col);
        pi.columns.push_back(std::move(col));
    }
    return pi;
}

std::vector<Partition> exact_part_partitions(int r, int k) {
    std::vector<Partition> out;
    if (r < 0 || k < 1) return out;
    for (auto& p : partitions(r, k))
        if (p.length() == k) out.push_back(p);
    return out;
}

Subspace generic_ideal_part(const Shape& shape) {
    auto basis = enumerate_basis(shape);
    if (shape.r <= shape.k) return Subspace(basis->size());
    std::vector<SparseVector> rows;
    for (const auto& mu : exact_part_partitions(shape.r, shape.k)) {
        auto pi = build_pi(shape, mu);
        for (auto& row : pi.rows()) rows.push_back(std::move(row));
    }
    return kernel(ExactMatrix::from_rows(basis->size(), rows));
}

std::size_t generic_ideal_dim(const Shape& shape, const IdealDimOptions& opts) {
    auto basis = enumerate_basis(shape);
    const std::size_t n = basis->size();
    if (shape.r <= shape.k) return 0;
    Echelon e(false);
    for (const auto& mu : exact_part_partitions(shape.r, shape.k)) {
        auto pi = build_pi(shape, mu);
        for (const auto& row : pi.rows()) e.insert(row);
        if (opts.stop_at && n - e.rank() <= *opts.stop_at) break;
    }
    return n - e.rank();
}

}  // namespace secantkit
