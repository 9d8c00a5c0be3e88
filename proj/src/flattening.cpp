#include "secantkit/flattening.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "secantkit/parallel.hpp"

namespace secantkit {

int FlatteningSplit::size_a() const { return std::accumulate(A.begin(), A.end(), 0); }
int FlatteningSplit::size_b() const { return std::accumulate(B.begin(), B.end(), 0); }
std::string FlatteningSplit::to_string() const { return join_ints(A) + "/" + join_ints(B); }

std::vector<FlatteningSplit> flattening_splits(const Shape& shape) {
    std::vector<FlatteningSplit> out;
    std::vector<int> a = shape.delta;
    while (true) {
        FlatteningSplit s{a, {}};
        for (int j = 0; j < shape.n(); ++j) s.B.push_back(shape.delta[j] - a[j]);
        if (s.size_a() >= 1 && s.size_b() >= 1) out.push_back(s);
        int j = shape.n() - 1;
        while (j >= 0 && a[j] == 0) {
            a[j] = shape.delta[j];
            --j;
        }
        if (j < 0) break;
        --a[j];
    }
    return out;
}

std::vector<FlatteningSplit> distinct_splits(const Shape& shape, bool one_flattenings_only) {
    std::vector<FlatteningSplit> out;
    for (const auto& s : flattening_splits(shape)) {
        if (one_flattenings_only && s.size_a() != 1) continue;
        if (std::find(out.begin(), out.end(), s.transposed()) != out.end()) continue;
        out.push_back(s);
    }
    return out;
}

void validate(const Shape& shape, const MinorGenerator& g) {
    const int k = g.minor_size();
    if (static_cast<int>(g.betas.size()) != k) throw std::invalid_argument("minor: alphas and betas differ in count");
    if (k + static_cast<int>(g.gammas.size()) != shape.r)
        throw std::invalid_argument("minor: k plus the number of gammas must equal r");
    auto all = [&](auto&& fn) {
        for (const auto& t : g.alphas) fn(t);
        for (const auto& t : g.betas) fn(t);
        for (const auto& t : g.gammas) fn(t);
    };
    all([&](const MinorGenerator::Tuple& t) {
        if (static_cast<int>(t.size()) != shape.n()) throw std::invalid_argument("minor: tuple has wrong length");
    });
    for (int j = 0; j < shape.n(); ++j) {
        for (int i = 0; i < k; ++i)
            if (static_cast<int>(g.alphas[i][j].size() + g.betas[i][j].size()) != shape.delta[j])
                throw std::invalid_argument("minor: alpha and beta sizes must add up to delta");
        for (const auto& t : g.gammas)
            if (static_cast<int>(t[j].size()) != shape.delta[j])
                throw std::invalid_argument("minor: gamma sizes must equal delta");
        for (int i = 1; i < k; ++i)
            if (g.alphas[i][j].size() != g.alphas[0][j].size() || g.betas[i][j].size() != g.betas[0][j].size())
                throw std::invalid_argument("minor: alphas (betas) must share one size per column");
        std::vector<int> seen(shape.label_count(j) + 1, 0);
        all([&](const MinorGenerator::Tuple& t) {
            for (int a : t[j])
                if (a < 1 || a > shape.label_count(j) || seen[a]++)
                    throw std::invalid_argument("minor: column " + std::to_string(j + 1) + " is not a partition");
        });
    }
}

namespace {

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t k = i + 1; k < p.size(); ++k)
            if (p[i] > p[k]) ++inv;
    return inv % 2 ? -1 : 1;
}

void write_cell(std::string& labels, std::size_t off, const std::vector<int>& a, const std::vector<int>& b) {
    for (int x : a) labels[off++] = static_cast<char>(x);
    for (int x : b) labels[off++] = static_cast<char>(x);
}

template <class Fn>
void for_each_term(const Shape& shape, const MinorGenerator& g, Fn&& fn) {
    const auto& layout = BlockLayout::get(shape.delta, Partition(std::vector<int>(shape.r, 1)));
    const int k = g.minor_size();
    std::string labels(layout.total(), '\0');
    for (std::size_t t = 0; t < g.gammas.size(); ++t)
        for (int j = 0; j < shape.n(); ++j)
            write_cell(labels, layout.cell_offset(k + static_cast<int>(t), j), g.gammas[t][j], {});
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        std::string l = labels;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < shape.n(); ++j)
                write_cell(l, layout.cell_offset(i, j), g.alphas[i][j], g.betas[perm[i]][j]);
        canonicalize(layout, l);
        fn(Block{&layout, std::move(l)}, permutation_sign(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

std::vector<SignedBlock> expand_minor_terms(const Shape& shape, const MinorGenerator& g) {
    validate(shape, g);
    std::vector<SignedBlock> out;
    for_each_term(shape, g, [&](Block b, int sign) { out.push_back({std::move(b), sign}); });
    return out;
}

SparseVector expand_minor(const Shape& shape, const MinorGenerator& g, const BlockBasis& basis) {
    validate(shape, g);
    SparseVector v;
    for_each_term(shape, g, [&](const Block& b, int sign) { v.emplace_back(index_of(b, basis), sign); });
    normalize(v);
    return v;
}

namespace {

// Enumeration skips validation: the distributions are partitions by construction.
SparseVector expand_unchecked(const Shape& shape, const MinorGenerator& g, const BlockBasis& basis) {
    SparseVector v;
    for_each_term(shape, g, [&](const Block& b, int sign) {
        auto i = basis.find(b.labels);
        if (i < 0) throw std::logic_error("minor term outside the basis: " + b.to_string());
        v.emplace_back(static_cast<std::uint32_t>(i), sign);
    });
    normalize(v);
    return v;
}

struct MinorEnumerator {
    const Shape& shape;
    const FlatteningSplit& split;
    int k;
    const std::function<void(const MinorGenerator&)>& fn;
    int first_a = -1, first_b = -1;
    MinorGenerator g;

    void run() {
        for (int j = 0; j < shape.n(); ++j) {
            if (first_a < 0 && split.A[j] > 0) first_a = j;
            if (first_b < 0 && split.B[j] > 0) first_b = j;
        }
        g.alphas.assign(k, MinorGenerator::Tuple(shape.n()));
        g.betas.assign(k, MinorGenerator::Tuple(shape.n()));
        g.gammas.assign(shape.r - k, MinorGenerator::Tuple(shape.n()));
        column(0);
    }

    void column(int j) {
        if (j == shape.n()) {
            fn(g);
            return;
        }
        std::vector<SlotGroup> groups{{k, split.A[j], j == first_a},
                                      {k, split.B[j], j == first_b},
                                      {shape.r - k, shape.delta[j], j == 0}};
        std::vector<int> pool(shape.label_count(j));
        std::iota(pool.begin(), pool.end(), 1);
        for_each_distribution(pool, groups, [&](const std::vector<std::vector<int>>& slots) {
            for (int i = 0; i < k; ++i) {
                g.alphas[i][j] = slots[i];
                g.betas[i][j] = slots[k + i];
            }
            for (int t = 0; t < shape.r - k; ++t) g.gammas[t][j] = slots[2 * k + t];
            column(j + 1);
        });
    }
};

struct StopEnumeration {};

}  // namespace

void for_each_minor(const Shape& shape, const FlatteningSplit& split, int minor_size,
                    const std::function<void(const MinorGenerator&)>& fn) {
    if (minor_size < 1 || minor_size > shape.r) return;
    if (static_cast<int>(split.A.size()) != shape.n() || static_cast<int>(split.B.size()) != shape.n())
        throw std::invalid_argument("split length does not match the shape");
    MinorEnumerator e{shape, split, minor_size, fn, -1, -1, {}};
    e.run();
}

Integer minor_count(const Shape& shape, const FlatteningSplit& split, int k) {
    if (k < 1 || k > shape.r) return 0;
    Integer total = 1;
    bool seen_a = false, seen_b = false;
    for (int j = 0; j < shape.n(); ++j) {
        Integer c = factorial(shape.label_count(j));
        for (int i = 0; i < k; ++i) c /= factorial(split.A[j]) * factorial(split.B[j]);
        for (int i = 0; i < shape.r - k; ++i) c /= factorial(shape.delta[j]);
        if (split.A[j] > 0 && !seen_a) {
            c /= factorial(k);
            seen_a = true;
        }
        if (split.B[j] > 0 && !seen_b) {
            c /= factorial(k);
            seen_b = true;
        }
        if (j == 0) c /= factorial(shape.r - k);
        total *= c;
    }
    return total;
}

SparseVector act(const GroupElement& g, const SparseVector& v, const BlockBasis& basis) {
    SparseVector out;
    out.reserve(v.size());
    for (const auto& [i, c] : v) out.emplace_back(index_of(act(g, basis[i]), basis), c);
    normalize(out);
    return out;
}

void saturate(Subspace& span, std::vector<SparseVector> seeds, const Shape& shape, const BlockBasis& basis) {
    std::vector<GroupElement> gens;
    for (int j = 0; j < shape.n(); ++j)
        for (int a = 1; a < shape.label_count(j); ++a) gens.push_back(GroupElement::transposition(shape, j, a, a + 1));
    std::deque<SparseVector> queue;
    for (auto& s : seeds)
        if (span.insert(s)) queue.push_back(std::move(s));
    while (!queue.empty()) {
        SparseVector v = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : gens) {
            auto w = act(g, v, basis);
            if (span.insert(w)) queue.push_back(std::move(w));
        }
    }
}

FlatteningResult build_flattening_space(const Shape& shape, const FlatteningOptions& opts) {
    const int m = opts.minor_size > 0 ? opts.minor_size : shape.k + 1;
    auto basis = enumerate_basis(shape);
    FlatteningResult result{Subspace(basis->size()), {}, false};
    auto splits = distinct_splits(shape, opts.one_flattenings_only);
    Integer total = 0;
    for (const auto& s : splits) {
        result.splits.push_back({s, minor_count(shape, s, m), 0});
        total += result.splits.back().generators;
    }
    if (m > shape.r || splits.empty()) return result;

    result.saturated = opts.force_saturation || total > Integer(static_cast<unsigned long>(opts.full_enumeration_threshold));
    std::vector<Subspace> per_split(splits.size(), Subspace(basis->size()));
    parallel_for(splits.size(), [&](std::size_t i) {
        Subspace& span = per_split[i];
        if (result.saturated) {
            std::vector<SparseVector> seed;
            try {
                for_each_minor(shape, splits[i], m, [&](const MinorGenerator& g) {
                    seed.push_back(expand_unchecked(shape, g, *basis));
                    throw StopEnumeration{};
                });
            } catch (const StopEnumeration&) {
            }
            saturate(span, std::move(seed), shape, *basis);
        } else {
            for_each_minor(shape, splits[i], m,
                           [&](const MinorGenerator& g) { span.insert(expand_unchecked(shape, g, *basis)); });
        }
    });
    for (std::size_t i = 0; i < splits.size(); ++i) {
        result.splits[i].dim = per_split[i].dim();
        for (const auto& v : per_split[i].integer_basis()) result.span.insert(v);
    }
    return result;
}

Subspace flattening_space(const Shape& shape) { return build_flattening_space(shape, {}).span; }

Subspace one_flattening_space(const Shape& shape, int minor_size) {
    FlatteningOptions opts;
    opts.minor_size = minor_size;
    opts.one_flattenings_only = true;
    return build_flattening_space(shape, opts).span;
}

}  // namespace secantkit
