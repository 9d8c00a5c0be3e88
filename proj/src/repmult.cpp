#include "secantkit/repmult.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "secantkit/flattening.hpp"
#include "secantkit/parallel.hpp"
#include "secantkit/prolongation.hpp"

namespace secantkit {

void check_profile(const NPartition& lam, const std::vector<int>& delta, int r) {
    if (lam.n() != delta.size()) throw std::invalid_argument("lambda has the wrong number of factors");
    for (std::size_t j = 0; j < delta.size(); ++j)
        if (lam[j].size() != r * delta[j])
            throw std::invalid_argument("lambda^" + std::to_string(j + 1) + " must partition " +
                                        std::to_string(r * delta[j]));
}

YoungSymmetrizer::YoungSymmetrizer(NPartition lam_) : lam(std::move(lam_)) {
    for (const auto& p : lam.components()) {
        auto pos = box_coordinates(p);
        std::vector<std::vector<int>> rs(p.length()), cs(p.length() ? p[0] : 0);
        for (int a = 0; a < p.size(); ++a) {
            rs[pos.row[a]].push_back(a + 1);
            cs[pos.col[a]].push_back(a + 1);
        }
        rows.push_back(std::move(rs));
        columns.push_back(std::move(cs));
        row_of.push_back(pos.row);
    }
}

Integer YoungSymmetrizer::row_group_order() const {
    Integer o = 1;
    for (const auto& f : rows)
        for (const auto& r : f) o *= factorial(static_cast<int>(r.size()));
    return o;
}

Integer YoungSymmetrizer::column_group_order() const {
    Integer o = 1;
    for (const auto& f : columns)
        for (const auto& c : f) o *= factorial(static_cast<int>(c.size()));
    return o;
}

namespace {

GroupElement identity_of(const NPartition& lam) {
    GroupElement g;
    for (const auto& p : lam.components()) {
        g.perms.emplace_back(p.size());
        std::iota(g.perms.back().begin(), g.perms.back().end(), 1);
    }
    return g;
}

std::vector<GroupElement> adjacent_transpositions(const NPartition& lam,
                                                  const std::vector<std::vector<std::vector<int>>>& groups) {
    std::vector<GroupElement> out;
    for (std::size_t j = 0; j < groups.size(); ++j)
        for (const auto& g : groups[j])
            for (std::size_t i = 1; i < g.size(); ++i) {
                auto t = identity_of(lam);
                std::swap(t.perms[j][g[i - 1] - 1], t.perms[j][g[i] - 1]);
                out.push_back(std::move(t));
            }
    return out;
}

struct SignedPerm {
    std::vector<int> p;
    int sign;
};

std::vector<SignedPerm> signed_permutations(int h) {
    std::vector<SignedPerm> out;
    std::vector<int> p(h);
    std::iota(p.begin(), p.end(), 0);
    do {
        int inv = 0;
        for (int i = 0; i < h; ++i)
            for (int k = i + 1; k < h; ++k)
                if (p[i] > p[k]) ++inv;
        out.push_back({p, inv % 2 ? -1 : 1});
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

}  // namespace

std::vector<GroupElement> YoungSymmetrizer::row_generators() const { return adjacent_transpositions(lam, rows); }
std::vector<GroupElement> YoungSymmetrizer::column_generators() const { return adjacent_transpositions(lam, columns); }

std::vector<std::pair<GroupElement, int>> YoungSymmetrizer::column_group(std::size_t cap) const {
    if (column_group_order() > Integer(static_cast<unsigned long>(cap)))
        throw std::length_error("column group too large to enumerate");
    std::vector<std::pair<GroupElement, int>> out{{identity_of(lam), 1}};
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (const auto& col : columns[j]) {
            if (col.size() < 2) continue;
            auto perms = signed_permutations(static_cast<int>(col.size()));
            std::vector<std::pair<GroupElement, int>> next;
            next.reserve(out.size() * perms.size());
            for (const auto& [g, s] : out)
                for (const auto& sp : perms) {
                    GroupElement h = g;
                    for (std::size_t i = 0; i < col.size(); ++i) h.perms[j][col[i] - 1] = col[sp.p[i]];
                    next.emplace_back(std::move(h), s * sp.sign);
                }
            out = std::move(next);
        }
    return out;
}

namespace {

void check_basis(const NPartition& lam, const BlockBasis& basis) {
    check_profile(lam, basis.layout().delta(), basis.layout().r());
}

}  // namespace

SparseVector apply_column_antisymmetrizer(const YoungSymmetrizer& ys, const BlockBasis& basis, const SparseVector& v) {
    check_basis(ys.lam, basis);
    auto group = ys.column_group();
    SparseVector out;
    for (const auto& [i, c] : v)
        for (const auto& [g, s] : group) out.emplace_back(index_of(act(g, basis[i]), basis), s * c);
    normalize(out);
    return out;
}

SparseVector apply_row_symmetrizer(const YoungSymmetrizer& ys, const BlockBasis& basis, const SparseVector& v) {
    check_basis(ys.lam, basis);
    constexpr std::size_t cap = 2000000;
    const auto gens = ys.row_generators();
    const Integer order = ys.row_group_order();
    SparseVector out;
    for (const auto& [i, c] : v) {
        // a_lam * b = |Stab(b)| * (sum over the R-orbit of b)
        std::unordered_set<std::uint32_t> seen{i};
        std::deque<std::uint32_t> queue{i};
        while (!queue.empty()) {
            auto x = queue.front();
            queue.pop_front();
            for (const auto& g : gens) {
                auto y = index_of(act(g, basis[x]), basis);
                if (seen.insert(y).second) {
                    if (seen.size() > cap) throw std::length_error("row orbit too large");
                    queue.push_back(y);
                }
            }
        }
        Integer stab = order / static_cast<unsigned long>(seen.size());
        if (!stab.fits_slong_p()) throw OverflowError();
        const std::int64_t scale = stab.get_si();
        std::int64_t coef;
        if (__builtin_mul_overflow(scale, c, &coef)) throw OverflowError();
        for (auto y : seen) out.emplace_back(y, coef);
    }
    normalize(out);
    return out;
}

SparseVector apply_symmetrizer(const NPartition& lam, const BlockBasis& basis, const SparseVector& v) {
    YoungSymmetrizer ys(lam);
    return apply_row_symmetrizer(ys, basis, apply_column_antisymmetrizer(ys, basis, v));
}

Block specialize_labels(const YoungSymmetrizer& ys, const Block& b) {
    const auto& layout = *b.layout;
    check_profile(ys.lam, layout.delta(), layout.r());
    Block out = b;
    for (int i = 0; i < layout.rows(); ++i)
        for (int j = 0; j < layout.columns(); ++j) {
            const std::size_t off = layout.cell_offset(i, j);
            for (int t = 0; t < layout.cell_size(i, j); ++t) {
                const int a = static_cast<unsigned char>(b.labels[off + t]);
                out.labels[off + t] = static_cast<char>(ys.row_of[j][a - 1] + 1);
            }
        }
    canonicalize(layout, out.labels);
    return out;
}

HwtProjector::HwtProjector(NPartition lam, std::shared_ptr<const BlockBasis> basis)
    : ys_(std::move(lam)), basis_(std::move(basis)) {
    check_basis(ys_.lam, *basis_);
    cache_.resize(basis_->size());
}

std::vector<std::pair<std::string, std::int64_t>> HwtProjector::raw_image(const Block& b) const {
    const auto& layout = *b.layout;
    const int t = layout.rows();
    const int n = layout.columns();
    // counts[(row * L) + off[j] + l] = occurrences of label l+1 in cell (row, j)
    std::vector<int> off(n + 1, 0);
    for (int j = 0; j < n; ++j) off[j + 1] = off[j] + ys_.lam[j].length();
    const int L = off[n];

    std::vector<std::vector<int>> owner(n);
    for (int j = 0; j < n; ++j) {
        owner[j].assign(layout.label_count(j), -1);
        for (int i = 0; i < t; ++i) {
            const std::size_t o = layout.cell_offset(i, j);
            for (int s = 0; s < layout.cell_size(i, j); ++s) owner[j][static_cast<unsigned char>(b.labels[o + s]) - 1] = i;
        }
    }

    std::string base(static_cast<std::size_t>(t) * L, '\0');
    struct Col {
        int j;
        std::vector<int> owners;
    };
    std::vector<Col> tall;
    for (int j = 0; j < n; ++j)
        for (const auto& col : ys_.columns[j]) {
            if (col.size() == 1) {
                ++base[owner[j][col[0] - 1] * L + off[j]];
                continue;
            }
            std::vector<int> ow;
            for (int a : col) ow.push_back(owner[j][a - 1]);
            auto sorted = ow;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return {};
            tall.push_back({j, std::move(ow)});
        }

    std::map<std::string, std::int64_t> states{{base, 1}};
    std::map<int, std::vector<SignedPerm>> perm_cache;
    for (const auto& col : tall) {
        const int h = static_cast<int>(col.owners.size());
        auto it = perm_cache.find(h);
        if (it == perm_cache.end()) it = perm_cache.emplace(h, signed_permutations(h)).first;
        std::map<std::string, std::int64_t> next;
        for (const auto& [s, c] : states)
            for (const auto& sp : it->second) {
                std::string x = s;
                for (int i = 0; i < h; ++i) ++x[col.owners[i] * L + off[col.j] + sp.p[i]];
                next[x] += sp.sign * c;
            }
        std::erase_if(next, [](const auto& kv) { return kv.second == 0; });
        states = std::move(next);
    }

    std::map<std::string, std::int64_t> merged;
    for (const auto& [s, c] : states) {
        std::string labels(layout.total(), '\0');
        for (int i = 0; i < t; ++i)
            for (int j = 0; j < n; ++j) {
                std::size_t o = layout.cell_offset(i, j);
                for (int l = 0; l < ys_.lam[j].length(); ++l)
                    for (int q = 0; q < s[i * L + off[j] + l]; ++q) labels[o++] = static_cast<char>(l + 1);
            }
        canonicalize(layout, labels);
        merged[labels] += c;
    }
    std::vector<std::pair<std::string, std::int64_t>> out;
    for (auto& [s, c] : merged)
        if (c != 0) out.emplace_back(s, c);
    return out;
}

SparseVector HwtProjector::intern(const std::vector<std::pair<std::string, std::int64_t>>& raw) {
    SparseVector v;
    v.reserve(raw.size());
    for (const auto& [s, c] : raw) {
        auto [it, fresh] = ids_.emplace(s, static_cast<std::uint32_t>(monomials_.size()));
        if (fresh) monomials_.push_back(s);
        v.emplace_back(it->second, c);
    }
    normalize(v);
    return v;
}

const std::vector<std::uint32_t>& HwtProjector::orbit_representatives() {
    if (reps_) return *reps_;
    const auto& basis = *basis_;
    const auto gens = ys_.column_generators();
    std::vector<char> seen(basis.size(), 0);
    std::vector<std::uint32_t> reps;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t start = 0; start < basis.size(); ++start) {
        if (seen[start]) continue;
        seen[start] = 1;
        stack.assign(1, start);
        bool killed = false;
        while (!stack.empty()) {
            auto x = stack.back();
            stack.pop_back();
            for (const auto& g : gens) {
                auto y = index_of(act(g, basis[x]), basis);
                // a transposition fixing the block means two boxes of one column share a row
                if (y == x) killed = true;
                if (!seen[y]) {
                    seen[y] = 1;
                    stack.push_back(y);
                }
            }
        }
        if (!killed) reps.push_back(start);
    }
    reps_ = std::move(reps);
    return *reps_;
}

void HwtProjector::precompute() {
    const auto& reps = orbit_representatives();
    std::vector<std::vector<std::pair<std::string, std::int64_t>>> raw(reps.size());
    parallel_for(reps.size(), [&](std::size_t i) {
        if (!cache_[reps[i]]) raw[i] = raw_image((*basis_)[reps[i]]);
    });
    for (std::size_t i = 0; i < reps.size(); ++i)
        if (!cache_[reps[i]]) cache_[reps[i]] = intern(raw[i]);
}

const SparseVector& HwtProjector::image(std::uint32_t block) {
    if (block >= cache_.size()) throw std::out_of_range("block index out of range");
    if (!cache_[block]) cache_[block] = intern(raw_image((*basis_)[block]));
    return *cache_[block];
}

SparseVector HwtProjector::apply(const SparseVector& v) {
    SparseVector out;
    for (const auto& [i, c] : v)
        for (const auto& [m, y] : image(i)) {
            std::int64_t p;
            if (__builtin_mul_overflow(c, y, &p)) throw OverflowError();
            out.emplace_back(m, p);
        }
    normalize(out);
    return out;
}

BigVector HwtProjector::apply(const BigVector& v) {
    SparseVector small;
    small.reserve(v.size());
    for (const auto& [i, c] : v) {
        if (!c.fits_slong_p()) break;
        small.emplace_back(i, c.get_si());
    }
    if (small.size() == v.size()) {
        try {
            BigVector out;
            for (const auto& [m, c] : apply(small)) out.emplace_back(m, Integer(static_cast<long>(c)));
            return out;
        } catch (const OverflowError&) {
        }
    }
    std::map<std::uint32_t, Integer> acc;
    for (const auto& [i, c] : v)
        for (const auto& [m, y] : image(i)) acc[m] += c * Integer(static_cast<long>(y));
    BigVector out;
    for (auto& [m, c] : acc)
        if (c != 0) out.emplace_back(m, std::move(c));
    return out;
}

Block HwtProjector::monomial(std::uint32_t id) const {
    if (id >= monomials_.size()) throw std::out_of_range("monomial id out of range");
    return Block{&basis_->layout(), monomials_[id]};
}

std::size_t multiplicity_sym(HwtProjector& proj, const std::vector<SparseVector>& spanning,
                             std::optional<std::size_t> stop_at) {
    Echelon e(false);
    if (stop_at && *stop_at == 0) return 0;
    for (const auto& w : spanning) {
        e.insert(proj.apply(w));
        if (stop_at && e.rank() >= *stop_at) break;
    }
    return e.rank();
}

std::size_t multiplicity_sym(HwtProjector& proj, const std::vector<BigVector>& spanning) {
    Echelon e(false);
    for (const auto& w : spanning) e.insert(proj.apply(w));
    return e.rank();
}

std::size_t multiplicity_sym(const NPartition& lam, std::shared_ptr<const BlockBasis> basis, const Subspace& W) {
    if (W.ambient_dim() != basis->size()) throw std::invalid_argument("subspace and basis disagree");
    HwtProjector proj(lam, std::move(basis));
    return multiplicity_sym(proj, W.integer_basis());
}

std::size_t multiplicity_in_full(const NPartition& lam, const Shape& shape, const Partition& mu) {
    auto basis = enumerate_basis(shape, mu);
    check_basis(lam, *basis);
    if (lam.max_length() > mu.length()) return 0;
    HwtProjector proj(lam, basis);
    proj.precompute();
    Echelon e(false);
    for (auto i : proj.orbit_representatives()) e.insert(proj.image(i));
    return e.rank();
}

DecompositionTable decompose_sym(const Shape& shape, const Partition& mu) {
    auto lams = n_partitions(shape, mu.length());
    std::vector<std::size_t> mult(lams.size());
    for (std::size_t i = 0; i < lams.size(); ++i) mult[i] = multiplicity_in_full(lams[i], shape, mu);
    DecompositionTable out;
    for (std::size_t i = 0; i < lams.size(); ++i)
        if (mult[i]) out[lams[i]] = static_cast<std::int64_t>(mult[i]);
    return out;
}

namespace {

std::mutex g_char_mutex;
std::map<std::pair<std::vector<int>, std::vector<int>>, Integer> g_char_memo;

// beta: strictly decreasing first-column hook lengths; ct consumed from the front.
Integer mn(const std::vector<int>& beta, const std::vector<int>& ct, std::size_t from) {
    if (from == ct.size()) return 1;
    std::vector<int> rest(ct.begin() + static_cast<long>(from), ct.end());
    {
        std::lock_guard lock(g_char_mutex);
        auto it = g_char_memo.find({beta, rest});
        if (it != g_char_memo.end()) return it->second;
    }
    const int m = ct[from];
    Integer total = 0;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        const int b = beta[i] - m;
        if (b < 0 || std::find(beta.begin(), beta.end(), b) != beta.end()) continue;
        int between = 0;
        for (int x : beta)
            if (x > b && x < beta[i]) ++between;
        auto next = beta;
        next[i] = b;
        std::sort(next.begin(), next.end(), std::greater<>());
        Integer v = mn(next, ct, from + 1);
        if (between % 2) total -= v;
        else total += v;
    }
    std::lock_guard lock(g_char_mutex);
    g_char_memo.emplace(std::make_pair(beta, std::move(rest)), total);
    return total;
}

}  // namespace

Integer character_value(const Partition& lam, const Partition& ct) {
    if (lam.size() != ct.size()) throw std::invalid_argument("character: sizes differ");
    std::vector<int> beta(lam.length());
    for (int i = 0; i < lam.length(); ++i) beta[i] = lam[i] + lam.length() - 1 - i;
    return mn(beta, ct.parts(), 0);
}

GroupElement cycle_type_representative(const CycleType& ct) {
    GroupElement g;
    for (const auto& p : ct) {
        std::vector<int> perm(p.size());
        int start = 0;
        for (int c : p.parts()) {
            for (int i = 0; i < c; ++i) perm[start + i] = start + (i + 1) % c + 1;
            start += c;
        }
        g.perms.push_back(std::move(perm));
    }
    return g;
}

Integer centralizer_order(const Partition& ct) {
    Integer z = 1;
    for (int i = 0; i < ct.length();) {
        int e = i;
        while (e < ct.length() && ct[e] == ct[i]) ++e;
        Integer pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(ct[i]), static_cast<unsigned long>(e - i));
        z *= pw * factorial(e - i);
        i = e;
    }
    return z;
}

const std::vector<std::pair<CycleType, std::int64_t>>& fixed_block_counts(const Shape& shape, const Partition& mu) {
    static std::mutex mutex;
    static std::map<std::pair<std::vector<int>, Partition>, std::vector<std::pair<CycleType, std::int64_t>>> cache;
    const auto key = std::make_pair(shape.delta, mu);
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto basis = enumerate_basis(shape, mu);
    std::vector<CycleType> classes;
    for (const auto& lam : n_partitions(shape, shape.r * *std::max_element(shape.delta.begin(), shape.delta.end())))
        classes.push_back(lam.components());
    std::vector<std::pair<CycleType, std::int64_t>> out(classes.size());
    parallel_for(classes.size(), [&](std::size_t c) {
        auto g = cycle_type_representative(classes[c]);
        std::int64_t fixed = 0;
        for (const auto& b : basis->blocks())
            if (act(g, b) == b) ++fixed;
        out[c] = {classes[c], fixed};
    });
    std::lock_guard lock(mutex);
    return cache.emplace(key, std::move(out)).first->second;
}

std::int64_t multiplicity_char(const NPartition& lam, const Shape& shape, const Partition& mu) {
    check_profile(lam, shape.delta, shape.r);
    if (mu.size() != shape.r) throw std::invalid_argument("mu must partition r");
    Rational total = 0;
    for (const auto& [ct, fixed] : fixed_block_counts(shape, mu)) {
        if (fixed == 0) continue;
        Integer num = static_cast<long>(fixed), den = 1;
        for (std::size_t j = 0; j < ct.size(); ++j) {
            num *= character_value(lam[j], ct[j]);
            den *= centralizer_order(ct[j]);
        }
        total += Rational(num, den);
    }
    total.canonicalize();
    if (total.get_den() != 1 || !total.get_num().fits_slong_p() || total < 0)
        throw std::logic_error("character inner product is not a nonnegative integer");
    return total.get_num().get_si();
}

DecompositionTable decompose_char(const Shape& shape, const Partition& mu) {
    DecompositionTable out;
    for (const auto& lam : n_partitions(shape, shape.r * *std::max_element(shape.delta.begin(), shape.delta.end()))) {
        auto m = multiplicity_char(lam, shape, mu);
        if (m) out[lam] = m;
    }
    return out;
}

IsotypicAnalysis::IsotypicAnalysis(Shape shape, IsotypicOptions opts)
    : shape_(std::move(shape)), opts_(opts), basis_(enumerate_basis(shape_)) {
    if (shape_.r > shape_.k)
        for (const auto& mu : exact_part_partitions(shape_.r, shape_.k)) {
            auto pi = build_pi(shape_, mu);
            targets_.push_back(pi.target);
            pi_columns_.push_back(std::move(pi.columns));
        }
    const int m = opts_.minor_size > 0 ? opts_.minor_size : shape_.k + 1;
    Integer total = 0;
    auto all = distinct_splits(shape_, false);
    std::stable_partition(all.begin(), all.end(), [](const FlatteningSplit& s) { return s.size_a() == 1 || s.size_b() == 1; });
    std::vector<FlatteningSplit> splits;
    for (const auto& s : all) {
        bool one = s.size_a() == 1 || s.size_b() == 1;
        if (opts_.one_flattenings && !one) continue;
        splits.push_back(s);
        total += minor_count(shape_, s, m);
    }
    if (total > Integer(static_cast<unsigned long>(opts_.generator_cap)))
        throw std::length_error("too many flattening generators: " + total.get_str());
    for (const auto& s : splits) {
        for_each_minor(shape_, s, m, [&](const MinorGenerator& g) { generators_.push_back(expand_minor(shape_, g, *basis_)); });
        if (s.size_a() == 1 || s.size_b() == 1) one_flattening_count_ = generators_.size();
    }
}

IsotypicRow IsotypicAnalysis::analyze(const NPartition& lam) const {
    check_profile(lam, shape_.delta, shape_.r);
    IsotypicRow row{lam};
    if (lam.max_length() > shape_.r) return row;
    HwtProjector proj(lam, basis_);
    proj.precompute();
    {
        Echelon e(false);
        for (auto i : proj.orbit_representatives()) e.insert(proj.image(i));
        row.in_U = e.rank();
    }
    if (row.in_U == 0) return row;
    if (targets_.empty()) {
        row.in_I = 0;
    } else {
        // c_lam * (image of U under the stacked maps), one monomial space per mu
        const std::uint32_t stride = static_cast<std::uint32_t>(targets_.size());
        std::vector<std::unique_ptr<HwtProjector>> projs;
        std::vector<std::size_t> mu_rows;
        for (const auto& t : targets_) {
            projs.push_back(std::make_unique<HwtProjector>(lam, t));
            mu_rows.push_back(static_cast<std::size_t>(t->layout().rows()));
        }
        Echelon e(false);
        for (auto b : proj.orbit_representatives()) {
            if (e.rank() >= row.in_U) break;
            SparseVector w;
            for (std::size_t m = 0; m < targets_.size(); ++m) {
                if (static_cast<std::size_t>(lam.max_length()) > mu_rows[m]) continue;
                for (const auto& [id, c] : projs[m]->apply(pi_columns_[m][b]))
                    w.emplace_back(id * stride + static_cast<std::uint32_t>(m), c);
            }
            normalize(w);
            e.insert(w);
        }
        row.in_I = row.in_U - e.rank();
    }
    if (row.in_I == 0) return row;
    Echelon e(false);
    std::size_t g = 0;
    for (; g < one_flattening_count_ && e.rank() < row.in_I; ++g) e.insert(proj.apply(generators_[g]));
    row.in_F1 = e.rank();
    for (; g < generators_.size() && e.rank() < row.in_I; ++g) e.insert(proj.apply(generators_[g]));
    row.in_F = e.rank();
    return row;
}

std::vector<IsotypicRow> IsotypicAnalysis::analyze_all() const {
    auto lams = n_partitions(shape_, shape_.r);
    std::vector<IsotypicRow> out(lams.size());
    parallel_for(lams.size(), [&](std::size_t i) { out[i] = analyze(lams[i]); });
    return out;
}

}  // namespace secantkit
