#include "secantkit/specialization.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "secantkit/exactlinalg.hpp"
#include "secantkit/flattening.hpp"
#include "secantkit/prolongation.hpp"
#include "secantkit/repmult.hpp"

namespace secantkit {

namespace {

int label(const Block& b, std::size_t pos) { return static_cast<unsigned char>(b.labels[pos]); }

// rows[i][j] is a multiset; mu is inferred from the column-0 sizes.
Block monomial_from_rows(const std::vector<int>& delta, const std::vector<std::vector<std::vector<int>>>& rows) {
    std::vector<std::pair<int, std::size_t>> sizes;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != delta.size()) throw std::invalid_argument("monomial row has wrong column count");
        const int m = static_cast<int>(rows[i][0].size()) / delta[0];
        if (m < 1) throw std::invalid_argument("monomial rows must be nonempty");
        for (std::size_t j = 0; j < delta.size(); ++j)
            if (static_cast<int>(rows[i][j].size()) != m * delta[j])
                throw std::invalid_argument("monomial cell sizes are inconsistent with delta");
        sizes.emplace_back(m, i);
    }
    std::stable_sort(sizes.begin(), sizes.end(), [](auto a, auto b) { return a.first > b.first; });
    std::vector<int> mu;
    for (auto [m, i] : sizes) mu.push_back(m);
    const auto& layout = BlockLayout::get(delta, Partition(mu));
    Block out{&layout, std::string(layout.total(), '\0')};
    for (int i = 0; i < layout.rows(); ++i)
        for (int j = 0; j < layout.columns(); ++j) {
            const auto& cell = rows[sizes[i].second][j];
            for (std::size_t t = 0; t < cell.size(); ++t) {
                if (cell[t] < 1 || cell[t] > 255) throw std::invalid_argument("variable index out of range");
                out.labels[layout.cell_offset(i, j) + t] = static_cast<char>(cell[t]);
            }
        }
    canonicalize(layout, out.labels);
    return out;
}

std::vector<int> resolve_dims(const NPartition& lam, std::vector<int> dims) {
    if (dims.empty())
        for (const auto& p : lam.components()) dims.push_back(std::max(1, p.length()));
    if (dims.size() != lam.n()) throw std::invalid_argument("one dimension per factor");
    for (std::size_t j = 0; j < dims.size(); ++j)
        if (dims[j] < lam[j].length()) throw std::invalid_argument("dims must cover the parts of lambda");
    return dims;
}

}  // namespace

std::vector<std::vector<int>> WeightMonomial::weight() const {
    const auto& layout = *cells.layout;
    std::vector<std::vector<int>> out;
    for (int j = 0; j < layout.columns(); ++j) {
        std::vector<int> counts(dims[j], 0);
        for (int i = 0; i < layout.rows(); ++i)
            for (int v : cells.cell(i, j)) ++counts[v - 1];
        out.push_back(std::move(counts));
    }
    return out;
}

bool WeightMonomial::has_weight(const NPartition& lam) const {
    const auto w = weight();
    if (lam.n() != w.size()) return false;
    for (std::size_t j = 0; j < w.size(); ++j) {
        if (lam[j].length() > static_cast<int>(w[j].size())) return false;
        for (std::size_t v = 0; v < w[j].size(); ++v)
            if (w[j][v] != lam[j][static_cast<int>(v)]) return false;
    }
    return true;
}

WeightMonomial WeightMonomial::parse(const std::vector<int>& delta, const std::vector<int>& dims,
                                     const std::string& text) {
    if (dims.size() != delta.size()) throw std::invalid_argument("one dimension per factor");
    std::vector<std::vector<std::vector<int>>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        if (row.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::vector<int>> cells;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, '|')) cells.push_back(parse_int_list(cell));
        if (cells.size() != dims.size()) throw std::invalid_argument("monomial row has wrong column count");
        for (std::size_t j = 0; j < cells.size(); ++j)
            for (int v : cells[j])
                if (v < 1 || v > dims[j]) throw std::invalid_argument("variable index out of range");
        rows.push_back(std::move(cells));
    }
    return {dims, monomial_from_rows(delta, rows)};
}

WeightMonomial specialize_Q(const NPartition& lam, const Block& b, std::vector<int> dims) {
    YoungSymmetrizer ys(lam);
    return {resolve_dims(lam, std::move(dims)), specialize_labels(ys, b)};
}

Block Polarization::sample(std::mt19937_64& rng) const {
    YoungSymmetrizer ys(lam);
    GroupElement g;
    for (std::size_t j = 0; j < lam.n(); ++j) {
        std::vector<int> perm(lam[j].size());
        std::iota(perm.begin(), perm.end(), 1);
        for (const auto& row : ys.rows[j]) {
            std::vector<int> images = row;
            std::shuffle(images.begin(), images.end(), rng);
            for (std::size_t t = 0; t < row.size(); ++t) perm[row[t] - 1] = images[t];
        }
        g.perms.push_back(std::move(perm));
    }
    return act(g, representative);
}

std::vector<Block> Polarization::expand(std::size_t cap) const {
    if (orbit_size > Integer(static_cast<unsigned long>(cap))) throw std::length_error("orbit exceeds the cap");
    YoungSymmetrizer ys(lam);
    const auto gens = ys.row_generators();
    std::vector<Block> out{representative};
    std::unordered_map<std::string, bool> seen{{representative.labels, true}};
    for (std::size_t i = 0; i < out.size(); ++i)
        for (const auto& g : gens) {
            Block next = act(g, out[i]);
            if (seen.emplace(next.labels, true).second) out.push_back(std::move(next));
        }
    std::sort(out.begin(), out.end());
    return out;
}

Polarization polarize_P(const NPartition& lam, const WeightMonomial& w) {
    if (!w.has_weight(lam)) throw std::invalid_argument("monomial " + w.to_string() + " is not of weight " + lam.to_string());
    const auto& layout = *w.cells.layout;
    YoungSymmetrizer ys(lam);
    Block rep = w.cells;
    Integer num = 1, den = 1;
    for (int j = 0; j < layout.columns(); ++j) {
        // hand out the boxes of row v of lam^j to the occurrences of v, in order
        std::vector<std::size_t> next(lam[j].length(), 0);
        for (int i = 0; i < layout.rows(); ++i) {
            const std::size_t off = layout.cell_offset(i, j);
            std::vector<int> counts(lam[j].length(), 0);
            for (int t = 0; t < layout.cell_size(i, j); ++t) {
                const int v = label(w.cells, off + t) - 1;
                rep.labels[off + t] = static_cast<char>(ys.rows[j][v][next[v]++]);
                ++counts[v];
            }
            for (int c : counts) den *= factorial(c);
        }
        for (int v = 0; v < lam[j].length(); ++v) num *= factorial(lam[j][v]);
    }
    // equal rows of the monomial give the same block in different orders
    for (auto [begin, end] : layout.row_groups()) {
        int run = 1;
        for (int i = begin + 1; i <= end; ++i) {
            const bool same = i < end && w.cells.labels.compare(layout.row_offset(i), layout.row_length(i), w.cells.labels,
                                                                layout.row_offset(i - 1), layout.row_length(i - 1)) == 0;
            if (same) {
                ++run;
            } else {
                den *= factorial(run);
                run = 1;
            }
        }
    }
    canonicalize(layout, rep.labels);
    return {lam, rep, Integer(num / den)};
}

TermSum pi_mu_nongeneric(const WeightMonomial& w, const Partition& mu) {
    const auto& layout = *w.cells.layout;
    if (layout.rows() != layout.r()) throw std::invalid_argument("pi_mu acts on monomials of r variables");
    if (mu.size() != layout.r()) throw std::invalid_argument("mu must be a partition of r");
    TermSum out;
    for (const auto& groups : row_set_partitions(mu)) out[collapse_rows(w.cells, groups).to_string()] += 1;
    return out;
}

TermSum specialize_sum(const NPartition& lam, const std::vector<std::pair<Block, Integer>>& terms,
                       const std::vector<int>& dims) {
    TermSum out;
    for (const auto& [b, c] : terms) {
        const std::string key = specialize_Q(lam, b, dims).to_string();
        if ((out[key] += c) == 0) out.erase(key);
    }
    return out;
}

namespace {

using Multiset = std::vector<int>;
using Variable = std::vector<Multiset>;  // one multiset per factor

void for_each_multiset(int size, int m, const std::function<void(const Multiset&)>& fn) {
    Multiset cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == size) {
            fn(cur);
            return;
        }
        for (int v = lo; v <= m; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(1);
}

std::vector<Variable> all_variables(const std::vector<int>& sizes, const std::vector<int>& dims) {
    std::vector<Variable> out{{}};
    for (std::size_t j = 0; j < sizes.size(); ++j) {
        std::vector<Variable> next;
        for_each_multiset(sizes[j], dims[j], [&](const Multiset& ms) {
            for (const auto& v : out) {
                auto w = v;
                w.push_back(ms);
                next.push_back(std::move(w));
            }
        });
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Weight space of U_r(V): monomials in variables of degree delta.
class WeightSpace {
public:
    WeightSpace(const Shape& shape, const std::vector<int>& dims, const NPartition& lam, std::size_t cap)
        : shape_(shape), dims_(dims) {
        for (std::size_t j = 0; j < dims.size(); ++j) {
            offsets_.push_back(static_cast<int>(target_.size()));
            for (int v = 0; v < dims[j]; ++v) target_.push_back(lam[j][v]);
        }
        for (auto& var : all_variables(shape.delta, dims)) {
            auto c = content(var);
            if (fits(c, target_)) {
                contents_.push_back(std::move(c));
                variables_.push_back(std::move(var));
            }
        }
        std::vector<std::size_t> chosen;
        for_each_completion(shape.r, target_, 0, chosen, [&](const std::vector<std::size_t>& idx) {
            if (keys_.size() >= cap) throw std::length_error("weight space exceeds the cap");
            std::vector<Variable> rows;
            for (auto i : idx) rows.push_back(variables_[i]);
            const Block b = build(rows);
            index_.emplace(b.labels, static_cast<std::uint32_t>(keys_.size()));
            keys_.push_back(b);
        });
    }

    std::size_t size() const { return keys_.size(); }
    const Block& monomial(std::size_t i) const { return keys_[i]; }
    const std::vector<Variable>& variables() const { return variables_; }
    const std::vector<int>& target() const { return target_; }

    std::vector<int> content(const Variable& var) const {
        std::vector<int> c(total_slots(), 0);
        for (std::size_t j = 0; j < var.size(); ++j)
            for (int v : var[j]) ++c[offsets_[j] + v - 1];
        return c;
    }
    static bool fits(const std::vector<int>& c, const std::vector<int>& bound) {
        for (std::size_t i = 0; i < c.size(); ++i)
            if (c[i] > bound[i]) return false;
        return true;
    }

    // Multisets of `count` variables (indices nondecreasing from `lo`) with content exactly `rest`.
    void for_each_completion(int count, std::vector<int> rest, std::size_t lo, std::vector<std::size_t>& chosen,
                             const std::function<void(const std::vector<std::size_t>&)>& fn) const {
        if (count == 0) {
            if (std::all_of(rest.begin(), rest.end(), [](int x) { return x == 0; })) fn(chosen);
            return;
        }
        for (std::size_t i = lo; i < variables_.size(); ++i) {
            if (!fits(contents_[i], rest)) continue;
            for (std::size_t s = 0; s < rest.size(); ++s) rest[s] -= contents_[i][s];
            chosen.push_back(i);
            for_each_completion(count - 1, rest, i, chosen, fn);
            chosen.pop_back();
            for (std::size_t s = 0; s < rest.size(); ++s) rest[s] += contents_[i][s];
        }
    }

    Block build(const std::vector<Variable>& rows) const { return monomial_from_rows(shape_.delta, rows); }
    std::uint32_t find(const Block& b) const {
        auto it = index_.find(b.labels);
        if (it == index_.end()) throw std::logic_error("monomial outside the weight space: " + b.to_string());
        return it->second;
    }

private:
    std::size_t total_slots() const { return target_.size(); }

    Shape shape_;
    std::vector<int> dims_;
    std::vector<int> offsets_;
    std::vector<int> target_;
    std::vector<Variable> variables_;
    std::vector<std::vector<int>> contents_;
    std::vector<Block> keys_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Images of each weight monomial under all raising operators, concatenated.
std::vector<SparseVector> raising_images(const WeightSpace& ws, const std::vector<int>& dims) {
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<SparseVector> out(ws.size());
    for (std::size_t s = 0; s < ws.size(); ++s) {
        const Block& b = ws.monomial(s);
        const auto& layout = *b.layout;
        for (int j = 0; j < layout.columns(); ++j)
            for (int v = 1; v < dims[j]; ++v)
                for (int i = 0; i < layout.rows(); ++i) {
                    const std::size_t off = layout.cell_offset(i, j);
                    for (int t = 0; t < layout.cell_size(i, j); ++t) {
                        if (label(b, off + t) != v + 1) continue;
                        Block e = b;
                        e.labels[off + t] = static_cast<char>(v);
                        canonicalize(layout, e.labels);
                        const std::string key = std::to_string(j) + ':' + std::to_string(v) + ':' + e.labels;
                        const auto id = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
                        out[s].emplace_back(id, 1);
                    }
                }
        normalize(out[s]);
    }
    return out;
}

// Dimension of the highest weight vectors inside W.
std::size_t highest_weight_dim(const Subspace& W, const std::vector<SparseVector>& raise) {
    Echelon e(false);
    for (const auto& w : W.integer_basis()) {
        std::map<std::uint32_t, Integer> acc;
        for (const auto& [s, c] : w)
            for (const auto& [t, x] : raise[s]) acc[t] += c * x;
        BigVector img;
        for (auto& [t, x] : acc)
            if (x != 0) img.emplace_back(t, std::move(x));
        e.insert(img);
    }
    return W.dim() - e.rank();
}

Subspace nongeneric_ideal(const Shape& shape, const WeightSpace& ws) {
    const auto mus = exact_part_partitions(shape.r, shape.k);
    if (mus.empty()) return Subspace(ws.size());
    std::unordered_map<std::string, std::uint32_t> ids;
    std::vector<SparseVector> columns(ws.size());
    for (std::size_t m = 0; m < mus.size(); ++m) {
        const auto parts = row_set_partitions(mus[m]);
        for (std::size_t s = 0; s < ws.size(); ++s) {
            for (const auto& groups : parts) {
                const std::string key = std::to_string(m) + ':' + collapse_rows(ws.monomial(s), groups).labels;
                const auto id = ids.emplace(key, static_cast<std::uint32_t>(ids.size())).first->second;
                columns[s].emplace_back(id, 1);
            }
        }
    }
    for (auto& c : columns) normalize(c);
    return kernel(ExactMatrix::from_columns(ids.size(), columns));
}

int permutation_sign(const std::vector<int>& p) {
    int inv = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j) inv += p[i] > p[j];
    return inv % 2 ? -1 : 1;
}

void for_each_subset(std::size_t n, int k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t lo) {
        if (static_cast<int>(cur.size()) == k) {
            fn(cur);
            return;
        }
        for (std::size_t i = lo; i < n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
}

Variable merge(const Variable& a, const Variable& b) {
    Variable out(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) {
        std::merge(a[j].begin(), a[j].end(), b[j].begin(), b[j].end(), std::back_inserter(out[j]));
    }
    return out;
}

// Span of the weight components of (k+1)-minors of all flattenings times monomials.
Subspace nongeneric_flattenings(const Shape& shape, const std::vector<int>& dims, const WeightSpace& ws) {
    Subspace F(ws.size());
    const int m = shape.k + 1;
    if (m > shape.r) return F;
    std::vector<int> perm(m);
    for (const auto& split : distinct_splits(shape, false)) {
        const auto as = all_variables(split.A, dims);
        const auto bs = all_variables(split.B, dims);
        std::vector<std::vector<int>> a_content, b_content;
        for (const auto& a : as) a_content.push_back(ws.content(a));
        for (const auto& b : bs) b_content.push_back(ws.content(b));
        for_each_subset(as.size(), m, [&](const std::vector<std::size_t>& ai) {
            std::vector<int> rest = ws.target();
            for (auto i : ai)
                for (std::size_t s = 0; s < rest.size(); ++s) rest[s] -= a_content[i][s];
            if (std::any_of(rest.begin(), rest.end(), [](int x) { return x < 0; })) return;
            for_each_subset(bs.size(), m, [&](const std::vector<std::size_t>& bi) {
                std::vector<int> rest2 = rest;
                for (auto i : bi)
                    for (std::size_t s = 0; s < rest2.size(); ++s) rest2[s] -= b_content[i][s];
                if (std::any_of(rest2.begin(), rest2.end(), [](int x) { return x < 0; })) return;
                std::vector<std::size_t> chosen;
                ws.for_each_completion(shape.r - m, rest2, 0, chosen, [&](const std::vector<std::size_t>& gi) {
                    SparseVector v;
                    std::iota(perm.begin(), perm.end(), 0);
                    do {
                        std::vector<Variable> rows;
                        for (int t = 0; t < m; ++t) rows.push_back(merge(as[ai[t]], bs[bi[perm[t]]]));
                        for (auto g : gi) rows.push_back(ws.variables()[g]);
                        v.emplace_back(ws.find(ws.build(rows)), permutation_sign(perm));
                    } while (std::next_permutation(perm.begin(), perm.end()));
                    normalize(v);
                    if (!v.empty()) F.insert(v);
                });
            });
        });
    }
    return F;
}

}  // namespace

NongenericRow nongeneric_multiplicities(const Shape& shape, const std::vector<int>& dims, const NPartition& lam,
                                        std::size_t cap) {
    check_profile(lam, shape.delta, shape.r);
    const auto d = resolve_dims(lam, dims);
    const WeightSpace ws(shape, d, lam, cap);
    const auto raise = raising_images(ws, d);
    NongenericRow row;
    row.weight_space_dim = ws.size();
    row.in_U = ws.size() - rank(raise);
    row.in_I = highest_weight_dim(nongeneric_ideal(shape, ws), raise);
    row.in_F = highest_weight_dim(nongeneric_flattenings(shape, d, ws), raise);
    return row;
}

bool nongeneric_flattening_rank_check(const Shape& shape, const std::vector<int>& dims, const NPartition& lam,
                                      std::size_t cap) {
    for (std::size_t j = 0; j < lam.n(); ++j)
        if (j < dims.size() && lam[j].length() > dims[j]) return true;
    const auto row = nongeneric_multiplicities(shape, dims, lam, cap);
    const IsotypicAnalysis generic(shape);
    return row.in_F == generic.analyze(lam).in_F;
}

}  // namespace secantkit
