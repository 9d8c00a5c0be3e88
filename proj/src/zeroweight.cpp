#include "secantkit/zeroweight.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace secantkit {

BlockLayout::BlockLayout(std::vector<int> delta, Partition mu) : delta_(std::move(delta)), mu_(std::move(mu)) {
    degree_ = std::accumulate(delta_.begin(), delta_.end(), 0);
    std::size_t off = 0;
    for (int i = 0; i < rows(); ++i)
        for (int j = 0; j < columns(); ++j) {
            offsets_.push_back(off);
            off += cell_size(i, j);
        }
    total_ = off;
    for (int i = 0; i < rows();) {
        int e = i;
        while (e < rows() && mu_[e] == mu_[i]) ++e;
        groups_.emplace_back(i, e);
        i = e;
    }
    for (int j = 0; j < columns(); ++j)
        if (label_count(j) > 255) throw std::length_error("block labels are limited to 255 per column");
}

const BlockLayout& BlockLayout::get(const std::vector<int>& delta, const Partition& mu) {
    static std::mutex mutex;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, std::unique_ptr<BlockLayout>> table;
    std::lock_guard lock(mutex);
    auto& slot = table[{delta, mu.parts()}];
    if (!slot) slot = std::make_unique<BlockLayout>(delta, mu);
    return *slot;
}

void canonicalize(const BlockLayout& layout, std::string& labels) {
    for (int i = 0; i < layout.rows(); ++i)
        for (int j = 0; j < layout.columns(); ++j) {
            auto b = labels.begin() + layout.cell_offset(i, j);
            std::sort(b, b + layout.cell_size(i, j));
        }
    std::vector<std::string> rows;
    for (auto [b, e] : layout.row_groups()) {
        if (e - b < 2) continue;
        rows.clear();
        const std::size_t len = layout.row_length(b);
        for (int i = b; i < e; ++i) rows.push_back(labels.substr(layout.row_offset(i), len));
        std::sort(rows.begin(), rows.end());
        for (int i = b; i < e; ++i) labels.replace(layout.row_offset(i), len, rows[i - b]);
    }
}

std::vector<int> Block::cell(int row, int col) const {
    auto off = layout->cell_offset(row, col);
    std::vector<int> out;
    for (int k = 0; k < layout->cell_size(row, col); ++k)
        out.push_back(static_cast<unsigned char>(labels[off + k]));
    return out;
}

bool Block::is_canonical() const {
    std::string copy = labels;
    canonicalize(*layout, copy);
    return copy == labels;
}

std::string Block::to_string() const {
    std::string out;
    for (int i = 0; i < layout->rows(); ++i) {
        if (i) out += " ; ";
        for (int j = 0; j < layout->columns(); ++j) {
            if (j) out += '|';
            out += join_ints(cell(i, j));
        }
    }
    return out;
}

Block Block::from_cells(const std::vector<int>& delta, const std::vector<std::vector<std::vector<int>>>& rows,
                        bool canonical) {
    std::vector<std::pair<int, std::size_t>> sizes;  // (mu_i, original row)
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != delta.size()) throw std::invalid_argument("block row has wrong column count");
        int m = static_cast<int>(rows[i][0].size()) / delta[0];
        if (m < 1) throw std::invalid_argument("block rows must be nonempty");
        for (std::size_t j = 0; j < delta.size(); ++j)
            if (static_cast<int>(rows[i][j].size()) != m * delta[j])
                throw std::invalid_argument("block cell sizes are inconsistent with delta");
        sizes.emplace_back(m, i);
    }
    std::stable_sort(sizes.begin(), sizes.end(), [](auto a, auto b) { return a.first > b.first; });
    std::vector<int> mu;
    for (auto [m, i] : sizes) mu.push_back(m);
    const auto& layout = BlockLayout::get(delta, Partition(mu));

    Block out{&layout, std::string(layout.total(), '\0')};
    for (int j = 0; j < layout.columns(); ++j) {
        std::vector<int> seen(layout.label_count(j) + 1, 0);
        for (int i = 0; i < layout.rows(); ++i) {
            const auto& cell = rows[sizes[i].second][j];
            for (std::size_t k = 0; k < cell.size(); ++k) {
                int a = cell[k];
                if (a < 1 || a > layout.label_count(j) || seen[a]++)
                    throw std::invalid_argument("block column " + std::to_string(j + 1) +
                                                " is not a partition of 1.." +
                                                std::to_string(layout.label_count(j)));
                out.labels[layout.cell_offset(i, j) + k] = static_cast<char>(a);
            }
        }
    }
    if (canonical) canonicalize(layout, out.labels);
    return out;
}

Block Block::parse(const std::vector<int>& delta, const std::string& text, bool canonical) {
    std::vector<std::vector<std::vector<int>>> rows;
    std::stringstream rs(text);
    std::string row;
    while (std::getline(rs, row, ';')) {
        if (row.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<std::vector<int>> cells;
        std::stringstream cs(row);
        std::string cell;
        while (std::getline(cs, cell, '|')) cells.push_back(parse_int_list(cell));
        rows.push_back(std::move(cells));
    }
    return from_cells(delta, rows, canonical);
}

BlockBasis::BlockBasis(const BlockLayout& layout, std::vector<Block> blocks)
    : layout_(&layout), blocks_(std::move(blocks)) {
    index_.reserve(blocks_.size());
    for (std::size_t i = 0; i < blocks_.size(); ++i) index_.emplace(blocks_[i].labels, static_cast<std::uint32_t>(i));
}

std::int64_t BlockBasis::find(const std::string& labels) const {
    auto it = index_.find(labels);
    return it == index_.end() ? -1 : static_cast<std::int64_t>(it->second);
}

namespace {

void for_each_combination(const std::vector<int>& pool, int k,
                          const std::function<void(const std::vector<int>&, const std::vector<int>&)>& fn) {
    const int n = static_cast<int>(pool.size());
    if (k < 0 || k > n) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> chosen(k), rest;
    while (true) {
        rest.clear();
        std::size_t t = 0;
        for (int i = 0; i < n; ++i) {
            if (t < idx.size() && idx[t] == i) {
                chosen[t++] = pool[i];
            } else {
                rest.push_back(pool[i]);
            }
        }
        fn(chosen, rest);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int m = i + 1; m < k; ++m) idx[m] = idx[m - 1] + 1;
    }
}

struct Distributor {
    const std::vector<SlotGroup>& groups;
    const std::function<void(const std::vector<std::vector<int>>&)>& fn;
    std::vector<std::vector<int>> slots;
    std::vector<std::size_t> first_slot;

    void group(std::size_t g, const std::vector<int>& pool) {
        if (g == groups.size()) {
            if (pool.empty()) fn(slots);
            return;
        }
        const int need = groups[g].count * groups[g].size;
        for_each_combination(pool, need, [&](const std::vector<int>& mine, const std::vector<int>& rest) {
            fill(g, 0, mine, rest);
        });
    }

    void fill(std::size_t g, int s, const std::vector<int>& mine, const std::vector<int>& rest) {
        const auto& G = groups[g];
        if (s == G.count) {
            group(g + 1, rest);
            return;
        }
        auto& slot = slots[first_slot[g] + s];
        if (G.size == 0) {
            slot.clear();
            fill(g, s + 1, mine, rest);
            return;
        }
        if (G.unordered) {
            std::vector<int> tail(mine.begin() + 1, mine.end());
            for_each_combination(tail, G.size - 1, [&](const std::vector<int>& c, const std::vector<int>& left) {
                slot.assign(1, mine.front());
                slot.insert(slot.end(), c.begin(), c.end());
                fill(g, s + 1, left, rest);
            });
        } else {
            for_each_combination(mine, G.size, [&](const std::vector<int>& c, const std::vector<int>& left) {
                slot = c;
                fill(g, s + 1, left, rest);
            });
        }
    }
};

}  // namespace

void for_each_distribution(const std::vector<int>& labels, const std::vector<SlotGroup>& groups,
                           const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
    Distributor d{groups, fn, {}, {}};
    std::size_t total = 0;
    for (const auto& g : groups) {
        d.first_slot.push_back(total);
        total += g.count;
    }
    d.slots.resize(total);
    d.group(0, labels);
}

namespace {

void enumerate_columns(const BlockLayout& layout, int col, std::string& labels, std::vector<Block>& out) {
    if (col == layout.columns()) {
        out.push_back(Block{&layout, labels});
        return;
    }
    std::vector<SlotGroup> groups;
    for (auto [b, e] : layout.row_groups()) groups.push_back({e - b, layout.cell_size(b, col), col == 0});
    std::vector<int> pool(layout.label_count(col));
    std::iota(pool.begin(), pool.end(), 1);
    for_each_distribution(pool, groups, [&](const std::vector<std::vector<int>>& slots) {
        for (int i = 0; i < layout.rows(); ++i) {
            auto off = layout.cell_offset(i, col);
            for (std::size_t k = 0; k < slots[i].size(); ++k) labels[off + k] = static_cast<char>(slots[i][k]);
        }
        enumerate_columns(layout, col + 1, labels, out);
    });
}

}  // namespace

std::shared_ptr<const BlockBasis> enumerate_basis(const Shape& shape, const Partition& mu) {
    if (mu.size() != shape.r) throw std::invalid_argument("mu must partition r");
    static std::mutex mutex;
    static std::map<std::pair<std::vector<int>, std::vector<int>>, std::shared_ptr<const BlockBasis>> cache;
    std::pair key{shape.delta, mu.parts()};
    {
        std::lock_guard lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const auto& layout = BlockLayout::get(shape.delta, mu);
    std::vector<Block> blocks;
    std::string labels(layout.total(), '\0');
    enumerate_columns(layout, 0, labels, blocks);
    std::sort(blocks.begin(), blocks.end());
    auto basis = std::make_shared<const BlockBasis>(layout, std::move(blocks));
    std::lock_guard lock(mutex);
    return cache.emplace(key, basis).first->second;
}

std::shared_ptr<const BlockBasis> enumerate_basis(const Shape& shape) {
    return enumerate_basis(shape, Partition(std::vector<int>(shape.r, 1)));
}

Integer zero_weight_dimension(const Shape& shape) {
    Integer num = 1, den = factorial(shape.r);
    for (int d : shape.delta) {
        num *= factorial(shape.r * d);
        Integer f = factorial(d);
        for (int i = 0; i < shape.r; ++i) den *= f;
    }
    return num / den;
}

std::uint32_t index_of(const Block& b, const BlockBasis& basis) {
    if (b.layout != &basis.layout()) throw std::invalid_argument("index_of: block layout does not match basis");
    if (!b.is_canonical()) throw std::invalid_argument("index_of: block is not canonical: " + b.to_string());
    auto i = basis.find(b.labels);
    if (i < 0) throw std::logic_error("index_of: block not in basis: " + b.to_string());
    return static_cast<std::uint32_t>(i);
}

GroupElement GroupElement::identity(const Shape& shape) {
    GroupElement g;
    for (int j = 0; j < shape.n(); ++j) {
        g.perms.emplace_back(shape.label_count(j));
        std::iota(g.perms.back().begin(), g.perms.back().end(), 1);
    }
    return g;
}

GroupElement GroupElement::random(const Shape& shape, std::mt19937_64& rng) {
    auto g = identity(shape);
    for (auto& p : g.perms) std::shuffle(p.begin(), p.end(), rng);
    return g;
}

GroupElement GroupElement::transposition(const Shape& shape, int col, int a, int b) {
    auto g = identity(shape);
    std::swap(g.perms[col][a - 1], g.perms[col][b - 1]);
    return g;
}

GroupElement GroupElement::parse(const Shape& shape, const std::vector<std::string>& cycles) {
    if (static_cast<int>(cycles.size()) != shape.n()) throw std::invalid_argument("one cycle string per factor");
    auto g = identity(shape);
    for (int j = 0; j < shape.n(); ++j) {
        const std::string& s = cycles[j];
        std::size_t pos = 0;
        std::vector<int> seen(shape.label_count(j) + 1, 0);
        while ((pos = s.find('(', pos)) != std::string::npos) {
            auto close = s.find(')', pos);
            if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle: " + s);
            auto cyc = parse_int_list(s.substr(pos + 1, close - pos - 1));
            for (int a : cyc)
                if (a < 1 || a > shape.label_count(j) || seen[a]++)
                    throw std::invalid_argument("bad cycle entry in " + s);
            // cycles are disjoint, so they can be written independently
            for (std::size_t t = 0; t < cyc.size(); ++t) g.perms[j][cyc[t] - 1] = cyc[(t + 1) % cyc.size()];
            pos = close + 1;
        }
    }
    return g;
}

GroupElement GroupElement::compose(const GroupElement& h) const {
    GroupElement out = h;
    for (std::size_t j = 0; j < perms.size(); ++j)
        for (auto& a : out.perms[j]) a = perms[j][a - 1];
    return out;
}

GroupElement GroupElement::inverse() const {
    GroupElement out = *this;
    for (std::size_t j = 0; j < perms.size(); ++j)
        for (std::size_t a = 0; a < perms[j].size(); ++a) out.perms[j][perms[j][a] - 1] = static_cast<int>(a + 1);
    return out;
}

Block act(const GroupElement& g, const Block& b) {
    const auto& layout = *b.layout;
    if (static_cast<int>(g.perms.size()) != layout.columns())
        throw std::invalid_argument("group element has wrong number of factors");
    Block out = b;
    for (int i = 0; i < layout.rows(); ++i)
        for (int j = 0; j < layout.columns(); ++j) {
            auto off = layout.cell_offset(i, j);
            for (int k = 0; k < layout.cell_size(i, j); ++k) {
                auto& c = out.labels[off + k];
                c = static_cast<char>(g.perms[j][static_cast<unsigned char>(c) - 1]);
            }
        }
    canonicalize(layout, out.labels);
    return out;
}

}  // namespace secantkit
