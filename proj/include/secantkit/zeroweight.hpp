#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "secantkit/combinatorics.hpp"

namespace secantkit {

// Memory layout of a t x n grid of cells: row i, column j holds mu_i * d_j
// labels, stored row-major in a flat string. Layouts are interned.
class BlockLayout {
public:
    static const BlockLayout& get(const std::vector<int>& delta, const Partition& mu);

    const std::vector<int>& delta() const { return delta_; }
    const Partition& mu() const { return mu_; }
    int r() const { return mu_.size(); }
    int rows() const { return mu_.length(); }
    int columns() const { return static_cast<int>(delta_.size()); }
    int label_count(int col) const { return r() * delta_[col]; }

    int cell_size(int row, int col) const { return mu_[row] * delta_[col]; }
    std::size_t cell_offset(int row, int col) const { return offsets_[row * columns() + col]; }
    std::size_t row_offset(int row) const { return cell_offset(row, 0); }
    std::size_t row_length(int row) const { return static_cast<std::size_t>(mu_[row]) * degree_; }
    std::size_t total() const { return total_; }
    // maximal runs [begin, end) of rows with equal mu_i
    const std::vector<std::pair<int, int>>& row_groups() const { return groups_; }

    BlockLayout(std::vector<int> delta, Partition mu);

private:
    std::vector<int> delta_;
    Partition mu_;
    int degree_ = 0;
    std::vector<std::size_t> offsets_;
    std::size_t total_ = 0;
    std::vector<std::pair<int, int>> groups_;
};

// Sorts every cell, then sorts rows of equal size lexicographically.
void canonicalize(const BlockLayout& layout, std::string& labels);

struct Block {
    const BlockLayout* layout = nullptr;
    std::string labels;  // one byte per entry, values 1..255

    std::vector<int> cell(int row, int col) const;
    bool is_canonical() const;
    // "1,6|1 ; 2,3|4 ; 4,5|2 ; 7,8|3"
    std::string to_string() const;

    // rows[i][j] is cell (i, j); row sizes are inferred from column 0.
    static Block from_cells(const std::vector<int>& delta,
                            const std::vector<std::vector<std::vector<int>>>& rows,
                            bool canonical = true);
    static Block parse(const std::vector<int>& delta, const std::string& text, bool canonical = true);

    bool operator==(const Block& o) const { return layout == o.layout && labels == o.labels; }
    bool operator<(const Block& o) const { return labels < o.labels; }
};

struct BlockHash {
    std::size_t operator()(const Block& b) const { return std::hash<std::string>()(b.labels); }
};

class BlockBasis {
public:
    BlockBasis(const BlockLayout& layout, std::vector<Block> blocks);

    const BlockLayout& layout() const { return *layout_; }
    std::size_t size() const { return blocks_.size(); }
    const Block& operator[](std::size_t i) const { return blocks_[i]; }
    const std::vector<Block>& blocks() const { return blocks_; }
    // -1 when absent; labels must be canonical
    std::int64_t find(const std::string& labels) const;

private:
    const BlockLayout* layout_;
    std::vector<Block> blocks_;
    std::unordered_map<std::string, std::uint32_t> index_;
};

// Canonical blocks of U_mu in lexicographic order; cached per (delta, mu).
std::shared_ptr<const BlockBasis> enumerate_basis(const Shape& shape, const Partition& mu);
std::shared_ptr<const BlockBasis> enumerate_basis(const Shape& shape);
Integer zero_weight_dimension(const Shape& shape);

std::uint32_t index_of(const Block& b, const BlockBasis& basis);

// Distributes a sorted label list over groups of equally sized slots.
// Unordered groups yield each set partition once (slots ordered by minimum).
struct SlotGroup {
    int count = 0;
    int size = 0;
    bool unordered = false;
};
void for_each_distribution(const std::vector<int>& labels, const std::vector<SlotGroup>& groups,
                           const std::function<void(const std::vector<std::vector<int>>&)>& fn);

struct GroupElement {
    std::vector<std::vector<int>> perms;  // perms[j][a-1] = image of a

    static GroupElement identity(const Shape& shape);
    static GroupElement random(const Shape& shape, std::mt19937_64& rng);
    // one cycle string per column, e.g. {"(1,2)(5,3,7)", "(1,4,3)"}
    static GroupElement parse(const Shape& shape, const std::vector<std::string>& cycles);
    static GroupElement transposition(const Shape& shape, int col, int a, int b);

    GroupElement compose(const GroupElement& h) const;  // (g∘h)(a) = g(h(a))
    GroupElement inverse() const;
    bool operator==(const GroupElement&) const = default;
};

Block act(const GroupElement& g, const Block& b);

}  // namespace secantkit
