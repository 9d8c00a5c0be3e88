#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "secantkit/exactlinalg.hpp"
#include "secantkit/zeroweight.hpp"

namespace secantkit {

struct Edge {
    int source = 0;  // 1..r
    int target = 0;
    int color = 0;  // 1..n
    bool operator==(const Edge&) const = default;
};

struct ColoredGraph {
    int r = 0;
    std::vector<Edge> edges;

    int degree(int vertex, int color) const;
    // Edges per color, index 0 for color 1.
    std::vector<int> edge_counts(int n) const;
    // "r=4; edges=(1,2,c1),(2,3,c3)"
    std::string to_string() const;
    static ColoredGraph parse(const std::string& text);
    bool operator==(const ColoredGraph&) const = default;
};

// Vertex and color ranges, and at most d_i edges of color i at every vertex.
void validate(const ColoredGraph& g, const Shape& shape);
// validate() plus: color-i edge count equals lam^i_2, components have at most two rows.
void check_compatible(const ColoredGraph& g, const Shape& shape, const NPartition& lam);

// tableau[j][row] lists the entries of row `row` of T^j.
using NTableau = std::vector<std::vector<std::vector<int>>>;

NPartition tableau_shape(const NTableau& t);
// Entry of box a of T^j is the block row holding a in column j (1-based).
NTableau block_to_tableau(const Block& b, const NPartition& lam);
// Inverse on U_(1^r): row v of column j holds the boxes of T^j filled with v.
Block tableau_to_block(const NTableau& t, const Shape& shape);

// One edge (x, y) of color j per column (x over y) of T^j.
ColoredGraph tableau_to_graph(const NTableau& t);
// Edges become the length-2 columns in the given order; leftover vertex
// occurrences fill the rest of the first rows in increasing order.
NTableau graph_to_tableau(const ColoredGraph& g, const Shape& shape, const NPartition& lam);
Block graph_to_block(const ColoredGraph& g, const Shape& shape, const NPartition& lam);
// c_lam applied to graph_to_block, in U_r coordinates.
SparseVector graph_vector(const ColoredGraph& g, const Shape& shape, const NPartition& lam);
SparseVector tableau_vector(const NTableau& t, const Shape& shape);

// Non-bipartite underlying multigraph; loops are odd, parallel edges are even.
bool has_odd_cycle(const ColoredGraph& g);

struct McbType {
    int a = 0;
    int b = 0;
    bool operator==(const McbType&) const = default;
};

// Connected components as sorted vertex lists, ordered by smallest vertex.
std::vector<std::vector<int>> components(const ColoredGraph& g);
// Bipartite and either connected or a tree plus isolated vertices. The type
// is the bipartition of the largest component; an edgeless graph is (1,0).
std::optional<McbType> mcb_type(const ColoredGraph& g);
// For an MCB graph: the sides (A, B) of the largest component, |A| >= |B|;
// on ties A holds the smallest vertex.
std::pair<std::vector<int>, std::vector<int>> mcb_sides(const ColoredGraph& g);
bool is_canonically_oriented(const ColoredGraph& g);

// Types (a', b') with a' + b' = min(e+1, r), b' >= f, a' >= b', dropping
// a' = b' when e is odd.
std::vector<McbType> admissible_types(const Shape& shape, const NPartition& lam);
std::int64_t count_types(const Shape& shape, const NPartition& lam);

// graph_vector(g) lies in F.
bool vanishing_certificate(const ColoredGraph& g, const Shape& shape, const NPartition& lam, const Subspace& F);

// Random two-row lambda for the shape.
NPartition random_two_row_lambda(const Shape& shape, std::mt19937_64& rng);
// Each color: shuffle the r*d_i vertex slots and pair up the first 2*lam^i_2.
ColoredGraph random_graph(const Shape& shape, const NPartition& lam, std::mt19937_64& rng);
// Canonically oriented MCB graph of the given type, by rejection sampling.
std::optional<ColoredGraph> random_mcb_graph(const Shape& shape, const NPartition& lam, McbType type,
                                             std::mt19937_64& rng, int max_tries = 5000);

// A signed combination of graphs; the relations below say it lies in F.
using GraphRelation = std::vector<std::pair<ColoredGraph, int>>;
SparseVector relation_vector(const GraphRelation& rel, const Shape& shape, const NPartition& lam);

// Column (x,y) of color c with z free in T^c: G - G[(x,z)] - G[(z,y)].
std::optional<GraphRelation> exchange_relation(const ColoredGraph& g, const Shape& shape, std::size_t edge, int z);
// Edges (x,y) of color c1 and (x,z) of color c2, z free in c1, y free in c2:
// G - G with the two targets swapped.
std::optional<GraphRelation> commute_relation(const ColoredGraph& g, const Shape& shape, std::size_t e1, std::size_t e2);
// Edges (x,y) c1, (x,y) c2, (x,z) c3 with z free in c1 and c2, y free in c3:
// G - G with the second edge moved to (x,z).
std::optional<GraphRelation> cubic_relation(const ColoredGraph& g, const Shape& shape, std::size_t e1, std::size_t e2,
                                            std::size_t e3);

// Refined operations on an MCB graph; nullopt when the preconditions fail.
// One: edge (u,w) -> (v,w) with u, v on the same side, v not saturated, and
// u, v connected without the edge.
std::optional<ColoredGraph> refined_move_one(const ColoredGraph& g, const Shape& shape, std::size_t edge, int v);
// Two: edges (u1,w1), (u2,w2) of one color -> (u1,w2), (u2,w1), when u1, u2
// or w1, w2 stay connected without both edges.
std::optional<ColoredGraph> refined_move_two(const ColoredGraph& g, std::size_t e1, std::size_t e2);

}  // namespace secantkit
