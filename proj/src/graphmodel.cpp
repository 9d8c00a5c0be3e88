#include "secantkit/graphmodel.hpp"

#include <algorithm>
#include <numeric>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "secantkit/closedform.hpp"
#include "secantkit/repmult.hpp"

namespace secantkit {

int ColoredGraph::degree(int vertex, int color) const {
    int d = 0;
    for (const auto& e : edges)
        if (e.color == color) d += (e.source == vertex) + (e.target == vertex);
    return d;
}

std::vector<int> ColoredGraph::edge_counts(int n) const {
    std::vector<int> out(n, 0);
    for (const auto& e : edges)
        if (e.color >= 1 && e.color <= n) ++out[e.color - 1];
    return out;
}

std::string ColoredGraph::to_string() const {
    std::ostringstream os;
    os << "r=" << r << "; edges=";
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (i) os << ',';
        os << '(' << edges[i].source << ',' << edges[i].target << ",c" << edges[i].color << ')';
    }
    return os.str();
}

ColoredGraph ColoredGraph::parse(const std::string& text) {
    static const std::regex head(R"(^\s*r\s*=\s*(\d+)\s*;\s*edges\s*=\s*(.*?)\s*$)");
    static const std::regex edge(R"(^\(\s*(\d+)\s*,\s*(\d+)\s*,\s*c(\d+)\s*\)\s*,?\s*)");
    std::smatch m;
    if (!std::regex_match(text, m, head)) throw std::invalid_argument("bad graph: " + text);
    ColoredGraph g;
    g.r = std::stoi(m[1]);
    std::string rest = m[2];
    while (!rest.empty()) {
        std::smatch em;
        if (!std::regex_search(rest, em, edge)) throw std::invalid_argument("bad edge list: " + rest);
        g.edges.push_back({std::stoi(em[1]), std::stoi(em[2]), std::stoi(em[3])});
        rest = em.suffix();
    }
    return g;
}

void validate(const ColoredGraph& g, const Shape& shape) {
    if (g.r != shape.r) throw std::invalid_argument("graph has " + std::to_string(g.r) + " vertices, expected r");
    for (const auto& e : g.edges) {
        if (e.source < 1 || e.source > g.r || e.target < 1 || e.target > g.r)
            throw std::invalid_argument("vertex out of range in " + g.to_string());
        if (e.color < 1 || e.color > shape.n()) throw std::invalid_argument("color out of range in " + g.to_string());
    }
    for (int c = 1; c <= shape.n(); ++c)
        for (int v = 1; v <= g.r; ++v)
            if (g.degree(v, c) > shape.delta[c - 1])
                throw std::invalid_argument("vertex " + std::to_string(v) + " exceeds its degree in color " +
                                            std::to_string(c));
}

void check_compatible(const ColoredGraph& g, const Shape& shape, const NPartition& lam) {
    validate(g, shape);
    check_profile(lam, shape.delta, shape.r);
    if (lam.max_length() > 2) throw std::invalid_argument("graphs need components with at most two rows");
    const auto counts = g.edge_counts(shape.n());
    for (int j = 0; j < shape.n(); ++j)
        if (counts[j] != lam[j][1])
            throw std::invalid_argument("color " + std::to_string(j + 1) + " needs " + std::to_string(lam[j][1]) +
                                        " edges");
}

NPartition tableau_shape(const NTableau& t) {
    std::vector<Partition> comps;
    for (const auto& rows : t) {
        std::vector<int> parts;
        for (const auto& row : rows) parts.push_back(static_cast<int>(row.size()));
        comps.emplace_back(parts);
    }
    return NPartition(std::move(comps));
}

NTableau block_to_tableau(const Block& b, const NPartition& lam) {
    const auto& layout = *b.layout;
    check_profile(lam, layout.delta(), layout.r());
    NTableau t(layout.columns());
    for (int j = 0; j < layout.columns(); ++j) {
        const auto coords = box_coordinates(lam[j]);
        for (int i = 0; i < lam[j].length(); ++i) t[j].emplace_back(lam[j][i], 0);
        for (int i = 0; i < layout.rows(); ++i)
            for (int a : b.cell(i, j)) t[j][coords.row[a - 1]][coords.col[a - 1]] = i + 1;
    }
    return t;
}

Block tableau_to_block(const NTableau& t, const Shape& shape) {
    if (static_cast<int>(t.size()) != shape.n()) throw std::invalid_argument("one tableau per factor");
    std::vector<std::vector<std::vector<int>>> rows(shape.r, std::vector<std::vector<int>>(shape.n()));
    for (int j = 0; j < shape.n(); ++j) {
        int box = 0;
        for (const auto& row : t[j])
            for (int v : row) {
                ++box;
                if (v < 1 || v > shape.r) throw std::invalid_argument("tableau entry out of range");
                rows[v - 1][j].push_back(box);
            }
        if (box != shape.label_count(j)) throw std::invalid_argument("tableau has the wrong number of boxes");
        for (int v = 0; v < shape.r; ++v)
            if (static_cast<int>(rows[v][j].size()) != shape.delta[j])
                throw std::invalid_argument("every vertex must fill d_j boxes of T^j");
    }
    return Block::from_cells(shape.delta, rows);
}

ColoredGraph tableau_to_graph(const NTableau& t) {
    ColoredGraph g;
    for (std::size_t j = 0; j < t.size(); ++j) {
        if (t[j].size() > 2) throw std::invalid_argument("tableau with more than two rows");
        for (const auto& row : t[j])
            for (int v : row) g.r = std::max(g.r, v);
        if (t[j].size() == 2)
            for (std::size_t c = 0; c < t[j][1].size(); ++c)
                g.edges.push_back({t[j][0][c], t[j][1][c], static_cast<int>(j + 1)});
    }
    return g;
}

NTableau graph_to_tableau(const ColoredGraph& g, const Shape& shape, const NPartition& lam) {
    check_compatible(g, shape, lam);
    NTableau t(shape.n());
    for (int j = 0; j < shape.n(); ++j) {
        std::vector<int> top, bottom;
        for (const auto& e : g.edges)
            if (e.color == j + 1) {
                top.push_back(e.source);
                bottom.push_back(e.target);
            }
        for (int v = 1; v <= g.r; ++v)
            for (int c = g.degree(v, j + 1); c < shape.delta[j]; ++c) top.push_back(v);
        t[j].push_back(std::move(top));
        if (!bottom.empty()) t[j].push_back(std::move(bottom));
    }
    return t;
}

Block graph_to_block(const ColoredGraph& g, const Shape& shape, const NPartition& lam) {
    return tableau_to_block(graph_to_tableau(g, shape, lam), shape);
}

namespace {

std::shared_ptr<const BlockBasis> generic_basis(const Shape& shape) {
    return enumerate_basis(shape, Partition(std::vector<int>(shape.r, 1)));
}

}  // namespace

SparseVector tableau_vector(const NTableau& t, const Shape& shape) {
    const auto basis = generic_basis(shape);
    const Block b = tableau_to_block(t, shape);
    return apply_symmetrizer(tableau_shape(t), *basis, {{index_of(b, *basis), 1}});
}

SparseVector graph_vector(const ColoredGraph& g, const Shape& shape, const NPartition& lam) {
    return tableau_vector(graph_to_tableau(g, shape, lam), shape);
}

namespace {

std::vector<std::vector<int>> adjacency(const ColoredGraph& g) {
    std::vector<std::vector<int>> adj(g.r + 1);
    for (const auto& e : g.edges) {
        adj[e.source].push_back(e.target);
        if (e.source != e.target) adj[e.target].push_back(e.source);
    }
    return adj;
}

// side[v] in {0, 1} per component (the smallest vertex gets 0), or nullopt
// when some component is not bipartite.
std::optional<std::vector<int>> two_coloring(const ColoredGraph& g) {
    for (const auto& e : g.edges)
        if (e.source == e.target) return std::nullopt;
    const auto adj = adjacency(g);
    std::vector<int> side(g.r + 1, -1);
    for (int s = 1; s <= g.r; ++s) {
        if (side[s] != -1) continue;
        side[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int w : adj[u]) {
                if (side[w] == -1) {
                    side[w] = 1 - side[u];
                    stack.push_back(w);
                } else if (side[w] == side[u]) {
                    return std::nullopt;
                }
            }
        }
    }
    return side;
}

bool connected(const ColoredGraph& g, int a, int b) {
    for (const auto& comp : components(g))
        if (std::binary_search(comp.begin(), comp.end(), a)) return std::binary_search(comp.begin(), comp.end(), b);
    return false;
}

// The component of an MCB graph that carries the type.
std::vector<int> main_component(const ColoredGraph& g) {
    auto comps = components(g);
    if (comps.size() == 1 || g.edges.empty()) return comps.front();
    for (auto& c : comps)
        if (c.size() > 1) return c;
    return comps.front();
}

}  // namespace

bool has_odd_cycle(const ColoredGraph& g) { return !two_coloring(g).has_value(); }

std::vector<std::vector<int>> components(const ColoredGraph& g) {
    std::vector<int> parent(g.r + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : g.edges) {
        const int a = find(e.source), b = find(e.target);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(g.r + 1, -1);
    for (int v = 1; v <= g.r; ++v) {
        const int root = find(v);
        if (slot[root] == -1) {
            slot[root] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[root]].push_back(v);
    }
    return out;
}

std::optional<McbType> mcb_type(const ColoredGraph& g) {
    if (g.r < 1) throw std::invalid_argument("graph without vertices");
    if (g.edges.empty()) return McbType{1, 0};
    if (has_odd_cycle(g)) return std::nullopt;
    const auto comps = components(g);
    if (comps.size() > 1) {
        int nontrivial = 0;
        for (const auto& c : comps) nontrivial += c.size() > 1;
        if (nontrivial != 1) return std::nullopt;
        if (g.edges.size() + 1 != main_component(g).size()) return std::nullopt;
    }
    const auto [a, b] = mcb_sides(g);
    return McbType{static_cast<int>(a.size()), static_cast<int>(b.size())};
}

std::pair<std::vector<int>, std::vector<int>> mcb_sides(const ColoredGraph& g) {
    const auto side = two_coloring(g);
    if (!side) throw std::invalid_argument("graph has an odd cycle");
    std::vector<int> a, b;
    for (int v : main_component(g)) ((*side)[v] == 0 ? a : b).push_back(v);
    // the smallest vertex has side 0, so a holds it
    if (b.size() > a.size()) std::swap(a, b);
    return {a, b};
}

bool is_canonically_oriented(const ColoredGraph& g) {
    if (!mcb_type(g)) return false;
    const auto [a, b] = mcb_sides(g);
    for (const auto& e : g.edges)
        if (!std::binary_search(a.begin(), a.end(), e.source)) return false;
    return true;
}

std::vector<McbType> admissible_types(const Shape& shape, const NPartition& lam) {
    check_profile(lam, shape.delta, shape.r);
    if (lam.max_length() > 2) return {};
    const auto [f, e] = lambda_stats(shape.delta, lam);
    const int s = std::min(e + 1, shape.r);
    std::vector<McbType> out;
    for (int b = f; 2 * b <= s; ++b) {
        const int a = s - b;
        if (a == b && e % 2 == 1) continue;
        out.push_back({a, b});
    }
    return out;
}

std::int64_t count_types(const Shape& shape, const NPartition& lam) {
    return static_cast<std::int64_t>(admissible_types(shape, lam).size());
}

bool vanishing_certificate(const ColoredGraph& g, const Shape& shape, const NPartition& lam, const Subspace& F) {
    return F.contains(graph_vector(g, shape, lam));
}

NPartition random_two_row_lambda(const Shape& shape, std::mt19937_64& rng) {
    std::vector<Partition> comps;
    for (int j = 0; j < shape.n(); ++j) {
        const int total = shape.label_count(j);
        const int l2 = std::uniform_int_distribution<int>(0, total / 2)(rng);
        comps.emplace_back(std::vector<int>{total - l2, l2});
    }
    return NPartition(std::move(comps));
}

ColoredGraph random_graph(const Shape& shape, const NPartition& lam, std::mt19937_64& rng) {
    check_profile(lam, shape.delta, shape.r);
    if (lam.max_length() > 2) throw std::invalid_argument("graphs need components with at most two rows");
    ColoredGraph g;
    g.r = shape.r;
    for (int j = 0; j < shape.n(); ++j) {
        std::vector<int> slots;
        for (int v = 1; v <= shape.r; ++v) slots.insert(slots.end(), shape.delta[j], v);
        std::shuffle(slots.begin(), slots.end(), rng);
        for (int c = 0; c < lam[j][1]; ++c) g.edges.push_back({slots[2 * c], slots[2 * c + 1], j + 1});
    }
    return g;
}

std::optional<ColoredGraph> random_mcb_graph(const Shape& shape, const NPartition& lam, McbType type,
                                             std::mt19937_64& rng, int max_tries) {
    check_profile(lam, shape.delta, shape.r);
    if (type.a < type.b || type.a + type.b > shape.r || type.a < 1) return std::nullopt;
    std::vector<int> vertices(shape.r);
    std::iota(vertices.begin(), vertices.end(), 1);
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        std::shuffle(vertices.begin(), vertices.end(), rng);
        const std::vector<int> a(vertices.begin(), vertices.begin() + type.a);
        const std::vector<int> b(vertices.begin() + type.a, vertices.begin() + type.a + type.b);
        ColoredGraph g;
        g.r = shape.r;
        bool ok = true;
        for (int j = 0; j < shape.n() && ok; ++j)
            for (int c = 0; c < lam[j][1] && ok; ++c) {
                std::vector<int> us, ws;
                for (int u : a)
                    if (g.degree(u, j + 1) < shape.delta[j]) us.push_back(u);
                for (int w : b)
                    if (g.degree(w, j + 1) < shape.delta[j]) ws.push_back(w);
                if (us.empty() || ws.empty()) {
                    ok = false;
                    break;
                }
                const int u = us[std::uniform_int_distribution<std::size_t>(0, us.size() - 1)(rng)];
                const int w = ws[std::uniform_int_distribution<std::size_t>(0, ws.size() - 1)(rng)];
                g.edges.push_back({u, w, j + 1});
            }
        if (!ok) continue;
        const auto t = mcb_type(g);
        if (!t || !(*t == type)) continue;
        if (!is_canonically_oriented(g))
            for (auto& e : g.edges) std::swap(e.source, e.target);
        if (is_canonically_oriented(g)) return g;
    }
    return std::nullopt;
}

SparseVector relation_vector(const GraphRelation& rel, const Shape& shape, const NPartition& lam) {
    SparseVector out;
    for (const auto& [g, coef] : rel) out = add_scaled(out, graph_vector(g, shape, lam), coef);
    return out;
}

namespace {

bool is_free(const ColoredGraph& g, const Shape& shape, int v, int color) {
    return g.degree(v, color) < shape.delta[color - 1];
}

}  // namespace

std::optional<GraphRelation> exchange_relation(const ColoredGraph& g, const Shape& shape, std::size_t edge, int z) {
    if (edge >= g.edges.size() || z < 1 || z > g.r) return std::nullopt;
    const Edge e = g.edges[edge];
    if (!is_free(g, shape, z, e.color)) return std::nullopt;
    ColoredGraph g1 = g, g2 = g;
    g1.edges[edge] = {e.source, z, e.color};
    g2.edges[edge] = {z, e.target, e.color};
    return GraphRelation{{g, 1}, {g1, -1}, {g2, -1}};
}

std::optional<GraphRelation> commute_relation(const ColoredGraph& g, const Shape& shape, std::size_t e1,
                                              std::size_t e2) {
    if (e1 >= g.edges.size() || e2 >= g.edges.size()) return std::nullopt;
    const Edge a = g.edges[e1], b = g.edges[e2];
    if (a.source != b.source || a.color == b.color) return std::nullopt;
    if (!is_free(g, shape, b.target, a.color) || !is_free(g, shape, a.target, b.color)) return std::nullopt;
    ColoredGraph h = g;
    h.edges[e1].target = b.target;
    h.edges[e2].target = a.target;
    return GraphRelation{{g, 1}, {h, -1}};
}

std::optional<GraphRelation> cubic_relation(const ColoredGraph& g, const Shape& shape, std::size_t e1,
                                            std::size_t e2, std::size_t e3) {
    if (e1 >= g.edges.size() || e2 >= g.edges.size() || e3 >= g.edges.size()) return std::nullopt;
    const Edge a = g.edges[e1], b = g.edges[e2], c = g.edges[e3];
    if (a.color == b.color || a.color == c.color || b.color == c.color) return std::nullopt;
    if (a.source != b.source || a.source != c.source) return std::nullopt;
    if (a.target != b.target) return std::nullopt;
    const int y = a.target, z = c.target;
    if (!is_free(g, shape, z, a.color) || !is_free(g, shape, z, b.color) || !is_free(g, shape, y, c.color))
        return std::nullopt;
    ColoredGraph h = g;
    h.edges[e2].target = z;
    return GraphRelation{{g, 1}, {h, -1}};
}

std::optional<ColoredGraph> refined_move_one(const ColoredGraph& g, const Shape& shape, std::size_t edge, int v) {
    if (edge >= g.edges.size() || v < 1 || v > g.r || !mcb_type(g)) return std::nullopt;
    const Edge e = g.edges[edge];
    if (e.source == v || e.target == v || !is_free(g, shape, v, e.color)) return std::nullopt;
    ColoredGraph rest = g;
    rest.edges.erase(rest.edges.begin() + static_cast<std::ptrdiff_t>(edge));
    const auto side = two_coloring(g);
    ColoredGraph h = g;
    // move whichever endpoint sits on v's side and stays connected to v
    if (connected(rest, e.source, v) && (*side)[e.source] == (*side)[v])
        h.edges[edge].source = v;
    else if (connected(rest, e.target, v) && (*side)[e.target] == (*side)[v])
        h.edges[edge].target = v;
    else
        return std::nullopt;
    return h;
}

std::optional<ColoredGraph> refined_move_two(const ColoredGraph& g, std::size_t e1, std::size_t e2) {
    if (e1 >= g.edges.size() || e2 >= g.edges.size() || e1 == e2 || !mcb_type(g)) return std::nullopt;
    const Edge a = g.edges[e1], b = g.edges[e2];
    if (a.color != b.color) return std::nullopt;
    const auto side = two_coloring(g);
    if ((*side)[a.source] != (*side)[b.source]) return std::nullopt;
    ColoredGraph rest = g;
    rest.edges.erase(rest.edges.begin() + static_cast<std::ptrdiff_t>(std::max(e1, e2)));
    rest.edges.erase(rest.edges.begin() + static_cast<std::ptrdiff_t>(std::min(e1, e2)));
    if (!connected(rest, a.source, b.source) && !connected(rest, a.target, b.target)) return std::nullopt;
    ColoredGraph h = g;
    h.edges[e1].target = b.target;
    h.edges[e2].target = a.target;
    return h;
}

}  // namespace secantkit
