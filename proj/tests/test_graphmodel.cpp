#include <doctest.h>

#include <random>

#include "secantkit/closedform.hpp"
#include "secantkit/flattening.hpp"
#include "secantkit/graphmodel.hpp"
#include "secantkit/prolongation.hpp"
#include "secantkit/repmult.hpp"

using namespace secantkit;

namespace {

NPartition np(const char* s) { return NPartition::parse(s); }
ColoredGraph gr(const char* s) { return ColoredGraph::parse(s); }

SparseVector negate(SparseVector v) {
    for (auto& [i, c] : v) c = -c;
    return v;
}

// Concatenated images under every pi_mu with mu of exactly two parts.
struct PiStack {
    std::vector<PiMatrix> maps;
    explicit PiStack(const Shape& shape) {
        for (const auto& mu : exact_part_partitions(shape.r, 2)) maps.push_back(build_pi(shape, mu));
    }
    SparseVector apply(const SparseVector& v) const {
        SparseVector out;
        std::uint32_t offset = 0;
        for (const auto& m : maps) {
            for (auto [i, c] : m.apply(v)) out.emplace_back(i + offset, c);
            offset += static_cast<std::uint32_t>(m.target->size());
        }
        return out;
    }
};

bool relation_in_F(const GraphRelation& rel, const Shape& shape, const NPartition& lam) {
    return flattening_space(shape).contains(relation_vector(rel, shape, lam));
}

}  // namespace

TEST_CASE("text format") {
    const auto g = gr("r=4; edges=(1,2,c1),(2,3,c3)");
    CHECK(g.r == 4);
    CHECK(g.edges == std::vector<Edge>{{1, 2, 1}, {2, 3, 3}});
    CHECK(g.to_string() == "r=4; edges=(1,2,c1),(2,3,c3)");
    CHECK(gr("r=2; edges=").edges.empty());
    CHECK(ColoredGraph::parse(gr("r = 3 ; edges=( 1 , 3 ,c2)").to_string()) == gr("r=3; edges=(1,3,c2)"));
    CHECK_THROWS_AS(gr("r=3; edges=(1,2)"), std::invalid_argument);
    CHECK_THROWS_AS(gr("edges=(1,2,c1)"), std::invalid_argument);
    CHECK_THROWS_AS(validate(gr("r=3; edges=(1,4,c1)"), Shape({1, 1}, 3)), std::invalid_argument);
    CHECK_THROWS_AS(validate(gr("r=3; edges=(1,2,c1),(1,3,c1)"), Shape({1, 1}, 3)), std::invalid_argument);
    CHECK_NOTHROW(validate(gr("r=3; edges=(1,2,c1),(1,3,c1)"), Shape({2, 1}, 3)));
}

TEST_CASE("worked graph examples") {
    // (12/3) x (13/2) x (21/3): a triangle, hence an odd cycle
    NTableau t{{{1, 2}, {3}}, {{1, 3}, {2}}, {{2, 1}, {3}}};
    const auto g = tableau_to_graph(t);
    CHECK(g.r == 3);
    CHECK(g.edges == std::vector<Edge>{{1, 3, 1}, {1, 2, 2}, {2, 3, 3}});
    CHECK(has_odd_cycle(g));
    CHECK_FALSE(mcb_type(g).has_value());

    // (13/2) x (13/2): a double edge and an isolated vertex
    NTableau t2{{{1, 3}, {2}}, {{1, 3}, {2}}};
    const auto g2 = tableau_to_graph(t2);
    CHECK(g2.edges == std::vector<Edge>{{1, 2, 1}, {1, 2, 2}});
    CHECK_FALSE(has_odd_cycle(g2));
    CHECK(components(g2) == std::vector<std::vector<int>>{{1, 2}, {3}});
    CHECK_FALSE(mcb_type(g2).has_value());  // neither connected nor a tree

    const Shape s({1, 1}, 3);
    CHECK(graph_to_tableau(g2, s, np("2,1|2,1")) == t2);
}

TEST_CASE("tableau, block and graph dictionaries") {
    std::mt19937_64 rng(7);
    for (const auto& shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({3}, 3), Shape({2, 2}, 2)}) {
        const auto basis = enumerate_basis(shape, Partition(std::vector<int>(shape.r, 1)));
        for (int trial = 0; trial < 30; ++trial) {
            const auto lam = random_two_row_lambda(shape, rng);
            const auto g = random_graph(shape, lam, rng);
            CHECK_NOTHROW(check_compatible(g, shape, lam));
            const auto t = graph_to_tableau(g, shape, lam);
            CHECK(tableau_shape(t) == lam);
            CHECK(tableau_to_graph(t).edges == g.edges);
            const Block b = tableau_to_block(t, shape);
            CHECK(b.is_canonical());
            CHECK(basis->find(b.labels) >= 0);
            // the tableau read back from the block has the same rows up to order
            auto back = block_to_tableau(b, lam);
            CHECK(tableau_to_block(back, shape) == b);
        }
    }
}

TEST_CASE("graph vectors: column order, reversal and loops") {
    std::mt19937_64 rng(11);
    const Shape shape({2, 1}, 3);
    int loops = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const auto lam = random_two_row_lambda(shape, rng);
        auto g = random_graph(shape, lam, rng);
        const auto v = graph_vector(g, shape, lam);
        bool loop = false;
        for (const auto& e : g.edges) loop |= e.source == e.target;
        if (loop) {
            ++loops;
            CHECK(v.empty());
            continue;
        }
        auto shuffled = g;
        std::shuffle(shuffled.edges.begin(), shuffled.edges.end(), rng);
        CHECK(graph_vector(shuffled, shape, lam) == v);
        if (!g.edges.empty()) {
            auto reversed = g;
            std::swap(reversed.edges[0].source, reversed.edges[0].target);
            CHECK(graph_vector(reversed, shape, lam) == negate(v));
        }
    }
    CHECK(loops > 0);
}

TEST_CASE("odd cycles and MCB types") {
    CHECK(has_odd_cycle(gr("r=2; edges=(1,1,c1)")));
    CHECK_FALSE(has_odd_cycle(gr("r=2; edges=(1,2,c1),(2,1,c2)")));
    CHECK(has_odd_cycle(gr("r=5; edges=(1,2,c1),(2,3,c1),(3,4,c1),(4,5,c1),(5,1,c1)")));
    CHECK_FALSE(has_odd_cycle(gr("r=4; edges=(1,2,c1),(2,3,c1),(3,4,c1),(4,1,c1)")));

    CHECK(mcb_type(gr("r=3; edges=")) == McbType{1, 0});
    CHECK(mcb_type(gr("r=3; edges=(1,2,c1),(1,3,c2)")) == McbType{2, 1});
    CHECK(mcb_type(gr("r=4; edges=(1,2,c1),(3,4,c2),(1,4,c1),(3,2,c2)")) == McbType{2, 2});
    CHECK(mcb_type(gr("r=4; edges=(1,2,c1)")) == McbType{1, 1});
    CHECK_FALSE(mcb_type(gr("r=4; edges=(1,2,c1),(3,4,c1)")).has_value());
    CHECK(mcb_type(gr("r=4; edges=(1,2,c1),(1,3,c1),(1,4,c2)")) == McbType{3, 1});

    const auto star = gr("r=4; edges=(2,1,c1),(3,1,c1),(4,1,c2)");
    CHECK(mcb_sides(star).first == std::vector<int>{2, 3, 4});
    CHECK(is_canonically_oriented(star));
    CHECK_FALSE(is_canonically_oriented(gr("r=4; edges=(1,2,c1),(3,1,c1),(4,1,c2)")));
    // ties: the side with vertex 1 is the source side
    CHECK(is_canonically_oriented(gr("r=2; edges=(1,2,c1)")));
    CHECK_FALSE(is_canonically_oriented(gr("r=2; edges=(2,1,c1)")));
}

TEST_CASE("type count equals the closed form") {
    std::vector<std::vector<int>> deltas;
    for (int a = 1; a <= 3; ++a) {
        deltas.push_back({a});
        for (int b = a; b <= 3; ++b) {
            deltas.push_back({a, b});
            for (int c = b; c <= 3; ++c) deltas.push_back({a, b, c});
        }
    }
    std::size_t checked = 0;
    for (const auto& delta : deltas)
        for (int r = 1; r <= 6; ++r) {
            const Shape shape(delta, r);
            for (const auto& lam : two_row_candidates(shape)) {
                CHECK_MESSAGE(count_types(shape, lam) == m_lambda(shape, lam),
                              shape.to_string() << " " << lam.to_string());
                ++checked;
            }
        }
    CHECK(checked > 8000);
    CHECK(count_types(Shape({1, 1, 1}, 3), np("2,1|2,1|3")) == 1);
    CHECK(count_types(Shape({1, 1, 1}, 3), np("1,1,1|3|3")) == 0);
}

TEST_CASE("vanishing and equality modulo F") {
    std::mt19937_64 rng(2024);
    int odd = 0;
    for (const auto& shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({1, 1}, 4), Shape({2}, 4)}) {
        const Subspace F = flattening_space(shape);
        int pairs = 0;
        for (int trial = 0; trial < 60; ++trial) {
            const auto lam = random_two_row_lambda(shape, rng);
            const auto g = random_graph(shape, lam, rng);
            if (has_odd_cycle(g)) {
                ++odd;
                CHECK_MESSAGE(vanishing_certificate(g, shape, lam, F), g.to_string());
            }
            for (const auto& type : admissible_types(shape, lam)) {
                auto g1 = random_mcb_graph(shape, lam, type, rng);
                auto g2 = random_mcb_graph(shape, lam, type, rng);
                REQUIRE(g1.has_value());
                REQUIRE(g2.has_value());
                ++pairs;
                CHECK(F.contains(relation_vector({{*g1, 1}, {*g2, -1}}, shape, lam)));
            }
        }
        CHECK(pairs > 0);
        // a component made of two vertices and an odd number of edges
        if (shape.delta.size() == 3) {
            const auto g = gr("r=3; edges=(1,2,c1),(2,1,c2),(1,2,c3)");
            CHECK(mcb_type(g) == std::nullopt);
            CHECK(vanishing_certificate(g, shape, np("2,1|2,1|2,1"), F));
        }
    }
    CHECK(odd > 0);
}

TEST_CASE("type (a,a) vanishes when e is odd") {
    const Shape shape({1, 1, 1}, 4);
    const Subspace F = flattening_space(shape);
    std::mt19937_64 rng(5);
    const auto lam = np("3,1|3,1|3,1");  // e = 3
    for (int trial = 0; trial < 5; ++trial) {
        const auto g = random_mcb_graph(shape, lam, {2, 2}, rng);
        REQUIRE(g.has_value());
        CHECK(vanishing_certificate(*g, shape, lam, F));
    }
    // (3,1) is the only admissible type
    CHECK(admissible_types(shape, lam) == std::vector<McbType>{{3, 1}});
}

TEST_CASE("exchange, commutation and cubic relations") {
    std::mt19937_64 rng(99);
    for (const auto& shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({1, 1, 1}, 4), Shape({1, 2}, 3)}) {
        const Subspace F = flattening_space(shape);
        int exchanges = 0, commutes = 0, cubics = 0;
        for (int trial = 0; trial < 40; ++trial) {
            const auto lam = random_two_row_lambda(shape, rng);
            const auto g = random_graph(shape, lam, rng);
            const std::size_t m = g.edges.size();
            for (std::size_t e = 0; e < m; ++e)
                for (int z = 1; z <= shape.r; ++z)
                    if (auto rel = exchange_relation(g, shape, e, z); rel && exchanges < 400) {
                        ++exchanges;
                        CHECK_MESSAGE(F.contains(relation_vector(*rel, shape, lam)), g.to_string() << " z=" << z);
                    }
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b) {
                    if (auto rel = commute_relation(g, shape, a, b); rel && commutes < 200) {
                        ++commutes;
                        CHECK_MESSAGE(F.contains(relation_vector(*rel, shape, lam)), g.to_string());
                    }
                    for (std::size_t c = 0; c < m; ++c)
                        if (auto rel = cubic_relation(g, shape, a, b, c); rel && cubics < 200) {
                            ++cubics;
                            CHECK_MESSAGE(F.contains(relation_vector(*rel, shape, lam)), g.to_string());
                        }
                }
        }
        CHECK(exchanges > 0);
        CHECK(commutes > 0);
    }
    const Shape shape({1, 1, 1}, 3);
    const auto lam = np("2,1|2,1|2,1");
    const auto g = gr("r=3; edges=(1,2,c1),(1,2,c2),(1,3,c3)");
    const auto rel = cubic_relation(g, shape, 0, 1, 2);
    REQUIRE(rel.has_value());
    CHECK(rel->at(1).first == gr("r=3; edges=(1,2,c1),(1,3,c2),(1,3,c3)"));
    CHECK(relation_in_F(*rel, shape, lam));
}

TEST_CASE("refined moves preserve the class modulo F") {
    std::mt19937_64 rng(3);
    for (const auto& shape : {Shape({1, 1, 1}, 4), Shape({2, 1}, 3), Shape({2, 2}, 3)}) {
        const Subspace F = flattening_space(shape);
        int ones = 0, twos = 0;
        for (int trial = 0; trial < 80; ++trial) {
            const auto lam = random_two_row_lambda(shape, rng);
            const auto types = admissible_types(shape, lam);
            if (types.empty()) continue;
            const auto g = random_mcb_graph(shape, lam, types[trial % types.size()], rng);
            REQUIRE(g.has_value());
            const auto v = graph_vector(*g, shape, lam);
            for (std::size_t e = 0; e < g->edges.size(); ++e) {
                for (int x = 1; x <= shape.r; ++x)
                    if (auto h = refined_move_one(*g, shape, e, x)) {
                        ++ones;
                        CHECK(F.contains(add_scaled(v, graph_vector(*h, shape, lam), -1)));
                    }
                for (std::size_t f = e + 1; f < g->edges.size(); ++f)
                    if (auto h = refined_move_two(*g, e, f)) {
                        ++twos;
                        CHECK(F.contains(add_scaled(v, graph_vector(*h, shape, lam), -1)));
                    }
            }
        }
        CHECK(ones > 0);
        CHECK(twos > 0);
    }
}

TEST_CASE("graphs of distinct types are independent under the projections") {
    std::mt19937_64 rng(17);
    for (const auto& shape : {Shape({1, 1, 1}, 3), Shape({1, 1, 1}, 4), Shape({2, 1}, 3), Shape({1, 1}, 5), Shape({3}, 3)}) {
        const PiStack pi(shape);
        for (const auto& lam : two_row_candidates(shape)) {
            std::vector<SparseVector> images;
            for (const auto& type : admissible_types(shape, lam)) {
                const auto g = random_mcb_graph(shape, lam, type, rng);
                REQUIRE_MESSAGE(g.has_value(), shape.to_string() << " " << lam.to_string());
                images.push_back(pi.apply(graph_vector(*g, shape, lam)));
            }
            CHECK_MESSAGE(rank(images) == static_cast<std::size_t>(m_lambda(shape, lam)),
                          shape.to_string() << " " << lam.to_string());
        }
    }
}
