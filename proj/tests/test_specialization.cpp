#include <doctest.h>

#include <random>
#include <set>

#include "secantkit/closedform.hpp"
#include "secantkit/prolongation.hpp"
#include "secantkit/repmult.hpp"
#include "secantkit/specialization.hpp"

using namespace secantkit;

namespace {

NPartition np(const char* s) { return NPartition::parse(s); }

Block random_block(const Shape& shape, std::mt19937_64& rng) {
    const auto basis = enumerate_basis(shape);
    std::uniform_int_distribution<std::size_t> pick(0, basis->size() - 1);
    return (*basis)[pick(rng)];
}

// Random lambda whose components have at most `parts` rows.
NPartition random_lambda(const Shape& shape, int parts, std::mt19937_64& rng) {
    const auto all = n_partitions(shape, parts);
    return all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
}

TermSum generic_then_specialize(const NPartition& lam, const PiMatrix& pi, std::uint32_t column,
                                const std::vector<int>& dims) {
    std::vector<std::pair<Block, Integer>> terms;
    for (auto [i, c] : pi.columns[column]) terms.emplace_back((*pi.target)[i], Integer(static_cast<long>(c)));
    return specialize_sum(lam, terms, dims);
}

}  // namespace

TEST_CASE("worked specialization example") {
    const Block m = Block::parse({2, 1}, "1,6|1 ; 2,3|4 ; 4,5|2 ; 7,8|3");
    const auto lam = np("5,3|2,1,1");
    const auto w = specialize_Q(lam, m);
    CHECK(w.dims == std::vector<int>{2, 3});
    CHECK(w == WeightMonomial::parse({2, 1}, {2, 3}, "1,2|1 ; 1,1|3 ; 1,1|1 ; 2,2|2"));
    CHECK(w.to_string() == "1,1|1 ; 1,1|3 ; 1,2|1 ; 2,2|2");
    CHECK(w.has_weight(lam));
    CHECK(w.weight() == std::vector<std::vector<int>>{{5, 3}, {2, 1, 1}});

    // the transposed square for mu = (2,2)
    const auto down = pi_mu_nongeneric(w, Partition({2, 2}));
    TermSum expected;
    for (const char* t : {"1,1,1,2|1,3 ; 1,1,2,2|1,2", "1,1,1,2|1,1 ; 1,1,2,2|2,3", "1,2,2,2|1,2 ; 1,1,1,1|1,3"})
        expected[WeightMonomial::parse({2, 1}, {2, 3}, t).to_string()] = 1;
    CHECK(down == expected);
    const auto pi = build_pi(Shape({2, 1}, 4), Partition({2, 2}));
    CHECK(generic_then_specialize(lam, pi, index_of(m, *pi.source), {2, 3}) == expected);
}

TEST_CASE("worked polarization example") {
    const std::vector<int> delta{1, 1, 1};
    const auto lam = np("2,1|2,1|2,1");
    const Block m = Block::parse(delta, "1|1|2 ; 2|3|1 ; 3|2|3");
    const auto w = specialize_Q(lam, m);
    CHECK(w == WeightMonomial::parse(delta, {2, 2, 2}, "1|1|1 ; 1|2|1 ; 2|1|2"));
    const auto p = polarize_P(lam, w);
    CHECK(p.orbit_size == 8);
    CHECK(p.coefficient() == Rational(1, 8));
    std::vector<Block> expected;
    for (const char* t : {"1|1|2 ; 2|3|1 ; 3|2|3", "2|1|2 ; 1|3|1 ; 3|2|3", "1|1|1 ; 2|3|2 ; 3|2|3",
                          "2|1|1 ; 1|3|2 ; 3|2|3", "1|2|2 ; 2|3|1 ; 3|1|3", "2|2|2 ; 1|3|1 ; 3|1|3",
                          "1|2|1 ; 2|3|2 ; 3|1|3", "2|2|1 ; 1|3|2 ; 3|1|3"})
        expected.push_back(Block::parse(delta, t));
    std::sort(expected.begin(), expected.end());
    CHECK(p.expand() == expected);
}

TEST_CASE("trivial cases and errors") {
    const Shape shape({2, 1}, 3);
    std::mt19937_64 rng(1);
    const auto lam = np("6|3");
    const Block b = random_block(shape, rng);
    const auto w = specialize_Q(lam, b);
    CHECK(w.to_string() == "1,1|1 ; 1,1|1 ; 1,1|1");
    CHECK(polarize_P(lam, w).orbit_size == enumerate_basis(shape)->size());

    const auto p = polarize_P(np("2|1"), WeightMonomial::parse({2, 1}, {1, 1}, "1,1|1"));
    CHECK(p.orbit_size == 1);
    CHECK(p.representative.to_string() == "1,2|1");

    CHECK_THROWS_AS(polarize_P(np("2,1|2,1|2,1"), WeightMonomial::parse({1, 1, 1}, {2, 2, 2}, "1|1|1 ; 1|1|1 ; 1|2|2")),
                    std::invalid_argument);
    CHECK_THROWS_AS(specialize_Q(np("2,1|2,1|2,1"), b), std::invalid_argument);
    CHECK_THROWS_AS(specialize_Q(np("2,1|1,1,1|2,1"), Block::parse({1, 1, 1}, "1|1|1 ; 2|2|2 ; 3|3|3"), {2, 2, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(WeightMonomial::parse({1, 1}, {2, 2}, "1|3 ; 2|2"), std::invalid_argument);
}

TEST_CASE("Q is constant on row orbits and P is a section") {
    std::mt19937_64 rng(42);
    for (const auto& shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({3}, 3), Shape({2, 2}, 2), Shape({1, 1}, 4)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const auto lam = random_lambda(shape, shape.r, rng);
            const auto w = specialize_Q(lam, random_block(shape, rng));
            const auto p = polarize_P(lam, w);
            CHECK(specialize_Q(lam, p.representative) == w);
            for (int s = 0; s < 3; ++s) CHECK(specialize_Q(lam, p.sample(rng)) == w);
            if (p.orbit_size <= 5000) {
                const auto orbit = p.expand();
                CHECK(Integer(static_cast<unsigned long>(orbit.size())) == p.orbit_size);
                // every preimage of w is in the orbit
                std::size_t preimages = 0;
                for (const auto& b : enumerate_basis(shape)->blocks()) preimages += specialize_Q(lam, b) == w;
                CHECK(preimages == orbit.size());
            }
        }
    }
}

TEST_CASE("specialization commutes with pi_mu") {
    std::mt19937_64 rng(8);
    for (const auto& shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({1, 1}, 4), Shape({2}, 4), Shape({1, 1, 1}, 4)}) {
        std::vector<PiMatrix> maps;
        for (const auto& mu : partitions(shape.r, shape.r)) maps.push_back(build_pi(shape, mu));
        const std::vector<int> dims(shape.n(), 2);
        for (int trial = 0; trial < 50; ++trial) {
            const auto lam = random_lambda(shape, 2, rng);
            const Block b = random_block(shape, rng);
            const auto w = specialize_Q(lam, b, dims);
            for (const auto& pi : maps)
                CHECK(generic_then_specialize(lam, pi, index_of(b, *pi.source), dims) == pi_mu_nongeneric(w, pi.mu));
        }
    }
}

TEST_CASE("nongeneric multiplicities match the generic ones") {
    struct Case {
        Shape shape;
        std::vector<int> dims;
    };
    const std::vector<Case> cases{{Shape({1, 1, 1}, 3), {2, 2, 2}}, {Shape({1, 1}, 3), {3, 3}}, {Shape({2}, 3), {3}},
                                  {Shape({2}, 4), {3}},           {Shape({1, 1}, 4), {3, 2}}, {Shape({2, 1}, 3), {3, 2}},
                                  {Shape({1, 1, 1}, 3), {3, 2, 2}}};
    std::size_t nonzero_F = 0;
    for (const auto& [shape, dims] : cases) {
        const IsotypicAnalysis generic(shape);
        for (const auto& row : generic.analyze_all()) {
            bool fits = true;
            for (int j = 0; j < shape.n(); ++j) fits &= row.lam[j].length() <= dims[j];
            if (!fits) {
                CHECK(nongeneric_flattening_rank_check(shape, dims, row.lam));
                continue;
            }
            const auto ng = nongeneric_multiplicities(shape, dims, row.lam);
            INFO(shape.to_string() << " " << row.lam.to_string());
            CHECK(ng.in_U == row.in_U);
            CHECK(ng.in_I == row.in_I);
            CHECK(ng.in_F == row.in_F);
            nonzero_F += ng.in_F > 0;
            if (row.lam.max_length() <= 2) CHECK(static_cast<std::int64_t>(ng.in_U - ng.in_I) == m_lambda(shape, row.lam));
        }
    }
    CHECK(nonzero_F > 0);
}

TEST_CASE("flattening rank check") {
    const Shape s({1, 1, 1}, 3);
    for (const auto& lam : two_row_candidates(s)) CHECK(nongeneric_flattening_rank_check(s, {2, 2, 2}, lam));
    // no 3x3 minors in degree 2
    const Shape s2({1, 1}, 2);
    for (const auto& lam : two_row_candidates(s2)) {
        CHECK(nongeneric_multiplicities(s2, {3, 3}, lam).in_F == 0);
        CHECK(nongeneric_flattening_rank_check(s2, {3, 3}, lam));
    }
    CHECK_THROWS_AS(nongeneric_multiplicities(Shape({1, 1, 1}, 4), {3, 3, 3}, np("2,1,1|2,1,1|2,1,1"), 10),
                    std::length_error);
}
