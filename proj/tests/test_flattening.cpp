#include <doctest.h>

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "secantkit/flattening.hpp"
#include "secantkit/prolongation.hpp"

using namespace secantkit;

namespace {

MinorGenerator::Tuple tup(std::vector<int> a, std::vector<int> b) { return {std::move(a), std::move(b)}; }

MinorGenerator worked_minor() {
    MinorGenerator g;
    g.alphas = {tup({1}, {1}), tup({3}, {4}), tup({7}, {3})};
    g.betas = {tup({6}, {}), tup({2}, {}), tup({8}, {})};
    g.gammas = {tup({4, 5}, {2})};
    return g;
}

// Count generators by brute force: all ordered fillings, deduplicated by
// sorting alphas, betas and gammas.
std::size_t brute_force_count(const Shape& shape, const FlatteningSplit& split, int k) {
    using Key = std::tuple<std::vector<std::vector<std::vector<int>>>, std::vector<std::vector<std::vector<int>>>,
                           std::vector<std::vector<std::vector<int>>>>;
    std::set<Key> seen;
    const int n = shape.n();
    // per column, a permutation of labels read off into consecutive slots
    std::vector<std::vector<int>> perms(n);
    for (int j = 0; j < n; ++j) {
        perms[j].resize(shape.label_count(j));
        std::iota(perms[j].begin(), perms[j].end(), 1);
    }
    std::function<void(int)> rec = [&](int j) {
        if (j == n) {
            std::vector<std::vector<std::vector<int>>> al(k), be(k), ga(shape.r - k);
            for (int c = 0; c < n; ++c) {
                std::size_t pos = 0;
                auto take = [&](int cnt) {
                    std::vector<int> s(perms[c].begin() + pos, perms[c].begin() + pos + cnt);
                    std::sort(s.begin(), s.end());
                    pos += cnt;
                    return s;
                };
                for (int i = 0; i < k; ++i) al[i].push_back(take(split.A[c]));
                for (int i = 0; i < k; ++i) be[i].push_back(take(split.B[c]));
                for (int i = 0; i < shape.r - k; ++i) ga[i].push_back(take(shape.delta[c]));
            }
            std::sort(al.begin(), al.end());
            std::sort(be.begin(), be.end());
            std::sort(ga.begin(), ga.end());
            seen.insert({al, be, ga});
            return;
        }
        std::sort(perms[j].begin(), perms[j].end());
        do {
            rec(j + 1);
        } while (std::next_permutation(perms[j].begin(), perms[j].end()));
    };
    rec(0);
    return seen.size();
}

}  // namespace

TEST_CASE("worked determinant expansion") {
    Shape s({2, 1}, 4);
    auto terms = expand_minor_terms(s, worked_minor());
    REQUIRE(terms.size() == 6);
    std::map<std::string, int> got, want;
    for (const auto& t : terms) got[t.block.to_string()] += t.sign;
    auto add = [&](const char* text, int sign) { want[Block::parse(s.delta, text).to_string()] += sign; };
    add("1,6|1;3,2|4;7,8|3;4,5|2", +1);
    add("1,2|1;3,6|4;7,8|3;4,5|2", -1);
    add("1,8|1;3,2|4;7,6|3;4,5|2", -1);
    add("1,6|1;3,8|4;7,2|3;4,5|2", -1);
    add("1,8|1;3,6|4;7,2|3;4,5|2", +1);
    add("1,2|1;3,8|4;7,6|3;4,5|2", +1);
    CHECK(got == want);
    CHECK(terms[0].sign == 1);
    CHECK(terms[0].block == Block::parse(s.delta, "1,6|1;3,2|4;7,8|3;4,5|2"));
}

TEST_CASE("small minors") {
    Shape s({2, 1}, 4);
    auto basis = enumerate_basis(s);
    MinorGenerator one;
    one.alphas = {tup({1}, {1})};
    one.betas = {tup({6}, {})};
    one.gammas = {tup({2, 3}, {4}), tup({4, 5}, {2}), tup({7, 8}, {3})};
    auto v = expand_minor(s, one, *basis);
    REQUIRE(v.size() == 1);
    CHECK(v[0].second == 1);
    CHECK((*basis)[v[0].first] == Block::parse(s.delta, "1,6|1;2,3|4;4,5|2;7,8|3"));

    auto g = worked_minor();
    auto w = expand_minor(s, g, *basis);
    std::swap(g.alphas[0], g.alphas[2]);
    auto neg = expand_minor(s, g, *basis);
    CHECK(add_scaled(w, neg, 1).empty());

    auto bad = worked_minor();
    bad.betas[0][0] = {2};
    CHECK_THROWS_AS(expand_minor(s, bad, *basis), std::invalid_argument);
    bad = worked_minor();
    bad.gammas.clear();
    CHECK_THROWS_AS(expand_minor_terms(s, bad), std::invalid_argument);
}

TEST_CASE("splits and generator counts") {
    auto splits = flattening_splits(Shape({2, 1}, 3));
    CHECK(splits.size() == 4);
    CHECK(splits.front().A == std::vector<int>{2, 0});
    CHECK(distinct_splits(Shape({2, 1}, 3), false).size() == 2);
    CHECK(distinct_splits(Shape({1, 1}, 3), true).size() == 1);
    CHECK(flattening_splits(Shape({1}, 3)).empty());

    for (auto [shape, k] : std::vector<std::pair<Shape, int>>{{Shape({1, 1}, 3), 2},
                                                              {Shape({1, 1}, 3), 3},
                                                              {Shape({2}, 3), 2},
                                                              {Shape({1, 1, 1}, 2), 2},
                                                              {Shape({2, 1}, 2), 2}}) {
        for (const auto& split : flattening_splits(shape)) {
            std::size_t enumerated = 0;
            for_each_minor(shape, split, k, [&](const MinorGenerator&) { ++enumerated; });
            CHECK(Integer(static_cast<unsigned long>(enumerated)) == minor_count(shape, split, k));
            CHECK(enumerated == brute_force_count(shape, split, k));
        }
    }
    CHECK(minor_count(Shape({3}, 4), FlatteningSplit{{1}, {2}}, 3) == 277200);
}

TEST_CASE("degenerate minor sizes") {
    Shape s({1, 1}, 3);
    FlatteningOptions one;
    one.minor_size = 1;
    CHECK(build_flattening_space(s, one).span.dim() == enumerate_basis(s)->size());
    FlatteningOptions big;
    big.minor_size = 4;
    CHECK(build_flattening_space(s, big).span.dim() == 0);
    CHECK(one_flattening_space(Shape({2}, 2), 3).dim() == 0);
    CHECK(flattening_space(Shape({1, 1, 1}, 2)).dim() == 0);
}

TEST_CASE("flattenings lie in the ideal and form a submodule") {
    std::mt19937_64 rng(17);
    for (auto shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({2}, 4), Shape({1, 1}, 3)}) {
        auto basis = enumerate_basis(shape);
        auto f = flattening_space(shape);
        auto ideal = generic_ideal_part(shape);
        CHECK(f.dim() == ideal.dim());
        for (const auto& v : f.integer_basis()) CHECK(ideal.contains(v));
        for (const auto& mu : exact_part_partitions(shape.r, shape.k)) {
            auto pi = build_pi(shape, mu).matrix();
            CHECK((pi * f.basis().transpose()).nnz() == 0);
        }
        auto rows = f.integer_basis();
        for (int t = 0; t < 10 && !rows.empty(); ++t) {
            auto g = GroupElement::random(shape, rng);
            const auto& v = rows[rng() % rows.size()];
            BigVector w;
            for (const auto& [i, c] : v) w.emplace_back(index_of(act(g, (*basis)[i]), *basis), c);
            std::sort(w.begin(), w.end(), [](auto& a, auto& b) { return a.first < b.first; });
            CHECK(f.contains(w));
        }
        auto f1 = one_flattening_space(shape);
        for (const auto& v : f1.integer_basis()) CHECK(f.contains(v));
    }
}

TEST_CASE("saturation reaches the enumerated span") {
    for (auto shape : {Shape({1, 1, 1}, 3), Shape({2, 1}, 3), Shape({3}, 3), Shape({1, 1, 1}, 4)}) {
        FlatteningOptions full, sat;
        sat.force_saturation = true;
        auto a = build_flattening_space(shape, full);
        auto b = build_flattening_space(shape, sat);
        CHECK_FALSE(a.saturated);
        CHECK(b.saturated);
        CHECK(a.span.basis() == b.span.basis());
        for (std::size_t i = 0; i < a.splits.size(); ++i) CHECK(a.splits[i].dim == b.splits[i].dim);
    }
}
