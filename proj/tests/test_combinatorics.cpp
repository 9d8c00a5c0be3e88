#include <doctest.h>

#include <algorithm>
#include <functional>

#include "secantkit/combinatorics.hpp"

using namespace secantkit;

namespace {

// Brute-force count of semistandard tableaux of shape lam with entries 1..m.
long count_ssyt(const Partition& lam, int m) {
    auto box = box_coordinates(lam);
    const int n = lam.size();
    std::vector<std::vector<int>> grid(lam.length());
    for (int i = 0; i < lam.length(); ++i) grid[i].assign(lam[i], 0);
    long count = 0;
    std::function<void(int)> fill = [&](int b) {
        if (b == n) {
            ++count;
            return;
        }
        int i = box.row[b], c = box.col[b];
        for (int v = 1; v <= m; ++v) {
            if (c > 0 && grid[i][c - 1] > v) continue;
            if (i > 0 && grid[i - 1][c] >= v) continue;
            grid[i][c] = v;
            fill(b + 1);
        }
    };
    fill(0);
    return count;
}

long count_syt(const Partition& lam) {
    // fill the numbers 1..n one at a time, each at an addable corner
    std::vector<int> filled(lam.length(), 0);
    std::function<long(int)> rec = [&](int left) -> long {
        if (left == 0) return 1;
        long total = 0;
        for (int i = 0; i < lam.length(); ++i) {
            if (filled[i] < lam[i] && (i == 0 || filled[i - 1] > filled[i])) {
                ++filled[i];
                total += rec(left - 1);
                --filled[i];
            }
        }
        return total;
    };
    return rec(lam.size());
}

}  // namespace

TEST_CASE("partitions in reverse-lexicographic order") {
    auto p = partitions(3, 2);
    REQUIRE(p.size() == 2);
    CHECK(p[0] == Partition({3}));
    CHECK(p[1] == Partition({2, 1}));

    auto z = partitions(0, 5);
    REQUIRE(z.size() == 1);
    CHECK(z[0].empty());

    auto six = partitions(6, 2);
    REQUIRE(six.size() == 4);
    CHECK(six[0] == Partition({6}));
    CHECK(six[1] == Partition({5, 1}));
    CHECK(six[2] == Partition({4, 2}));
    CHECK(six[3] == Partition({3, 3}));

    const long expected[] = {1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
    for (int m = 1; m <= 10; ++m) {
        CHECK(partitions(m, m).size() == static_cast<std::size_t>(expected[m - 1]));
        CHECK(partition_count(m) == expected[m - 1]);
    }
}

TEST_CASE("partition validation and text form") {
    CHECK_THROWS(Partition({1, 2}));
    CHECK_THROWS(Partition({2, -1}));
    CHECK(Partition({3, 0}) == Partition({3}));
    CHECK(Partition::parse("5,3").to_string() == "5,3");
    auto lam = NPartition::parse("5,3|2,1,1");
    CHECK(lam.n() == 2);
    CHECK(lam.profile() == std::vector<int>{8, 4});
    CHECK(lam.to_string() == "5,3|2,1,1");
    CHECK(Partition({4, 2, 1}).conjugate() == Partition({3, 2, 1, 1}));
    CHECK_THROWS(NPartition::parse("2,x|1"));
}

TEST_CASE("dim_schur") {
    for (int d = 0; d <= 6; ++d)
        for (int m = 1; m <= 5; ++m) CHECK(dim_schur(Partition({d}), m) == binomial(m + d - 1, d));
    CHECK(dim_schur(Partition({1, 1}), 2) == 1);
    CHECK(dim_schur(Partition({5, 3}), 2) == 3);
    CHECK(dim_schur(Partition({2, 1}), 3) == 8);
    CHECK(dim_schur(Partition({1, 1, 1}), 2) == 0);
    for (int m = 1; m <= 4; ++m)
        for (int n = 0; n <= 6; ++n)
            for (const auto& lam : partitions(n, std::max(n, 1)))
                CHECK(dim_schur(lam, m) == count_ssyt(lam, m));
}

TEST_CASE("dim_specht") {
    CHECK(dim_specht(Partition({5})) == 1);
    CHECK(dim_specht(Partition({2, 1})) == 2);
    CHECK(dim_specht(Partition({2, 2})) == 2);
    for (int m = 1; m <= 8; ++m) {
        Integer total = 0;
        for (const auto& lam : partitions(m, m)) {
            CHECK(dim_specht(lam) == count_syt(lam));
            total += dim_specht(lam) * dim_specht(lam);
        }
        CHECK(total == factorial(m));
    }
}

TEST_CASE("n_partitions") {
    auto a = n_partitions(Shape({1, 1}, 2), 2);
    REQUIRE(a.size() == 4);
    CHECK(a[0].to_string() == "2|2");
    CHECK(a[1].to_string() == "2|1,1");
    CHECK(a[2].to_string() == "1,1|2");
    CHECK(a[3].to_string() == "1,1|1,1");

    auto b = n_partitions(Shape({2}, 1), 2);
    REQUIRE(b.size() == 2);
    CHECK(b[0].to_string() == "2");
    CHECK(b[1].to_string() == "1,1");

    auto c = n_partitions(Shape({1, 1, 1}, 3), 2);
    CHECK(c.size() == 8);
    for (const auto& lam : c)
        for (const auto& comp : lam.components())
            CHECK((comp == Partition({3}) || comp == Partition({2, 1})));
}
