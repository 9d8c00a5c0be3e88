#include <doctest.h>

#include "commands.hpp"
#include "secantkit/exactlinalg.hpp"
#include "secantkit/parallel.hpp"
#include "secantkit/prolongation.hpp"

using namespace secantkit;
using namespace secantkit::cli;

TEST_CASE("verify-theorem on small shapes") {
    const auto rep = cmd_verify_theorem({1, 1, 1}, 3);
    CHECK(rep.passed());
    CHECK(rep.results["dim_U"] == 36);
    CHECK(rep.results["route"] == "explicit");
    CHECK(rep.results["dim_F"] == rep.results["dim_I"]);
    CHECK(rep.results["F_inside_I"] == true);
    for (const auto& row : rep.results["lambdas"]) {
        CHECK(row["closed_form"] == row["symmetrizer"]);
        CHECK(row["closed_form"] == row["type_count"]);
    }

    const auto trivial = cmd_verify_theorem({1, 1, 1}, 2);
    CHECK(trivial.passed());
    CHECK(trivial.results["dim_F"] == 0);
    CHECK(trivial.results["dim_I"] == 0);

    CHECK(cmd_verify_theorem({2, 1}, 3).passed());
}

TEST_CASE("both routes agree") {
    VerifyOptions ex, iso;
    ex.route = "explicit";
    iso.route = "isotypic";
    for (const auto& [delta, r] : std::vector<std::pair<std::vector<int>, int>>{{{1, 1}, 3}, {{2}, 3}, {{2}, 4}}) {
        const auto a = cmd_verify_theorem(delta, r, ex);
        const auto b = cmd_verify_theorem(delta, r, iso);
        CHECK(a.passed());
        CHECK(b.passed());
        CHECK(a.results["dim_F"] == b.results["dim_F"]);
        CHECK(a.results["lambdas"] == b.results["lambdas"]);
    }
    VerifyOptions bad;
    bad.route = "fast";
    CHECK_THROWS_AS(cmd_verify_theorem({1, 1}, 2, bad), std::invalid_argument);
}

TEST_CASE("cap is an explicit refusal") {
    VerifyOptions o;
    o.dim_cap = 10;
    const auto rep = cmd_verify_theorem({1, 1, 1}, 3, o);
    CHECK_FALSE(rep.passed());
    CHECK(rep.results["refused"] == true);
    CHECK_FALSE(rep.results.contains("dim_F"));
    CHECK(rep.to_json()["status"] == "fail");
    CHECK(rep.to_json()["violations"].size() == 1);
}

TEST_CASE("verify-gss is verify-theorem on 1^n") {
    const auto a = cmd_verify_gss(3, 3);
    const auto b = cmd_verify_theorem({1, 1, 1}, 3);
    CHECK(a.command == "verify-gss");
    CHECK(a.results == b.results);
    CHECK_THROWS(cmd_verify_gss(0, 3));
}

TEST_CASE("hilbert and plethysm") {
    const auto h = cmd_hilbert({1, 1, 1}, {2, 2, 2}, 8);
    CHECK(h.passed());
    REQUIRE(h.results["values"].size() == 8);
    for (int r = 1; r <= 8; ++r) CHECK(h.results["values"][r - 1]["value"] == binomial(r + 7, 7).get_si());
    CHECK_THROWS_AS(cmd_hilbert({1, 1}, {2, 1}, 3), std::invalid_argument);

    const auto p = cmd_plethysm("sym3", 2);
    CHECK(p.passed());
    CHECK(p.results["dimension"] == 10);
    CHECK(p.results["table"] == Json::parse(R"([{"lambda":"4,2","multiplicity":1},{"lambda":"6","multiplicity":1}])"));
    CHECK(cmd_plethysm("triple", 4).passed());
    CHECK(cmd_plethysm("pair", 3, "2,1").passed());
    CHECK_THROWS(cmd_plethysm("pair", 3, "2"));
    CHECK_THROWS(cmd_plethysm("quartic", 2));
}

TEST_CASE("mult and types") {
    const auto m = cmd_mult({1, 1, 1}, 3, "2,1|2,1|2,1");
    CHECK(m.passed());
    CHECK(m.results["symmetrizer"] == m.results["character"]);
    CHECK(cmd_mult({2, 1}, 3, "4,2|2,1", "2,1").passed());
    CHECK_THROWS(cmd_mult({1, 1, 1}, 3, "2,1|2,1"));
    CHECK_THROWS(cmd_mult({1, 1, 1}, 3, "2,x|2,1|2,1"));

    const auto t = cmd_types({1, 1, 1}, 4, "2,2|2,2|2,2");
    CHECK(t.passed());
    CHECK(t.results["count"] == 1);
    CHECK(t.results["types"] == Json::parse("[[2,2]]"));
}

TEST_CASE("pi-matrix dump round-trips") {
    const auto rep = cmd_pi_matrix({2, 1}, 3, "2,1", true);
    const auto m = ExactMatrix::parse_dump(rep.results["dump"].get<std::string>());
    const auto pi = build_pi(Shape({2, 1}, 3), Partition({2, 1}));
    CHECK(m.dump() == pi.matrix().dump());
    CHECK(rep.results["rows"] == pi.target->size());
    CHECK(rep.results["cols"] == pi.source->size());
    CHECK(rep.results["source_blocks"].size() == pi.source->size());
    CHECK(cmd_pi_matrix({1, 1}, 2, "", false).results["rows"] == 2);
}

TEST_CASE("flatten-dim") {
    const auto rep = cmd_flatten_dim({1, 1, 1}, 3);
    CHECK(rep.results["dim"] == 15);
    CHECK(rep.results["splits"].size() == 3);
    CHECK(cmd_flatten_dim({1, 1}, 2).results["dim"] == 0);
    CHECK(cmd_flatten_dim({1, 1, 1}, 3, 2, 3, true).results["dim"].get<int>() <= 15);
}

TEST_CASE("reports do not depend on the thread count") {
    const unsigned before = thread_count();
    std::vector<std::string> dumps;
    for (unsigned t : {1u, 2u, 4u}) {
        set_thread_count(t);
        dumps.push_back(cmd_verify_theorem({2, 1}, 3).dump());
    }
    set_thread_count(before);
    CHECK(dumps[0] == dumps[1]);
    CHECK(dumps[0] == dumps[2]);

    RunReport rep;
    rep.elapsed_ms = 12;
    CHECK_FALSE(rep.to_json().contains("elapsed_ms"));
    CHECK(rep.to_json(true)["elapsed_ms"] == 12);
}
