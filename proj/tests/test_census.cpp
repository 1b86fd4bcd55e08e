#include "embfin/census.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <sstream>

using namespace embfin;

namespace {

const char* kGoldenCsv =
    "p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition\n"
    "1,5,10,finite,finite,finite,finite,finite,0,0,,,\n"
    "1,6,11,infinite,infinite,finite,finite,infinite,2,inf,,,4 | p+q+1\n"
    "1,7,12,infinite,finite,infinite,infinite,finite,1,inf,,,4 | q+1\n"
    "1,7,13,infinite,finite,finite,finite,infinite,1,inf,,,4 | q+1\n";

}  // namespace

TEST_CASE("domain enumeration fixtures") {
    CHECK(enumerate_domain({{1, 1}, {5, 5}, std::nullopt}) == std::vector<DimTriple>{{1, 5, 10}});
    CHECK(enumerate_domain({{1, 1}, {3, 3}, std::nullopt}).empty());
    CHECK(enumerate_domain({{1, 1}, {1, 1}, std::nullopt}).empty());

    SUBCASE("explicit m ranges intersect the strip") {
        CHECK(enumerate_domain({{1, 1}, {5, 7}, IntRange{11, 12}}) ==
              std::vector<DimTriple>{{1, 6, 11}, {1, 7, 12}});
        CHECK(enumerate_domain({{1, 1}, {5, 5}, IntRange{11, 20}}).empty());
    }
    SUBCASE("invalid bounds are rejected") {
        CHECK_THROWS_AS(enumerate_domain({{0, 1}, {5, 5}, std::nullopt}), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_domain({{1, 1}, {5, 4}, std::nullopt}), std::invalid_argument);
        CHECK_THROWS_AS(enumerate_domain({{1, 1}, {5, 5}, IntRange{3, 0}}), std::invalid_argument);
    }
}

TEST_CASE("property: enumeration matches a wide inequality scan") {
    const auto got = enumerate_domain({{1, 5}, {1, 20}, std::nullopt});
    const auto expected = oracles::domain_triples(1, 5, 1, 20);
    REQUIRE(got.size() == expected.size());
    for (std::size_t idx = 0; idx < got.size(); ++idx) {
        CHECK(got[idx] == DimTriple{expected[idx][0], expected[idx][1], expected[idx][2]});
    }
    SUBCASE("lexicographic order") {
        for (std::size_t idx = 1; idx < got.size(); ++idx) {
            CHECK(got[idx - 1] < got[idx]);
        }
    }
}

TEST_CASE("census sweep produces the expected table") {
    DerivedRankProvider provider;
    const auto records = run_census({{1, 1}, {5, 7}, std::nullopt}, provider);
    REQUIRE(records.size() == 4);
    CHECK(records[0].tori == Finiteness::Finite);
    CHECK(records[0].rank == RankInterval::exact(0));
    CHECK(records[1].condition == "4 | p+q+1");
    CHECK(records[1].rank == RankInterval::at_least(2));
    CHECK(census_to_csv(records) == kGoldenCsv);

    SUBCASE("empty grids render empty reports") {
        const auto none = run_census({{1, 1}, {3, 3}, std::nullopt}, provider);
        CHECK(none.empty());
        CHECK(census_to_json(none) == "[]");
        CHECK(census_to_csv(none) ==
              "p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition\n");
    }
    SUBCASE("deterministic across runs") {
        const auto again = run_census({{1, 1}, {5, 7}, std::nullopt}, provider);
        CHECK(census_to_csv(again) == census_to_csv(records));
        CHECK(census_to_json(again) == census_to_json(records));
    }
}

TEST_CASE("census rows with lattice witnesses") {
    DerivedRankProvider provider;
    const auto records = run_census({{1, 1}, {13, 13}, IntRange{18, 18}}, provider);
    REQUIRE(records.size() == 1);
    CHECK(records[0].condition == "fcs witness");
    CHECK(records[0].witness == LatticePoint{3, 3});
    const auto csv_row = census_to_csv(records);
    CHECK(csv_row.find("1,13,18,infinite") != std::string::npos);
    CHECK(csv_row.find(",3,3,fcs witness\n") != std::string::npos);
    CHECK(census_from_csv(csv_row) == records);
    CHECK(census_from_json(census_to_json(records)) == records);
}

TEST_CASE("round trips are lossless") {
    DerivedRankProvider provider;
    const auto records = run_census({{1, 3}, {1, 18}, std::nullopt}, provider);
    REQUIRE(!records.empty());
    CHECK(census_from_csv(census_to_csv(records)) == records);
    CHECK(census_from_json(census_to_json(records)) == records);
}

TEST_CASE("parser rejects malformed census data") {
    CHECK_THROWS_AS(census_from_csv("not,a,header\n1,2,3\n"), std::invalid_argument);
    const std::string header =
        "p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition\n";
    CHECK_THROWS_AS(census_from_csv(header + "1,5,10,finite,finite\n"), std::invalid_argument);
    CHECK_THROWS_AS(
        census_from_csv(header + "1,5,10,finite,finite,finite,finite,finite,0,0,3,,\n"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        census_from_csv(header + "1,5,10,sometimes,finite,finite,finite,finite,0,0,,,\n"),
        std::invalid_argument);
    CHECK_THROWS_AS(
        census_from_csv(header + "x,5,10,finite,finite,finite,finite,finite,0,0,,,\n"),
        std::invalid_argument);

    CHECK_THROWS_AS(census_from_json("{}"), std::invalid_argument);
    CHECK_THROWS_AS(census_from_json("[{\"p\": 1}]"), std::invalid_argument);
    CHECK_THROWS_AS(census_from_json("[1, 2"), std::invalid_argument);
}

TEST_CASE("consistency report is clean for the published constants") {
    DerivedRankProvider provider;
    const auto report = consistency_report({{1, 4}, {1, 16}, std::nullopt}, provider);
    CHECK(report.clean());
    CHECK(report.equivalence_failures.empty());
    CHECK(report.chain_violations.empty());
    CHECK(report.vacuity_failures.empty());

    SUBCASE("empty grid is trivially clean") {
        CHECK(consistency_report({{1, 1}, {1, 2}, std::nullopt}, provider).clean());
    }
}

TEST_CASE("a corrupted membership clause is caught by the cross-check") {
    EvalContext mutated;
    // Drop "x=2 and 2|y+1" from the odd/even column.
    mutated.table.odd_even.erase(mutated.table.odd_even.begin() + 1);
    DerivedRankProvider provider(mutated);
    const auto report = consistency_report({{1, 2}, {1, 13}, std::nullopt}, provider, mutated);
    CHECK_FALSE(report.clean());
    REQUIRE(!report.equivalence_failures.empty());
    bool found = false;
    for (const auto& failure : report.equivalence_failures) {
        if (failure.triple == DimTriple{1, 7, 13}) {
            found = true;
            CHECK(failure.direct.value == Finiteness::Infinite);
            CHECK(failure.via_components.value == Finiteness::Finite);
        }
    }
    CHECK(found);
}

TEST_CASE("an unsound rank table surfaces as a chain failure") {
    std::istringstream lying("knot 7 12 0 0\nstiefel 7 5 1 0 0\n");
    FileRankProvider provider(parse_rank_table(lying));
    const auto report = consistency_report({{1, 1}, {7, 7}, std::nullopt}, provider);
    CHECK_FALSE(report.clean());
    REQUIRE(report.chain_violations.size() == 1);
    CHECK(report.chain_violations[0].triple == DimTriple{1, 7, 12});
    CHECK(report.chain_violations[0].violations.empty());
    CHECK(!report.chain_violations[0].error.empty());
    CHECK(report.equivalence_failures.empty());
}
