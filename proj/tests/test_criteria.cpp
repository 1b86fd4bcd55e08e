#include "embfin/criteria.hpp"

#include "embfin/census.hpp"

#include <doctest.h>

using namespace embfin;

namespace {

bool is_infinite(const FinitenessVerdict& v) { return v.value == Finiteness::Infinite; }

}  // namespace

TEST_CASE("knot criterion") {
    CHECK(is_infinite(knot_infinite(3, 6)));
    CHECK(knot_infinite(3, 6).condition == "4 | q+1 and 2m < 3q+4");
    CHECK_FALSE(is_infinite(knot_infinite(3, 7)));
    CHECK_FALSE(is_infinite(knot_infinite(5, 10)));
    CHECK(is_infinite(knot_infinite(7, 12)));
    CHECK_FALSE(is_infinite(knot_infinite(7, 13)));

    SUBCASE("domain") {
        CHECK_THROWS_WITH_AS(knot_infinite(3, 5), "domain error: m > q+2 violated for (p=0,q=3,m=5)",
                             DomainError);
        try {
            knot_infinite(4, 6);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "m > q+2");
            CHECK(e.values() == DimTriple{0, 4, 6});
        }
        CHECK_THROWS_AS(knot_infinite(0, 9), DomainError);
    }
}

TEST_CASE("framed knot criterion") {
    const auto slice = framed_knot_infinite(1, 3, 6);
    CHECK(is_infinite(slice));
    CHECK(slice.condition == "4 | q+1 and 2m < 2p+3q+2");

    const auto doubled = framed_knot_infinite(2, 5, 11);
    CHECK(is_infinite(doubled));
    CHECK(doubled.condition == "2 | q+1 and m = 2q+1");

    CHECK_FALSE(is_infinite(framed_knot_infinite(1, 4, 8)));

    const auto even = framed_knot_infinite(2, 6, 14);
    CHECK(is_infinite(even));
    CHECK(even.condition == "2 | q and m = p+2q");

    SUBCASE("domain") {
        try {
            framed_knot_infinite(0, 5, 9);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "1 <= p <= m-q");
        }
        CHECK_THROWS_AS(framed_knot_infinite(5, 5, 9), DomainError);   // p > m-q
        CHECK_THROWS_AS(framed_knot_infinite(1, 5, 7), DomainError);   // m = q+2
    }
}

TEST_CASE("unknotted-components link criterion") {
    const auto verdict = link_unknotted_infinite(3, 3, 6);
    CHECK(is_infinite(verdict));
    CHECK(verdict.condition == "fcs witness");
    CHECK(verdict.witness == LatticePoint{1, 2});

    CHECK_FALSE(is_infinite(link_unknotted_infinite(1, 1, 4)));
    CHECK_FALSE(is_infinite(link_unknotted_infinite(2, 2, 6)));

    const auto high = link_unknotted_infinite(7, 6, 11);
    CHECK(is_infinite(high));
    CHECK(high.witness == LatticePoint{1, 2});

    SUBCASE("domain") {
        try {
            link_unknotted_infinite(4, 2, 6);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "p < m-2");
        }
        CHECK_THROWS_AS(link_unknotted_infinite(2, 4, 6), DomainError);
        CHECK_THROWS_AS(link_unknotted_infinite(0, 2, 6), DomainError);
    }
}

TEST_CASE("zero-classed link criterion") {
    CHECK(is_infinite(link_zero_infinite(3, 3, 6)));
    CHECK(link_zero_infinite(3, 3, 6).condition == "linku: fcs witness");

    CHECK(is_infinite(link_zero_infinite(7, 6, 11)));
    CHECK_FALSE(is_infinite(link_zero_infinite(2, 2, 6)));

    SUBCASE("knot part alone can fire") {
        const auto verdict = link_zero_infinite(7, 1, 12);
        CHECK(is_infinite(verdict));
        CHECK(verdict.condition == "knot: 4 | q+1 and 2m < 3q+4");
        CHECK_FALSE(verdict.witness.has_value());
    }
}

TEST_CASE("knotted tori criterion") {
    CHECK_FALSE(is_infinite(knotted_tori_infinite(1, 5, 10)));

    const auto sum = knotted_tori_infinite(1, 6, 11);
    CHECK(is_infinite(sum));
    CHECK(sum.condition == "4 | p+q+1");
    CHECK_FALSE(sum.witness.has_value());

    const auto slice = knotted_tori_infinite(1, 7, 12);
    CHECK(is_infinite(slice));
    CHECK(slice.condition == "4 | q+1");

    SUBCASE("the fcs line condition fires with a recorded witness") {
        const auto verdict = knotted_tori_infinite(1, 13, 18);
        CHECK(is_infinite(verdict));
        CHECK(verdict.condition == "fcs witness");
        CHECK(verdict.witness == LatticePoint{3, 3});
    }

    SUBCASE("domain") {
        try {
            knotted_tori_infinite(1, 3, 8);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "2m < 2p+3q+4");
        }
        try {
            knotted_tori_infinite(1, 6, 10);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "m > 2p+q+2");
        }
        CHECK_THROWS_AS(knotted_tori_infinite(0, 5, 10), DomainError);
    }
}

TEST_CASE("component reformulation matches the fixtures") {
    CHECK_FALSE(is_infinite(knotted_tori_infinite_via_components(1, 5, 10)));
    CHECK(is_infinite(knotted_tori_infinite_via_components(1, 6, 11)));
    CHECK(is_infinite(knotted_tori_infinite_via_components(1, 7, 12)));
    CHECK(knotted_tori_infinite_via_components(1, 7, 12).condition ==
          "framed: 4 | q+1 and 2m < 2p+3q+2");
    CHECK_THROWS_AS(knotted_tori_infinite_via_components(1, 3, 8), DomainError);
}

TEST_CASE("property: direct and component criteria agree on the whole strip") {
    GridBounds bounds{{1, 6}, {1, 24}, std::nullopt};
    int checked = 0;
    for (const DimTriple& t : enumerate_domain(bounds)) {
        const auto direct = knotted_tori_infinite(t.p, t.q, t.m);
        const auto via = knotted_tori_infinite_via_components(t.p, t.q, t.m);
        CHECK_MESSAGE(direct.value == via.value, "disagreement at ", to_string(t));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("connected sums") {
    CHECK(connected_sum_infinite(1, 6, 1, 6, 11) == SumVerdict::Infinite);
    CHECK(connected_sum_infinite(1, 5, 1, 5, 10) == SumVerdict::Unknown);
    CHECK_THROWS_AS(connected_sum_infinite(2, 1, 1, 2, 9), DomainError);

    SUBCASE("an out-of-domain factor is skipped, not fatal") {
        // The second factor (0, 7) fails the tori hypothesis p >= 1 and is
        // skipped; the first factor alone decides.
        CHECK(connected_sum_infinite(1, 6, 0, 7, 11) == SumVerdict::Infinite);
        // Both factors outside the strip: nothing can be concluded.
        CHECK(connected_sum_infinite(2, 2, 1, 3, 9) == SumVerdict::Unknown);
    }
    SUBCASE("domain constraints are reported in order") {
        try {
            connected_sum_infinite(1, 6, 1, 7, 11);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "p2+q2 = p1+q1");
        }
        try {
            connected_sum_infinite(1, 6, 1, 6, 10);
            FAIL("expected DomainError");
        } catch (const DomainError& e) {
            CHECK(e.constraint() == "m > 2p1+q1+2");
        }
    }
}

TEST_CASE("criterion constants are injectable for the mutation harness") {
    EvalContext ctx;
    ctx.params.framed_slice_rhs = 0;
    CHECK_FALSE(is_infinite(framed_knot_infinite(1, 7, 12, ctx)));
    CHECK(is_infinite(framed_knot_infinite(1, 7, 12)));

    EvalContext wide;
    wide.params.tori_line_off = 4;
    CHECK_FALSE(is_infinite(knotted_tori_infinite(1, 13, 18, wide)));
}
