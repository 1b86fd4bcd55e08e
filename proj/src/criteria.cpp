#include "embfin/criteria.hpp"

#include <fmt/format.h>

#include <utility>

namespace embfin {

std::string to_string(const DimTriple& t) {
    return fmt::format("(p={},q={},m={})", t.p, t.q, t.m);
}

DomainError::DomainError(std::string constraint, DimTriple values)
    : std::runtime_error(fmt::format("domain error: {} violated for {}", constraint, to_string(values))),
      constraint_(std::move(constraint)),
      values_(values) {}

std::string to_string(Finiteness f) {
    return f == Finiteness::Finite ? "finite" : "infinite";
}

std::string to_string(SumVerdict v) {
    return v == SumVerdict::Infinite ? "infinite" : "unknown";
}

const EvalContext& default_context() {
    static const EvalContext ctx{};
    return ctx;
}

namespace {

FinitenessVerdict finite() { return {}; }

FinitenessVerdict infinite(std::string condition, std::optional<LatticePoint> witness = std::nullopt) {
    return {Finiteness::Infinite, std::move(condition), witness};
}

constexpr bool divides(Int d, Int v) {
    return ((v % d) + d) % d == 0;
}

}  // namespace

FinitenessVerdict knot_infinite(Int q, Int m, const EvalContext& ctx) {
    if (q < 1) throw DomainError("q >= 1", {0, q, m});
    if (!(m > q + 2)) throw DomainError("m > q+2", {0, q, m});
    if (divides(4, q + 1) && 2 * m < 3 * q + ctx.params.knot_slice_rhs) {
        return infinite("4 | q+1 and 2m < 3q+4");
    }
    return finite();
}

FinitenessVerdict framed_knot_infinite(Int p, Int q, Int m, const EvalContext& ctx) {
    if (q < 1) throw DomainError("q >= 1", {p, q, m});
    if (!(m > q + 2)) throw DomainError("m > q+2", {p, q, m});
    if (!(1 <= p && p <= m - q)) throw DomainError("1 <= p <= m-q", {p, q, m});
    const CriteriaParams& c = ctx.params;
    if (divides(4, q + 1) && 2 * m < 2 * p + 3 * q + c.framed_slice_rhs) {
        return infinite("4 | q+1 and 2m < 2p+3q+2");
    }
    if (divides(2, q + 1) && m == 2 * q + c.framed_double_off) {
        return infinite("2 | q+1 and m = 2q+1");
    }
    if (divides(2, q) && m == p + 2 * q + c.framed_even_off) {
        return infinite("2 | q and m = p+2q");
    }
    return finite();
}

FinitenessVerdict link_unknotted_infinite(Int p, Int q, Int m, const EvalContext& ctx) {
    if (!(p >= 1)) throw DomainError("p >= 1", {p, q, m});
    if (!(q >= 1)) throw DomainError("q >= 1", {p, q, m});
    if (!(p < m - 2)) throw DomainError("p < m-2", {p, q, m});
    if (!(q < m - 2)) throw DomainError("q < m-2", {p, q, m});
    const LineEquation line(m - p - 2, m - q - 2, m - ctx.params.link_line_off);
    if (auto w = fcs_line_witness(m - p, m - q, line, ctx.table)) {
        return infinite("fcs witness", *w);
    }
    return finite();
}

FinitenessVerdict link_zero_infinite(Int n, Int q, Int m, const EvalContext& ctx) {
    // The link's classification set splits off the unknotted-components set;
    // what remains is governed by the first component's knot set. The knot
    // hypothesis m > n+2 coincides with the codimension check n < m-2 above.
    auto unknotted = link_unknotted_infinite(n, q, m, ctx);
    if (unknotted.infinite()) {
        return infinite("linku: " + unknotted.condition, unknotted.witness);
    }
    auto component = knot_infinite(n, m, ctx);
    if (component.infinite()) {
        return infinite("knot: " + component.condition);
    }
    return finite();
}

namespace {

void check_tori_domain(Int p, Int q, Int m) {
    if (!(p >= 1)) throw DomainError("p >= 1", {p, q, m});
    if (!(q >= 1)) throw DomainError("q >= 1", {p, q, m});
    if (!(m > 2 * p + q + 2)) throw DomainError("m > 2p+q+2", {p, q, m});
    if (!(2 * m < 2 * p + 3 * q + 4)) throw DomainError("2m < 2p+3q+4", {p, q, m});
}

}  // namespace

FinitenessVerdict knotted_tori_infinite(Int p, Int q, Int m, const EvalContext& ctx) {
    check_tori_domain(p, q, m);
    if (divides(4, q + 1)) return infinite("4 | q+1");
    if (divides(4, p + q + 1)) return infinite("4 | p+q+1");
    const LineEquation line(m - p - q - 2, m - q - 2, m - ctx.params.tori_line_off);
    if (auto w = fcs_line_witness(m - p - q, m - q, line, ctx.table)) {
        return infinite("fcs witness", *w);
    }
    return finite();
}

FinitenessVerdict knotted_tori_infinite_via_components(Int p, Int q, Int m, const EvalContext& ctx) {
    check_tori_domain(p, q, m);
    // The tori hypotheses imply every constituent hypothesis below:
    // p+q < m-2 and q < m-2 follow from m > 2p+q+2 with p >= 1, and
    // 1 <= p <= m-q follows from m-q > 2p+2.
    auto link = link_unknotted_infinite(p + q, q, m, ctx);
    if (link.infinite()) return infinite("linku: " + link.condition, link.witness);
    auto component = knot_infinite(p + q, m, ctx);
    if (component.infinite()) return infinite("knot: " + component.condition);
    auto framed = framed_knot_infinite(p, q, m, ctx);
    if (framed.infinite()) return infinite("framed: " + framed.condition);
    return finite();
}

SumVerdict connected_sum_infinite(Int p1, Int q1, Int p2, Int q2, Int m, const EvalContext& ctx) {
    const DimTriple first{p1, q1, m};
    if (!(q1 >= p1 && p1 >= p2)) throw DomainError("q1 >= p1 >= p2", first);
    if (!(m > 2 * p1 + q1 + 2)) throw DomainError("m > 2p1+q1+2", first);
    if (!(p2 + q2 == p1 + q1)) throw DomainError("p2+q2 = p1+q1", first);
    for (auto [p, q] : {std::pair{p1, q1}, std::pair{p2, q2}}) {
        const bool in_domain = p >= 1 && q >= 1 && m > 2 * p + q + 2 && 2 * m < 2 * p + 3 * q + 4;
        if (in_domain && knotted_tori_infinite(p, q, m, ctx).infinite()) {
            return SumVerdict::Infinite;
        }
    }
    return SumVerdict::Unknown;
}

}  // namespace embfin
