#include "embfin/fcs.hpp"

#include <fmt/format.h>

#include <stdexcept>
#include <utility>

namespace embfin {

namespace {

constexpr Int mod_norm(Int v, Int m) {
    return ((v % m) + m) % m;
}

}  // namespace

std::string to_string(const LatticePoint& p) {
    return fmt::format("({},{})", p.x, p.y);
}

LineEquation::LineEquation(Int a_, Int b_, Int c_) : a(a_), b(b_), c(c_) {
    if (a < 1 || b < 1) {
        throw std::invalid_argument(
            fmt::format("line coefficients must satisfy a >= 1 and b >= 1, got a={}, b={}", a, b));
    }
}

bool CoordPred::matches(Int v) const {
    switch (kind) {
        case Kind::Eq:
            return v == a;
        case Kind::Ge:
            return v >= a;
        case Kind::Mod:
            return mod_norm(v, a) == r;
    }
    return false;
}

CoordPred pred_eq(Int value) { return {CoordPred::Kind::Eq, value, 0}; }

CoordPred pred_ge(Int value) { return {CoordPred::Kind::Ge, value, 0}; }

CoordPred pred_mod(Int modulus, Int residue) {
    if (modulus < 1) throw std::invalid_argument("modulus must be >= 1");
    return {CoordPred::Kind::Mod, modulus, mod_norm(residue, modulus)};
}

std::string pred_name(const CoordPred& p, char var) {
    switch (p.kind) {
        case CoordPred::Kind::Eq:
            return fmt::format("{}={}", var, p.a);
        case CoordPred::Kind::Ge:
            return fmt::format("{}>={}", var, p.a);
        case CoordPred::Kind::Mod: {
            // v ≡ r (mod a)  rendered as  "a|v+offset" with offset = -r mod a.
            const Int offset = mod_norm(-p.r, p.a);
            if (offset == 0) return fmt::format("{}|{}", p.a, var);
            return fmt::format("{}|{}+{}", p.a, var, offset);
        }
    }
    return {};
}

bool Clause::matches(const LatticePoint& p) const {
    return x.matches(p.x) && y.matches(p.y);
}

Clause make_clause(const CoordPred& x, const CoordPred& y) {
    return Clause{x, y, pred_name(x, 'x') + " and " + pred_name(y, 'y')};
}

const ClauseTable& default_clause_table() {
    static const ClauseTable table = [] {
        ClauseTable t;
        t.even_even = {
            make_clause(pred_eq(1), pred_eq(1)),      // x=1 and y=1
            make_clause(pred_eq(2), pred_mod(2, 0)),  // x=2 and 2|y
            make_clause(pred_eq(3), pred_eq(3)),      // x=3 and y=3
            make_clause(pred_eq(3), pred_ge(5)),      // x=3 and y>=5
            make_clause(pred_ge(4), pred_ge(4)),      // x>=4 and y>=4
            make_clause(pred_mod(2, 0), pred_eq(2)),  // 2|x and y=2
            make_clause(pred_ge(5), pred_eq(3)),      // x>=5 and y=3
        };
        t.odd_even = {
            make_clause(pred_eq(1), pred_eq(1)),      // x=1 and y=1
            make_clause(pred_eq(2), pred_mod(2, 1)),  // x=2 and 2|y+1
            make_clause(pred_eq(3), pred_ge(2)),      // x=3 and y>=2
            make_clause(pred_ge(4), pred_ge(4)),      // x>=4 and y>=4
            make_clause(pred_mod(4, 0), pred_eq(2)),  // 4|x and y=2
            make_clause(pred_mod(4, 3), pred_eq(2)),  // 4|x+1 and y=2
            make_clause(pred_ge(5), pred_eq(3)),      // x>=5 and y=3
        };
        t.odd_odd = {
            make_clause(pred_eq(1), pred_eq(1)),      // x=1 and y=1
            make_clause(pred_eq(2), pred_mod(4, 2)),  // x=2 and 4|y+2
            make_clause(pred_eq(2), pred_mod(4, 1)),  // x=2 and 4|y+3
            make_clause(pred_ge(3), pred_ge(3)),      // x>=3 and y>=3
            make_clause(pred_mod(4, 2), pred_eq(2)),  // 4|x+2 and y=2
            make_clause(pred_mod(4, 1), pred_eq(2)),  // 4|x+3 and y=2
        };
        return t;
    }();
    return table;
}

namespace {

const std::vector<Clause>& select_column(Parity pi, Parity pj, const ClauseTable& t) {
    if (pi == Parity::Odd) {
        return pj == Parity::Even ? t.odd_even : t.odd_odd;
    }
    // (even, odd) never reaches here: it is resolved by reflection first.
    return t.even_even;
}

}  // namespace

std::optional<FcsMatch> fcs_match(Int i, Int j, const LatticePoint& p, const ClauseTable& table) {
    if (p.x < 1 || p.y < 1) return std::nullopt;
    Parity pi = parity_of(i);
    Parity pj = parity_of(j);
    LatticePoint q = p;
    bool reflected = false;
    if (pi == Parity::Even && pj == Parity::Odd) {
        std::swap(pi, pj);
        q = {p.y, p.x};
        reflected = true;
    }
    for (const Clause& clause : select_column(pi, pj, table)) {
        if (clause.matches(q)) return FcsMatch{clause.name, reflected};
    }
    return std::nullopt;
}

bool fcs_contains(Int i, Int j, const LatticePoint& p, const ClauseTable& table) {
    return fcs_match(i, j, p, table).has_value();
}

std::vector<LatticePoint> fcs_window(Int i, Int j, Int x_max, Int y_max, const ClauseTable& table) {
    if (x_max < 1 || y_max < 1) {
        throw std::invalid_argument(
            fmt::format("window bounds must satisfy x_max >= 1 and y_max >= 1, got x_max={}, y_max={}",
                        x_max, y_max));
    }
    std::vector<LatticePoint> members;
    for (Int x = 1; x <= x_max; ++x) {
        for (Int y = 1; y <= y_max; ++y) {
            if (fcs_contains(i, j, {x, y}, table)) members.push_back({x, y});
        }
    }
    return members;
}

std::vector<LatticePoint> line_solutions(const LineEquation& eq) {
    std::vector<LatticePoint> solutions;
    for (Int x = 1; eq.a * x + eq.b <= eq.c; ++x) {
        const Int rest = eq.c - eq.a * x;
        if (rest % eq.b == 0) solutions.push_back({x, rest / eq.b});
    }
    return solutions;
}

std::optional<LatticePoint> fcs_line_witness(Int i, Int j, const LineEquation& eq,
                                             const ClauseTable& table) {
    for (const LatticePoint& p : line_solutions(eq)) {
        if (fcs_contains(i, j, p, table)) return p;
    }
    return std::nullopt;
}

}  // namespace embfin
