#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace embfin {

using Int = long long;

// A lattice point (x, y). Membership queries treat anything outside the
// positive quadrant as a non-member.
struct LatticePoint {
    Int x = 0;
    Int y = 0;
    friend constexpr bool operator==(const LatticePoint&, const LatticePoint&) = default;
    friend constexpr auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

std::string to_string(const LatticePoint& p);  // "(x,y)"

// The line a*x + b*y = c over the positive integers; a, b >= 1, so the
// solution set is finite.
struct LineEquation {
    Int a;
    Int b;
    Int c;
    LineEquation(Int a_, Int b_, Int c_);  // throws std::invalid_argument unless a, b >= 1
};

enum class Parity { Even, Odd };

constexpr Parity parity_of(Int n) {
    return ((n % 2) + 2) % 2 == 0 ? Parity::Even : Parity::Odd;
}

// A predicate on one coordinate of a membership clause: v = a, v >= a, or
// v ≡ r (mod a).
struct CoordPred {
    enum class Kind { Eq, Ge, Mod };
    Kind kind = Kind::Eq;
    Int a = 0;  // compared value, or modulus for Kind::Mod
    Int r = 0;  // residue for Kind::Mod
    bool matches(Int v) const;
};

CoordPred pred_eq(Int value);
CoordPred pred_ge(Int value);
CoordPred pred_mod(Int modulus, Int residue);

// Renders a predicate in divisibility notation, e.g. "4|x+3" for
// x ≡ 1 (mod 4), "x>=5", or "y=2".
std::string pred_name(const CoordPred& p, char var);

// A conjunction "X(x) and Y(y)". A point belongs to the set when at least
// one clause of the selected parity column matches it.
struct Clause {
    CoordPred x;
    CoordPred y;
    std::string name;  // e.g. "x=2 and 2|y+1"
    bool matches(const LatticePoint& p) const;
};

Clause make_clause(const CoordPred& x, const CoordPred& y);

// The finiteness-checking sets FCS(i,j) depend only on the parities of i and
// j. Three parity columns are given by explicit clause lists; the
// (even, odd) case is the mirror image of (odd, even) across the line x = y.
// Clauses are kept as data so the transcription is auditable in one place
// and so the tests can inject single-clause mutations.
struct ClauseTable {
    std::vector<Clause> even_even;
    std::vector<Clause> odd_even;
    std::vector<Clause> odd_odd;
};

const ClauseTable& default_clause_table();

// The clause certifying membership, and whether the reflection rule mapped
// the query into the mirrored column first.
struct FcsMatch {
    std::string clause;
    bool reflected = false;
};

std::optional<FcsMatch> fcs_match(Int i, Int j, const LatticePoint& p,
                                  const ClauseTable& table = default_clause_table());

// True iff (x,y) with x,y > 0 lies in FCS(i,j); only the parities of i and j
// are consulted.
bool fcs_contains(Int i, Int j, const LatticePoint& p,
                  const ClauseTable& table = default_clause_table());

// All members of FCS(i,j) with 1 <= x <= x_max and 1 <= y <= y_max, ordered
// by (x, y). Throws std::invalid_argument when a bound is < 1.
std::vector<LatticePoint> fcs_window(Int i, Int j, Int x_max, Int y_max,
                                     const ClauseTable& table = default_clause_table());

// All positive solutions of the line equation, ascending in x (each x admits
// at most one y, so this is also lexicographic order).
std::vector<LatticePoint> line_solutions(const LineEquation& eq);

// The first (smallest x, then y) positive solution of the line lying in
// FCS(i,j); absence/presence decides the existential part of the link and
// tori criteria.
std::optional<LatticePoint> fcs_line_witness(Int i, Int j, const LineEquation& eq,
                                             const ClauseTable& table = default_clause_table());

}  // namespace embfin
