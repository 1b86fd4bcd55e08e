#pragma once

#include "embfin/fcs.hpp"

#include <stdexcept>
#include <string>

namespace embfin {

// Dimension parameters of a classification query: factors of dimension p and
// q embedded in the m-sphere. For knots only q and m are meaningful; for
// two-component links p holds the first component's dimension.
struct DimTriple {
    Int p = 0;
    Int q = 0;
    Int m = 0;
    friend constexpr bool operator==(const DimTriple&, const DimTriple&) = default;
    friend constexpr auto operator<=>(const DimTriple&, const DimTriple&) = default;
};

std::string to_string(const DimTriple& t);  // "(p=1,q=5,m=10)"

// A dimension hypothesis of a criterion does not hold for the given values.
// `constraint` is the violated hypothesis verbatim, e.g. "m > q+2".
class DomainError : public std::runtime_error {
  public:
    DomainError(std::string constraint, DimTriple values);
    const std::string& constraint() const { return constraint_; }
    const DimTriple& values() const { return values_; }

  private:
    std::string constraint_;
    DimTriple values_;
};

enum class Finiteness { Finite, Infinite };

std::string to_string(Finiteness f);  // "finite" / "infinite"

// The decision together with a machine-readable explanation: the fired
// condition, plus the lattice witness when the set-membership condition
// fired.
struct FinitenessVerdict {
    Finiteness value = Finiteness::Finite;
    std::string condition;                // empty when Finite
    std::optional<LatticePoint> witness;  // present only for witness conditions
    bool infinite() const { return value == Finiteness::Infinite; }
    friend bool operator==(const FinitenessVerdict&, const FinitenessVerdict&) = default;
};

// Right-hand constants of the criteria inequalities. The defaults are the
// published values; the consistency tests perturb single constants to
// confirm that transcription errors would be noticed.
struct CriteriaParams {
    Int knot_slice_rhs = 4;     // knots:      infinite needs 2m < 3q + knot_slice_rhs
    Int framed_slice_rhs = 2;   // framed (a): 2m < 2p + 3q + framed_slice_rhs
    Int framed_double_off = 1;  // framed (b): m = 2q + framed_double_off
    Int framed_even_off = 0;    // framed (c): m = p + 2q + framed_even_off
    Int link_line_off = 3;      // link line:  (m-p-2)x + (m-q-2)y = m - link_line_off
    Int tori_line_off = 3;      // tori line:  (m-p-q-2)x + (m-q-2)y = m - tori_line_off
    friend bool operator==(const CriteriaParams&, const CriteriaParams&) = default;
};

// Everything a criterion evaluation depends on besides its arguments: the
// membership clause table and the inequality constants.
struct EvalContext {
    ClauseTable table = default_clause_table();
    CriteriaParams params{};
};

const EvalContext& default_context();

// Knots S^q -> S^m. Requires m > q+2. Infinite iff 4 | q+1 and 2m < 3q+4.
FinitenessVerdict knot_infinite(Int q, Int m, const EvalContext& ctx = default_context());

// Framed knots D^p x S^q -> S^m. Requires m > q+2 and 1 <= p <= m-q.
// Infinite iff (4 | q+1 and 2m < 2p+3q+2) or (q odd and m = 2q+1) or
// (q even and m = p+2q).
FinitenessVerdict framed_knot_infinite(Int p, Int q, Int m,
                                       const EvalContext& ctx = default_context());

// Links S^p ⊔ S^q -> S^m with unknotted components. Requires p, q >= 1 and
// p, q < m-2. Infinite iff the line (m-p-2)x + (m-q-2)y = m-3 meets
// FCS(m-p, m-q); the witness is recorded in the verdict.
FinitenessVerdict link_unknotted_infinite(Int p, Int q, Int m,
                                          const EvalContext& ctx = default_context());

// Links S^n ⊔ S^q -> S^m whose second component is the standard sphere (the
// zero-classed summand). Infinite iff the unknotted-components set is
// infinite or the first-component knot set is infinite.
FinitenessVerdict link_zero_infinite(Int n, Int q, Int m,
                                     const EvalContext& ctx = default_context());

// Knotted tori S^p x S^q -> S^m. Requires p >= 1, m > 2p+q+2 and
// 2m < 2p+3q+4. Infinite iff 4 | q+1, or 4 | p+q+1, or the line
// (m-p-q-2)x + (m-q-2)y = m-3 meets FCS(m-p-q, m-q). The verdict records
// which condition fired (checked in that order).
FinitenessVerdict knotted_tori_infinite(Int p, Int q, Int m,
                                        const EvalContext& ctx = default_context());

// The same decision assembled from the component criteria: infinite iff the
// unknotted link set for (p+q, q), the knot set for p+q, or the framed-knot
// set for (p, q) is infinite. Must agree with knotted_tori_infinite on every
// in-domain triple; the constituent hypotheses are implied by the tori
// hypotheses.
FinitenessVerdict knotted_tori_infinite_via_components(Int p, Int q, Int m,
                                                       const EvalContext& ctx = default_context());

// Connected sums of two knotted tori. Only a sufficient condition is known:
// Infinite when either factor's tori set is infinite (each factor consulted
// only when its own hypotheses hold), Unknown otherwise.
enum class SumVerdict { Infinite, Unknown };

std::string to_string(SumVerdict v);  // "infinite" / "unknown"

// Requires q1 >= p1 >= p2, m > 2*p1+q1+2 and p2+q2 = p1+q1.
SumVerdict connected_sum_infinite(Int p1, Int q1, Int p2, Int q2, Int m,
                                  const EvalContext& ctx = default_context());

}  // namespace embfin
