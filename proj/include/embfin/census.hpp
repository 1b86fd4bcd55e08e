#pragma once

#include "embfin/rank.hpp"

namespace embfin {

struct IntRange {
    Int lo = 1;
    Int hi = 1;
    friend constexpr bool operator==(const IntRange&, const IntRange&) = default;
};

// Sweep bounds. Without an explicit m range, m is enumerated automatically
// over the strip 2p+q+2 < m and 2m < 2p+3q+4; an explicit range is
// intersected with that strip, so every emitted triple is in-domain either
// way.
struct GridBounds {
    IntRange p_range{1, 1};
    IntRange q_range{1, 1};
    std::optional<IntRange> m_range;  // nullopt = automatic
};

// All in-domain triples within the bounds, lexicographic in (p, q, m).
// Throws std::invalid_argument on empty ranges or lower bounds < 1.
std::vector<DimTriple> enumerate_domain(const GridBounds& bounds);

// One row of the sweep: the tori verdict with its explanation, the four
// component verdicts (each evaluated in its own, automatically satisfied,
// domain), and the tori rank interval.
struct CensusRecord {
    Int p = 0;
    Int q = 0;
    Int m = 0;
    Finiteness tori = Finiteness::Finite;
    Finiteness knot_pq = Finiteness::Finite;  // knot verdict for S^{p+q}
    Finiteness knot_q = Finiteness::Finite;   // knot verdict for S^q
    Finiteness framed = Finiteness::Finite;   // framed-knot verdict for (p, q)
    Finiteness linku = Finiteness::Finite;    // unknotted-link verdict for (p+q, q)
    RankInterval rank;                        // tori rank
    std::optional<LatticePoint> witness;      // tori lattice witness, if any
    std::string condition;                    // fired tori condition, empty when finite
    friend bool operator==(const CensusRecord&, const CensusRecord&) = default;
};

std::vector<CensusRecord> run_census(const GridBounds& bounds, const RankProvider& provider,
                                     const EvalContext& ctx = default_context());

// CSV with header
//   p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition
// Witness fields are empty when absent; rank_hi is "inf" when unbounded.
std::string census_to_csv(const std::vector<CensusRecord>& records);

// JSON array of objects with the same field names ("[]" for an empty grid);
// absent witnesses are null.
std::string census_to_json(const std::vector<CensusRecord>& records);

// Inverse parsers; throw std::invalid_argument on malformed input.
std::vector<CensusRecord> census_from_csv(const std::string& text);
std::vector<CensusRecord> census_from_json(const std::string& text);

struct EquivalenceFailure {
    DimTriple triple;
    FinitenessVerdict direct;          // knotted_tori_infinite
    FinitenessVerdict via_components;  // knotted_tori_infinite_via_components
};

struct ChainFailure {
    DimTriple triple;
    std::vector<ChainViolation> violations;  // empty when `error` is set
    std::string error;                       // rank-inconsistency message, if the chain threw
};

// Cross-validation results over a grid. All three lists are expected to be
// empty; entries are bug reports carrying their witness triples, returned as
// data rather than thrown.
struct ConsistencyReport {
    std::vector<EquivalenceFailure> equivalence_failures;
    std::vector<ChainFailure> chain_violations;
    std::vector<DimTriple> vacuity_failures;  // framed middle condition fired in-domain
    bool clean() const {
        return equivalence_failures.empty() && chain_violations.empty() && vacuity_failures.empty();
    }
};

ConsistencyReport consistency_report(const GridBounds& bounds, const RankProvider& provider,
                                     const EvalContext& ctx = default_context());

}  // namespace embfin
