#pragma once

#include "embfin/criteria.hpp"

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <vector>

namespace embfin {

// A two-sided bound on the rank of a finitely generated abelian group:
// [0,0] means provably finite, lo >= 1 provably infinite, absent hi no upper
// bound. `unconstrained` marks intervals carrying no knowledge at all
// (out-of-range queries), as opposed to a genuine [0,inf) indeterminacy.
struct RankInterval {
    Int lo = 0;
    std::optional<Int> hi = 0;
    bool unconstrained = false;

    static RankInterval exact(Int v) { return {v, v, false}; }
    static RankInterval at_least(Int v) { return {v, std::nullopt, false}; }
    static RankInterval unknown() { return {0, std::nullopt, true}; }

    friend bool operator==(const RankInterval&, const RankInterval&) = default;
};

std::string to_string(const RankInterval& r);  // "[0,0]", "[1,inf)", ...

// Rank of a direct sum: bounds add, an absent upper bound absorbs. The
// result is unconstrained only when both summands are.
RankInterval interval_add(const RankInterval& a, const RankInterval& b);

// Rational rank of pi_i(S^n): 1 when i = n, or when n is even and i = 2n-1;
// 0 otherwise. Requires i, n >= 1.
Int sphere_rank(Int i, Int n);

// Finite -> [0,0]; Infinite -> [1,inf): a finitely generated abelian group
// is infinite exactly when its rank is positive.
RankInterval rank_of_verdict(const FinitenessVerdict& v);

// Source of the three externally known rank families.
class RankProvider {
  public:
    virtual ~RankProvider() = default;
    virtual RankInterval stiefel_rank(Int q, Int n, Int k) const = 0;  // rank pi_q(V_{n,k})
    virtual RankInterval knot_rank(Int q, Int m) const = 0;            // rank of the knot set of S^q in S^m
    virtual RankInterval linku_rank(Int p, Int q, Int m) const = 0;    // rank of the unknotted-components link set
};

// Bounds rank pi_q(V_{n,k}) through the rational splitting of the
// framed-knot set at m = n+q into the knot summand and the Stiefel summand:
// framed finite -> [0,0]; framed infinite with finite knot summand ->
// [1,inf); both infinite -> indeterminate [0,inf).
// Structurally invalid inputs (q, n, k < 1 or k > n) raise DomainError;
// inputs outside the framed criterion's range (n <= 2) answer
// unconstrained [0,inf).
RankInterval default_stiefel_rank(Int q, Int n, Int k, const EvalContext& ctx = default_context());

// Provider deriving every interval from the finiteness criteria alone.
// Queries outside a criterion's hypotheses answer unconstrained [0,inf)
// (except the structurally invalid Stiefel inputs above).
class DerivedRankProvider final : public RankProvider {
  public:
    explicit DerivedRankProvider(EvalContext ctx = default_context());
    RankInterval stiefel_rank(Int q, Int n, Int k) const override;
    RankInterval knot_rank(Int q, Int m) const override;
    RankInterval linku_rank(Int p, Int q, Int m) const override;

  private:
    EvalContext ctx_;
};

// Rank of the full link set for S^n ⊔ S^q in S^m: the set splits rationally
// into the unknotted-components summand and the two knot summands.
RankInterval full_link_rank(Int n, Int q, Int m, const RankProvider& provider);

// Tightening a rank interval against a finiteness verdict found the two
// sources in contradiction. Cannot happen with the derived provider; an
// unsound external rank table can trigger it.
class RankInconsistency : public std::runtime_error {
  public:
    RankInconsistency(DimTriple t, const RankInterval& interval, Finiteness verdict);
    const DimTriple& values() const { return values_; }

  private:
    DimTriple values_;
};

// Rank of the knotted-tori set for S^p x S^q in S^m: the sum of the full
// link rank for (p+q, q) and the Stiefel summand rank pi_q(V_{m-q,p}),
// tightened against the tori finiteness verdict (Infinite raises lo to 1,
// Finite pins [0,0]). Requires the tori hypotheses; throws RankInconsistency
// when the tightening would empty the interval.
RankInterval tori_rank(Int p, Int q, Int m, const RankProvider& provider,
                       const EvalContext& ctx = default_context());

// One term of the exact-sequence bookkeeping.
struct ChainTerm {
    std::string label;
    RankInterval rank;
    friend bool operator==(const ChainTerm&, const ChainTerm&) = default;
};

// For an exact A -> B -> C, rank B <= rank A + rank C. A violation records
// an interior term whose lower bound exceeds what its neighbors allow.
struct ChainViolation {
    std::size_t index = 0;  // position of the offending interior term
    std::string label;
    Int lo = 0;              // its lower bound
    Int neighbor_bound = 0;  // hi(A) + hi(C)
    friend bool operator==(const ChainViolation&, const ChainViolation&) = default;
};

// Rank bookkeeping for the restriction exact sequence of the tori
// classification: for k = 0, 1, ... while q-k >= 1 it emits the term triple
//   E_0^{m-k}(S^{p+q-k} ⊔ S^{q-k}),  E^{m-k}(S^p x S^{q-k}),  E^{m-k}(D^p x S^{q-k})
// with ranks from the zero-classed link verdict, the tori rank formula, and
// knot + Stiefel summands respectively. Requires m > 2p+q+2; terms whose
// rank queries fall outside their hypotheses are kept with an unconstrained
// interval rather than dropped.
std::vector<ChainTerm> rank_chain(Int p, Int q, Int m, const RankProvider& provider,
                                  const EvalContext& ctx = default_context());

// All exactness violations in the chain (empty = consistent). Chains shorter
// than three terms have no interior terms and no violations.
std::vector<ChainViolation> chain_rank_check(const std::vector<ChainTerm>& chain);

// External rank tables. Plain text, whitespace separated, '#' starts a
// comment:
//   stiefel <q> <n> <k> <lo> <hi|inf>
//   knot <q> <m> <lo> <hi|inf>
//   linku <p> <q> <m> <lo> <hi|inf>
// Unknown kinds are a parse error; duplicate keys: the last entry wins and a
// warning is recorded.
class TableParseError : public std::runtime_error {
  public:
    explicit TableParseError(const std::string& message);
};

struct RankTable {
    std::map<std::array<Int, 3>, RankInterval> stiefel;  // key (q, n, k)
    std::map<std::array<Int, 2>, RankInterval> knot;     // key (q, m)
    std::map<std::array<Int, 3>, RankInterval> linku;    // key (p, q, m)
    std::vector<std::string> warnings;                   // duplicate-key notices
};

RankTable parse_rank_table(std::istream& in);          // throws TableParseError
RankTable load_rank_table(const std::string& path);    // throws TableParseError

// Answers from the table where present, from the derived provider otherwise.
class FileRankProvider final : public RankProvider {
  public:
    explicit FileRankProvider(RankTable table, EvalContext ctx = default_context());
    RankInterval stiefel_rank(Int q, Int n, Int k) const override;
    RankInterval knot_rank(Int q, Int m) const override;
    RankInterval linku_rank(Int p, Int q, Int m) const override;
    const std::vector<std::string>& warnings() const { return table_.warnings; }

  private:
    RankTable table_;
    DerivedRankProvider fallback_;
};

}  // namespace embfin
