#include "embfin/rank.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

namespace embfin {

std::string to_string(const RankInterval& r) {
    std::string s = r.hi ? fmt::format("[{},{}]", r.lo, *r.hi) : fmt::format("[{},inf)", r.lo);
    if (r.unconstrained) s += " (unconstrained)";
    return s;
}

RankInterval interval_add(const RankInterval& a, const RankInterval& b) {
    RankInterval out;
    out.lo = a.lo + b.lo;
    if (a.hi && b.hi) out.hi = *a.hi + *b.hi;
    else out.hi = std::nullopt;
    out.unconstrained = a.unconstrained && b.unconstrained;
    return out;
}

Int sphere_rank(Int i, Int n) {
    if (i < 1 || n < 1) {
        throw std::invalid_argument(
            fmt::format("sphere_rank requires i >= 1 and n >= 1, got i={}, n={}", i, n));
    }
    if (i == n) return 1;
    if (n % 2 == 0 && i == 2 * n - 1) return 1;
    return 0;
}

RankInterval rank_of_verdict(const FinitenessVerdict& v) {
    return v.infinite() ? RankInterval::at_least(1) : RankInterval::exact(0);
}

RankInterval default_stiefel_rank(Int q, Int n, Int k, const EvalContext& ctx) {
    if (q < 1 || n < 1 || k < 1) {
        throw DomainError("q >= 1 and n >= 1 and k >= 1", {k, q, n + q});
    }
    if (k > n) throw DomainError("k <= n", {k, q, n + q});
    const Int m = n + q;
    if (!(m > q + 2)) return RankInterval::unknown();  // framed criterion silent below codimension 3
    auto framed = framed_knot_infinite(k, q, m, ctx);
    if (!framed.infinite()) return RankInterval::exact(0);
    auto component = knot_infinite(q, m, ctx);
    // Framed rank = knot rank + Stiefel rank rationally; with an infinite
    // knot summand the split of the (infinite) total is indeterminate.
    return component.infinite() ? RankInterval{0, std::nullopt, false} : RankInterval::at_least(1);
}

DerivedRankProvider::DerivedRankProvider(EvalContext ctx) : ctx_(std::move(ctx)) {}

RankInterval DerivedRankProvider::stiefel_rank(Int q, Int n, Int k) const {
    return default_stiefel_rank(q, n, k, ctx_);
}

RankInterval DerivedRankProvider::knot_rank(Int q, Int m) const {
    if (q < 1 || !(m > q + 2)) return RankInterval::unknown();
    return rank_of_verdict(knot_infinite(q, m, ctx_));
}

RankInterval DerivedRankProvider::linku_rank(Int p, Int q, Int m) const {
    if (p < 1 || q < 1 || !(p < m - 2) || !(q < m - 2)) return RankInterval::unknown();
    return rank_of_verdict(link_unknotted_infinite(p, q, m, ctx_));
}

RankInterval full_link_rank(Int n, Int q, Int m, const RankProvider& provider) {
    return interval_add(interval_add(provider.linku_rank(n, q, m), provider.knot_rank(n, m)),
                        provider.knot_rank(q, m));
}

RankInconsistency::RankInconsistency(DimTriple t, const RankInterval& interval, Finiteness verdict)
    : std::runtime_error(fmt::format("rank interval {} contradicts the {} verdict at {}",
                                     to_string(interval), to_string(verdict), to_string(t))),
      values_(t) {}

RankInterval tori_rank(Int p, Int q, Int m, const RankProvider& provider, const EvalContext& ctx) {
    auto verdict = knotted_tori_infinite(p, q, m, ctx);  // also validates the hypotheses
    RankInterval r = interval_add(full_link_rank(p + q, q, m, provider),
                                  provider.stiefel_rank(q, m - q, p));
    r.unconstrained = false;
    if (verdict.infinite()) {
        if (r.hi && *r.hi < 1) throw RankInconsistency({p, q, m}, r, verdict.value);
        r.lo = std::max<Int>(r.lo, 1);
    } else {
        if (r.lo > 0) throw RankInconsistency({p, q, m}, r, verdict.value);
        r = RankInterval::exact(0);
    }
    return r;
}

std::vector<ChainTerm> rank_chain(Int p, Int q, Int m, const RankProvider& provider,
                                  const EvalContext& ctx) {
    if (!(m > 2 * p + q + 2)) throw DomainError("m > 2p+q+2", {p, q, m});
    std::vector<ChainTerm> chain;
    for (Int k = 0; q - k >= 1; ++k) {
        const Int qk = q - k;
        const Int mk = m - k;
        RankInterval a;
        try {
            a = rank_of_verdict(link_zero_infinite(p + qk, qk, mk, ctx));
        } catch (const DomainError&) {
            a = RankInterval::unknown();
        }
        chain.push_back({fmt::format("E_0^{}(S^{} ⊔ S^{})", mk, p + qk, qk), a});

        RankInterval b;
        try {
            b = tori_rank(p, qk, mk, provider, ctx);
        } catch (const DomainError&) {
            b = RankInterval::unknown();
        }
        chain.push_back({fmt::format("E^{}(S^{} × S^{})", mk, p, qk), b});

        // The Stiefel index pair stays (m-q, p): the codimension of the
        // restricted framed knot is constant along the sequence.
        RankInterval c = interval_add(provider.knot_rank(qk, mk),
                                      provider.stiefel_rank(qk, m - q, p));
        chain.push_back({fmt::format("E^{}(D^{} × S^{})", mk, p, qk), c});
    }
    return chain;
}

std::vector<ChainViolation> chain_rank_check(const std::vector<ChainTerm>& chain) {
    std::vector<ChainViolation> violations;
    if (chain.size() < 3) return violations;
    for (std::size_t idx = 1; idx + 1 < chain.size(); ++idx) {
        const RankInterval& a = chain[idx - 1].rank;
        const RankInterval& b = chain[idx].rank;
        const RankInterval& c = chain[idx + 1].rank;
        if (a.hi && c.hi && b.lo > *a.hi + *c.hi) {
            violations.push_back({idx, chain[idx].label, b.lo, *a.hi + *c.hi});
        }
    }
    return violations;
}

TableParseError::TableParseError(const std::string& message)
    : std::runtime_error("rank table: " + message) {}

namespace {

Int parse_int(const std::string& token, int line_no, const char* what) {
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw TableParseError(fmt::format("line {}: {} must be an integer, got '{}'", line_no, what, token));
    }
    return value;
}

}  // namespace

RankTable parse_rank_table(std::istream& in) {
    RankTable table;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string kind;
        if (!(fields >> kind)) continue;  // blank or comment-only line

        int key_size = 0;
        if (kind == "stiefel" || kind == "linku") key_size = 3;
        else if (kind == "knot") key_size = 2;
        else throw TableParseError(fmt::format("line {}: unknown kind '{}'", line_no, kind));

        std::array<Int, 3> key{0, 0, 0};
        std::string token;
        for (int idx = 0; idx < key_size; ++idx) {
            if (!(fields >> token)) {
                throw TableParseError(fmt::format("line {}: expected {} key fields for '{}'",
                                                  line_no, key_size, kind));
            }
            key[static_cast<std::size_t>(idx)] = parse_int(token, line_no, "key field");
        }

        std::string lo_token, hi_token;
        if (!(fields >> lo_token >> hi_token)) {
            throw TableParseError(fmt::format("line {}: expected '<lo> <hi|inf>' rank fields", line_no));
        }
        if (std::string extra; fields >> extra) {
            throw TableParseError(fmt::format("line {}: unexpected trailing field '{}'", line_no, extra));
        }

        RankInterval rank;
        rank.lo = parse_int(lo_token, line_no, "lo");
        if (rank.lo < 0) throw TableParseError(fmt::format("line {}: lo must be >= 0", line_no));
        if (hi_token == "inf") {
            rank.hi = std::nullopt;
        } else {
            rank.hi = parse_int(hi_token, line_no, "hi");
            if (*rank.hi < rank.lo) {
                throw TableParseError(fmt::format("line {}: hi must be >= lo or 'inf'", line_no));
            }
        }

        auto insert = [&](auto& map, const auto& map_key) {
            auto [it, fresh] = map.try_emplace(map_key, rank);
            if (!fresh) {
                it->second = rank;
                table.warnings.push_back(
                    fmt::format("line {}: duplicate {} key, later entry wins", line_no, kind));
            }
        };
        if (kind == "stiefel") insert(table.stiefel, key);
        else if (kind == "linku") insert(table.linku, key);
        else insert(table.knot, std::array<Int, 2>{key[0], key[1]});
    }
    return table;
}

RankTable load_rank_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw TableParseError(fmt::format("cannot open '{}'", path));
    return parse_rank_table(in);
}

FileRankProvider::FileRankProvider(RankTable table, EvalContext ctx)
    : table_(std::move(table)), fallback_(std::move(ctx)) {}

RankInterval FileRankProvider::stiefel_rank(Int q, Int n, Int k) const {
    if (const auto it = table_.stiefel.find({q, n, k}); it != table_.stiefel.end()) return it->second;
    return fallback_.stiefel_rank(q, n, k);
}

RankInterval FileRankProvider::knot_rank(Int q, Int m) const {
    if (const auto it = table_.knot.find({q, m}); it != table_.knot.end()) return it->second;
    return fallback_.knot_rank(q, m);
}

RankInterval FileRankProvider::linku_rank(Int p, Int q, Int m) const {
    if (const auto it = table_.linku.find({p, q, m}); it != table_.linku.end()) return it->second;
    return fallback_.linku_rank(p, q, m);
}

}  // namespace embfin
