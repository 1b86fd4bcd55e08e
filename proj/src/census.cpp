#include "embfin/census.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <sstream>
#include <utility>

namespace embfin {

namespace {

void validate_range(const IntRange& range, const char* name) {
    if (range.lo < 1 || range.hi < range.lo) {
        throw std::invalid_argument(
            fmt::format("{} range must be nonempty with lower bound >= 1, got {}..{}",
                        name, range.lo, range.hi));
    }
}

}  // namespace

std::vector<DimTriple> enumerate_domain(const GridBounds& bounds) {
    validate_range(bounds.p_range, "p");
    validate_range(bounds.q_range, "q");
    if (bounds.m_range) validate_range(*bounds.m_range, "m");
    std::vector<DimTriple> triples;
    for (Int p = bounds.p_range.lo; p <= bounds.p_range.hi; ++p) {
        for (Int q = bounds.q_range.lo; q <= bounds.q_range.hi; ++q) {
            Int m_lo = 2 * p + q + 3;              // smallest m with m > 2p+q+2
            Int m_hi = (2 * p + 3 * q + 3) / 2;    // largest m with 2m < 2p+3q+4
            if (bounds.m_range) {
                m_lo = std::max(m_lo, bounds.m_range->lo);
                m_hi = std::min(m_hi, bounds.m_range->hi);
            }
            for (Int m = m_lo; m <= m_hi; ++m) triples.push_back({p, q, m});
        }
    }
    return triples;
}

std::vector<CensusRecord> run_census(const GridBounds& bounds, const RankProvider& provider,
                                     const EvalContext& ctx) {
    std::vector<CensusRecord> records;
    for (const DimTriple& t : enumerate_domain(bounds)) {
        auto tori = knotted_tori_infinite(t.p, t.q, t.m, ctx);
        CensusRecord r;
        r.p = t.p;
        r.q = t.q;
        r.m = t.m;
        r.tori = tori.value;
        r.knot_pq = knot_infinite(t.p + t.q, t.m, ctx).value;
        r.knot_q = knot_infinite(t.q, t.m, ctx).value;
        r.framed = framed_knot_infinite(t.p, t.q, t.m, ctx).value;
        r.linku = link_unknotted_infinite(t.p + t.q, t.q, t.m, ctx).value;
        r.rank = tori_rank(t.p, t.q, t.m, provider, ctx);
        r.witness = tori.witness;
        r.condition = tori.condition;
        records.push_back(std::move(r));
    }
    return records;
}

std::string census_to_csv(const std::vector<CensusRecord>& records) {
    std::string out =
        "p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition\n";
    for (const CensusRecord& r : records) {
        out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.p, r.q, r.m,
                           to_string(r.tori), to_string(r.knot_pq), to_string(r.knot_q),
                           to_string(r.framed), to_string(r.linku), r.rank.lo,
                           r.rank.hi ? std::to_string(*r.rank.hi) : "inf",
                           r.witness ? std::to_string(r.witness->x) : "",
                           r.witness ? std::to_string(r.witness->y) : "", r.condition);
    }
    return out;
}

std::string census_to_json(const std::vector<CensusRecord>& records) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const CensusRecord& r : records) {
        nlohmann::ordered_json row;
        row["p"] = r.p;
        row["q"] = r.q;
        row["m"] = r.m;
        row["tori"] = to_string(r.tori);
        row["knot_pq"] = to_string(r.knot_pq);
        row["knot_q"] = to_string(r.knot_q);
        row["framed"] = to_string(r.framed);
        row["linku"] = to_string(r.linku);
        row["rank_lo"] = r.rank.lo;
        if (r.rank.hi) row["rank_hi"] = *r.rank.hi;
        else row["rank_hi"] = "inf";
        if (r.witness) {
            row["witness_x"] = r.witness->x;
            row["witness_y"] = r.witness->y;
        } else {
            row["witness_x"] = nullptr;
            row["witness_y"] = nullptr;
        }
        row["condition"] = r.condition;
        rows.push_back(std::move(row));
    }
    return rows.dump(2);
}

namespace {

Finiteness finiteness_from(const std::string& text) {
    if (text == "finite") return Finiteness::Finite;
    if (text == "infinite") return Finiteness::Infinite;
    throw std::invalid_argument(fmt::format("expected 'finite' or 'infinite', got '{}'", text));
}

Int int_from(const std::string& token, const char* what) {
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw std::invalid_argument(fmt::format("{} must be an integer, got '{}'", what, token));
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string::size_type start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

constexpr const char* kCsvHeader =
    "p,q,m,tori,knot_pq,knot_q,framed,linku,rank_lo,rank_hi,witness_x,witness_y,condition";

}  // namespace

std::vector<CensusRecord> census_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::invalid_argument("census csv: missing or unexpected header line");
    }
    std::vector<CensusRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != 13) {
            throw std::invalid_argument(
                fmt::format("census csv: expected 13 fields, got {} in '{}'", fields.size(), line));
        }
        CensusRecord r;
        r.p = int_from(fields[0], "p");
        r.q = int_from(fields[1], "q");
        r.m = int_from(fields[2], "m");
        r.tori = finiteness_from(fields[3]);
        r.knot_pq = finiteness_from(fields[4]);
        r.knot_q = finiteness_from(fields[5]);
        r.framed = finiteness_from(fields[6]);
        r.linku = finiteness_from(fields[7]);
        r.rank.lo = int_from(fields[8], "rank_lo");
        r.rank.hi = fields[9] == "inf" ? std::optional<Int>{} : std::optional<Int>{int_from(fields[9], "rank_hi")};
        if (fields[10].empty() != fields[11].empty()) {
            throw std::invalid_argument("census csv: witness_x and witness_y must be both present or both empty");
        }
        if (!fields[10].empty()) {
            r.witness = LatticePoint{int_from(fields[10], "witness_x"), int_from(fields[11], "witness_y")};
        }
        r.condition = fields[12];
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<CensusRecord> census_from_json(const std::string& text) {
    nlohmann::json rows;
    try {
        rows = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(fmt::format("census json: {}", e.what()));
    }
    if (!rows.is_array()) throw std::invalid_argument("census json: expected an array");
    std::vector<CensusRecord> records;
    try {
        for (const auto& row : rows) {
            CensusRecord r;
            r.p = row.at("p").get<Int>();
            r.q = row.at("q").get<Int>();
            r.m = row.at("m").get<Int>();
            r.tori = finiteness_from(row.at("tori").get<std::string>());
            r.knot_pq = finiteness_from(row.at("knot_pq").get<std::string>());
            r.knot_q = finiteness_from(row.at("knot_q").get<std::string>());
            r.framed = finiteness_from(row.at("framed").get<std::string>());
            r.linku = finiteness_from(row.at("linku").get<std::string>());
            r.rank.lo = row.at("rank_lo").get<Int>();
            const auto& hi = row.at("rank_hi");
            if (hi.is_string()) {
                if (hi.get<std::string>() != "inf") {
                    throw std::invalid_argument("census json: rank_hi must be an integer or \"inf\"");
                }
                r.rank.hi = std::nullopt;
            } else {
                r.rank.hi = hi.get<Int>();
            }
            const auto& wx = row.at("witness_x");
            const auto& wy = row.at("witness_y");
            if (wx.is_null() != wy.is_null()) {
                throw std::invalid_argument("census json: witness coordinates must be both null or both set");
            }
            if (!wx.is_null()) r.witness = LatticePoint{wx.get<Int>(), wy.get<Int>()};
            r.condition = row.at("condition").get<std::string>();
            records.push_back(std::move(r));
        }
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(fmt::format("census json: {}", e.what()));
    }
    return records;
}

ConsistencyReport consistency_report(const GridBounds& bounds, const RankProvider& provider,
                                     const EvalContext& ctx) {
    ConsistencyReport report;
    for (const DimTriple& t : enumerate_domain(bounds)) {
        auto direct = knotted_tori_infinite(t.p, t.q, t.m, ctx);
        auto via = knotted_tori_infinite_via_components(t.p, t.q, t.m, ctx);
        if (direct.value != via.value) {
            report.equivalence_failures.push_back({t, direct, via});
        }
        // The framed middle condition ("2 | q+1 and m = 2q+1") is excluded by
        // the tori hypotheses; it firing in-domain means a criterion constant
        // is off.
        if (t.q % 2 != 0 && t.m == 2 * t.q + ctx.params.framed_double_off) {
            report.vacuity_failures.push_back(t);
        }
        try {
            auto violations = chain_rank_check(rank_chain(t.p, t.q, t.m, provider, ctx));
            if (!violations.empty()) {
                report.chain_violations.push_back({t, std::move(violations), ""});
            }
        } catch (const RankInconsistency& e) {
            report.chain_violations.push_back({t, {}, e.what()});
        }
    }
    return report;
}

}  // namespace embfin
