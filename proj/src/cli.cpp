#include "embfin/cli.hpp"

#include "embfin/census.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <charconv>
#include <cstdio>
#include <memory>
#include <optional>
#include <sstream>

namespace embfin {

namespace {

// Command-line problems detected after flag parsing (bad flag combinations,
// malformed ranges); rendered as usage errors with exit code 3.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Int parse_int(std::string_view text, const char* flag) {
    Int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw UsageError(fmt::format("{}: expected an integer or an A..B range, got '{}'", flag, text));
    }
    return value;
}

IntRange parse_range(const std::string& text, const char* flag) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const Int v = parse_int(text, flag);
        return {v, v};
    }
    return {parse_int(std::string_view(text).substr(0, dots), flag),
            parse_int(std::string_view(text).substr(dots + 2), flag)};
}

std::string resolve_format(const std::string& requested, const char* fallback,
                           std::initializer_list<const char*> supported) {
    const std::string format = requested.empty() ? fallback : requested;
    for (const char* candidate : supported) {
        if (format == candidate) return format;
    }
    throw UsageError(fmt::format("format '{}' is not supported by this command", format));
}

std::unique_ptr<RankProvider> make_provider(const std::string& table_path, std::ostream& err) {
    if (table_path.empty()) return std::make_unique<DerivedRankProvider>();
    RankTable table = load_rank_table(table_path);
    for (const std::string& warning : table.warnings) {
        err << "warning: rank table " << warning << "\n";
    }
    return std::make_unique<FileRankProvider>(std::move(table));
}

void render_verdict(const FinitenessVerdict& v, bool explain, const std::string& format,
                    std::ostream& out) {
    if (format == "json") {
        nlohmann::ordered_json row;
        row["verdict"] = to_string(v.value);
        if (v.infinite()) {
            row["condition"] = v.condition;
            if (v.witness) row["witness"] = {{"x", v.witness->x}, {"y", v.witness->y}};
        }
        out << row.dump(2) << "\n";
        return;
    }
    if (v.infinite() && explain) {
        out << "infinite: " << v.condition;
        if (v.witness) out << " " << to_string(*v.witness);
        out << "\n";
    } else {
        out << to_string(v.value) << "\n";
    }
}

void render_rank(const RankInterval& r, const std::string& format, std::ostream& out) {
    if (format == "json") {
        nlohmann::ordered_json row;
        row["lo"] = r.lo;
        if (r.hi) row["hi"] = *r.hi;
        else row["hi"] = "inf";
        row["unconstrained"] = r.unconstrained;
        out << row.dump(2) << "\n";
    } else {
        out << to_string(r) << "\n";
    }
}

void render_report_text(const ConsistencyReport& report, std::size_t triples, std::ostream& out) {
    for (const auto& failure : report.equivalence_failures) {
        out << fmt::format("equivalence failure at {}: direct={}, via-components={}\n",
                           to_string(failure.triple), to_string(failure.direct.value),
                           to_string(failure.via_components.value));
    }
    for (const auto& failure : report.chain_violations) {
        if (!failure.error.empty()) {
            out << fmt::format("chain failure at {}: {}\n", to_string(failure.triple), failure.error);
        }
        for (const auto& violation : failure.violations) {
            out << fmt::format("chain violation at {}: term {} {}: lo {} > {}\n",
                               to_string(failure.triple), violation.index, violation.label,
                               violation.lo, violation.neighbor_bound);
        }
    }
    for (const auto& triple : report.vacuity_failures) {
        out << fmt::format("vacuity failure at {}: framed middle condition fired in-domain\n",
                           to_string(triple));
    }
    out << fmt::format("triples checked: {}\n", triples);
    out << fmt::format("equivalence failures: {}\n", report.equivalence_failures.size());
    out << fmt::format("chain violations: {}\n", report.chain_violations.size());
    out << fmt::format("vacuity failures: {}\n", report.vacuity_failures.size());
}

void render_report_json(const ConsistencyReport& report, std::size_t triples, std::ostream& out) {
    nlohmann::ordered_json doc;
    doc["triples_checked"] = triples;
    auto& equivalence = doc["equivalence_failures"] = nlohmann::ordered_json::array();
    for (const auto& failure : report.equivalence_failures) {
        equivalence.push_back({{"p", failure.triple.p},
                               {"q", failure.triple.q},
                               {"m", failure.triple.m},
                               {"direct", to_string(failure.direct.value)},
                               {"via_components", to_string(failure.via_components.value)}});
    }
    auto& chains = doc["chain_violations"] = nlohmann::ordered_json::array();
    for (const auto& failure : report.chain_violations) {
        nlohmann::ordered_json entry;
        entry["p"] = failure.triple.p;
        entry["q"] = failure.triple.q;
        entry["m"] = failure.triple.m;
        auto& violations = entry["violations"] = nlohmann::ordered_json::array();
        for (const auto& violation : failure.violations) {
            violations.push_back({{"index", violation.index},
                                  {"label", violation.label},
                                  {"lo", violation.lo},
                                  {"neighbor_bound", violation.neighbor_bound}});
        }
        entry["error"] = failure.error;
        chains.push_back(std::move(entry));
    }
    auto& vacuity = doc["vacuity_failures"] = nlohmann::ordered_json::array();
    for (const auto& triple : report.vacuity_failures) {
        vacuity.push_back({{"p", triple.p}, {"q", triple.q}, {"m", triple.m}});
    }
    out << doc.dump(2) << "\n";
}

GridBounds bounds_from(const std::string& p_text, const std::string& q_text,
                       const std::string& m_text) {
    GridBounds bounds;
    bounds.p_range = parse_range(p_text, "--p");
    bounds.q_range = parse_range(q_text, "--q");
    if (!m_text.empty()) bounds.m_range = parse_range(m_text, "--m");
    return bounds;
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out;
    std::ostringstream err;
    int exit_code = 0;

    CLI::App app{"Finiteness and rank bounds for embedding classification sets", "embfin"};
    app.require_subcommand(1);

    // ---- verdict subcommands -------------------------------------------
    struct {
        Int q = 0, m = 0;
        bool explain = false;
        std::string format;
    } knot;
    auto* knot_cmd = app.add_subcommand("knot", "Decide finiteness of the knot set of S^q in S^m");
    knot_cmd->add_option("--q", knot.q, "sphere dimension q")->required();
    knot_cmd->add_option("--m", knot.m, "ambient dimension m")->required();
    knot_cmd->add_flag("--explain", knot.explain, "print the fired condition");
    knot_cmd->add_option("--format", knot.format)->check(CLI::IsMember({"text", "json"}));
    knot_cmd->callback([&] {
        const auto format = resolve_format(knot.format, "text", {"text", "json"});
        render_verdict(knot_infinite(knot.q, knot.m), knot.explain, format, out);
    });

    struct {
        Int p = 0, q = 0, m = 0;
        bool explain = false;
        std::string format;
    } framed;
    auto* framed_cmd =
        app.add_subcommand("framed", "Decide finiteness of the framed-knot set of D^p x S^q in S^m");
    framed_cmd->add_option("--p", framed.p, "framing disc dimension p")->required();
    framed_cmd->add_option("--q", framed.q, "sphere dimension q")->required();
    framed_cmd->add_option("--m", framed.m, "ambient dimension m")->required();
    framed_cmd->add_flag("--explain", framed.explain, "print the fired condition");
    framed_cmd->add_option("--format", framed.format)->check(CLI::IsMember({"text", "json"}));
    framed_cmd->callback([&] {
        const auto format = resolve_format(framed.format, "text", {"text", "json"});
        render_verdict(framed_knot_infinite(framed.p, framed.q, framed.m), framed.explain, format, out);
    });

    struct {
        std::optional<Int> p, n;
        Int q = 0, m = 0;
        bool explain = false;
        std::string format;
    } link;
    auto* link_cmd = app.add_subcommand(
        "link", "Decide finiteness of a two-component link set in S^m: --p selects the "
                "unknotted-components set for S^p ⊔ S^q, --n the zero-classed set for S^n ⊔ S^q");
    link_cmd->add_option("--p", link.p, "first component dimension (unknotted-components set)");
    link_cmd->add_option("--n", link.n, "first component dimension (zero-classed set)");
    link_cmd->add_option("--q", link.q, "second component dimension")->required();
    link_cmd->add_option("--m", link.m, "ambient dimension m")->required();
    link_cmd->add_flag("--explain", link.explain, "print the fired condition");
    link_cmd->add_option("--format", link.format)->check(CLI::IsMember({"text", "json"}));
    link_cmd->callback([&] {
        const auto format = resolve_format(link.format, "text", {"text", "json"});
        if (link.p.has_value() == link.n.has_value()) {
            throw UsageError("link needs exactly one of --p (unknotted) or --n (zero-classed)");
        }
        const auto verdict = link.p ? link_unknotted_infinite(*link.p, link.q, link.m)
                                    : link_zero_infinite(*link.n, link.q, link.m);
        render_verdict(verdict, link.explain, format, out);
    });

    struct {
        Int p = 0, q = 0, m = 0;
        bool explain = false;
        std::string format;
    } tori;
    auto* tori_cmd =
        app.add_subcommand("tori", "Decide finiteness of the knotted-tori set of S^p x S^q in S^m");
    tori_cmd->add_option("--p", tori.p, "first factor dimension p")->required();
    tori_cmd->add_option("--q", tori.q, "second factor dimension q")->required();
    tori_cmd->add_option("--m", tori.m, "ambient dimension m")->required();
    tori_cmd->add_flag("--explain", tori.explain, "print the fired condition");
    tori_cmd->add_option("--format", tori.format)->check(CLI::IsMember({"text", "json"}));
    tori_cmd->callback([&] {
        const auto format = resolve_format(tori.format, "text", {"text", "json"});
        render_verdict(knotted_tori_infinite(tori.p, tori.q, tori.m), tori.explain, format, out);
    });

    // ---- fcs ------------------------------------------------------------
    struct {
        Int i = 0, j = 0;
        std::optional<Int> x, y, xmax, ymax, a, b, c;
        std::string format;
    } fcs;
    auto* fcs_cmd = app.add_subcommand(
        "fcs", "Query the finiteness-checking set FCS(i,j): membership (--x/--y), window "
               "enumeration (--xmax/--ymax), or line witness (--a/--b/--c)");
    fcs_cmd->add_option("--i", fcs.i, "first index (parity only)")->required();
    fcs_cmd->add_option("--j", fcs.j, "second index (parity only)")->required();
    fcs_cmd->add_option("--x", fcs.x, "point x coordinate");
    fcs_cmd->add_option("--y", fcs.y, "point y coordinate");
    fcs_cmd->add_option("--xmax", fcs.xmax, "window bound for x");
    fcs_cmd->add_option("--ymax", fcs.ymax, "window bound for y");
    fcs_cmd->add_option("--a", fcs.a, "line coefficient of x");
    fcs_cmd->add_option("--b", fcs.b, "line coefficient of y");
    fcs_cmd->add_option("--c", fcs.c, "line right-hand side");
    fcs_cmd->add_option("--format", fcs.format)->check(CLI::IsMember({"text", "csv", "json"}));
    fcs_cmd->callback([&] {
        const bool member = fcs.x || fcs.y;
        const bool window = fcs.xmax || fcs.ymax;
        const bool line = fcs.a || fcs.b || fcs.c;
        if (static_cast<int>(member) + static_cast<int>(window) + static_cast<int>(line) != 1) {
            throw UsageError("fcs needs exactly one of: --x/--y, --xmax/--ymax, --a/--b/--c");
        }
        if (member) {
            if (!(fcs.x && fcs.y)) throw UsageError("fcs membership needs both --x and --y");
            const auto format = resolve_format(fcs.format, "text", {"text", "json"});
            const auto match = fcs_match(fcs.i, fcs.j, {*fcs.x, *fcs.y});
            if (format == "json") {
                nlohmann::ordered_json row;
                row["member"] = match.has_value();
                if (match) {
                    row["clause"] = match->clause;
                    row["reflected"] = match->reflected;
                }
                out << row.dump(2) << "\n";
            } else if (match) {
                out << "member (clause: " << match->clause
                    << (match->reflected ? ", via reflection" : "") << ")\n";
            } else {
                out << "non-member\n";
            }
        } else if (window) {
            if (!(fcs.xmax && fcs.ymax)) throw UsageError("fcs window needs both --xmax and --ymax");
            const auto format = resolve_format(fcs.format, "csv", {"csv", "json"});
            const auto members = fcs_window(fcs.i, fcs.j, *fcs.xmax, *fcs.ymax);
            if (format == "json") {
                nlohmann::ordered_json rows = nlohmann::ordered_json::array();
                for (const auto& point : members) rows.push_back({{"x", point.x}, {"y", point.y}});
                out << rows.dump(2) << "\n";
            } else {
                out << "x,y\n";
                for (const auto& point : members) out << point.x << "," << point.y << "\n";
            }
        } else {
            if (!(fcs.a && fcs.b && fcs.c)) throw UsageError("fcs line needs --a, --b and --c");
            const auto format = resolve_format(fcs.format, "text", {"text", "json"});
            const auto witness = fcs_line_witness(fcs.i, fcs.j, LineEquation(*fcs.a, *fcs.b, *fcs.c));
            if (format == "json") {
                nlohmann::ordered_json row;
                if (witness) row["witness"] = {{"x", witness->x}, {"y", witness->y}};
                else row["witness"] = nullptr;
                out << row.dump(2) << "\n";
            } else if (witness) {
                out << "witness " << to_string(*witness) << "\n";
            } else {
                out << "no witness\n";
            }
        }
    });

    // ---- rank -----------------------------------------------------------
    auto* rank_cmd = app.add_subcommand("rank", "Bound rational ranks of classification sets");
    rank_cmd->require_subcommand(1);

    struct {
        Int p = 0, q = 0, m = 0;
        std::string table, format;
    } rank_tori;
    auto* rank_tori_cmd =
        rank_cmd->add_subcommand("tori", "Rank interval for the knotted-tori set of S^p x S^q in S^m");
    rank_tori_cmd->add_option("--p", rank_tori.p, "first factor dimension p")->required();
    rank_tori_cmd->add_option("--q", rank_tori.q, "second factor dimension q")->required();
    rank_tori_cmd->add_option("--m", rank_tori.m, "ambient dimension m")->required();
    rank_tori_cmd->add_option("--table", rank_tori.table, "rank table file");
    rank_tori_cmd->add_option("--format", rank_tori.format)->check(CLI::IsMember({"text", "json"}));
    rank_tori_cmd->callback([&] {
        const auto format = resolve_format(rank_tori.format, "text", {"text", "json"});
        const auto provider = make_provider(rank_tori.table, err);
        render_rank(tori_rank(rank_tori.p, rank_tori.q, rank_tori.m, *provider), format, out);
    });

    struct {
        Int q = 0, n = 0, k = 0;
        std::string table, format;
    } rank_stiefel;
    auto* rank_stiefel_cmd =
        rank_cmd->add_subcommand("stiefel", "Rank interval for pi_q of the Stiefel manifold V_{n,k}");
    rank_stiefel_cmd->add_option("--q", rank_stiefel.q, "homotopy degree q")->required();
    rank_stiefel_cmd->add_option("--n", rank_stiefel.n, "frame ambient dimension n")->required();
    rank_stiefel_cmd->add_option("--k", rank_stiefel.k, "frame count k")->required();
    rank_stiefel_cmd->add_option("--table", rank_stiefel.table, "rank table file");
    rank_stiefel_cmd->add_option("--format", rank_stiefel.format)->check(CLI::IsMember({"text", "json"}));
    rank_stiefel_cmd->callback([&] {
        const auto format = resolve_format(rank_stiefel.format, "text", {"text", "json"});
        const auto provider = make_provider(rank_stiefel.table, err);
        render_rank(provider->stiefel_rank(rank_stiefel.q, rank_stiefel.n, rank_stiefel.k), format, out);
    });

    struct {
        Int n = 0, q = 0, m = 0;
        std::string table, format;
    } rank_link;
    auto* rank_link_cmd =
        rank_cmd->add_subcommand("link", "Rank interval for the full link set of S^n ⊔ S^q in S^m");
    rank_link_cmd->add_option("--n", rank_link.n, "first component dimension n")->required();
    rank_link_cmd->add_option("--q", rank_link.q, "second component dimension q")->required();
    rank_link_cmd->add_option("--m", rank_link.m, "ambient dimension m")->required();
    rank_link_cmd->add_option("--table", rank_link.table, "rank table file");
    rank_link_cmd->add_option("--format", rank_link.format)->check(CLI::IsMember({"text", "json"}));
    rank_link_cmd->callback([&] {
        const auto format = resolve_format(rank_link.format, "text", {"text", "json"});
        const auto provider = make_provider(rank_link.table, err);
        render_rank(full_link_rank(rank_link.n, rank_link.q, rank_link.m, *provider), format, out);
    });

    // ---- census ----------------------------------------------------------
    struct {
        std::string p, q, m, table, format;
    } census;
    auto* census_cmd = app.add_subcommand(
        "census", "Sweep a dimension grid and report all verdicts and ranks per triple");
    census_cmd->add_option("--p", census.p, "p value or range A..B")->required();
    census_cmd->add_option("--q", census.q, "q value or range A..B")->required();
    census_cmd->add_option("--m", census.m, "m value or range A..B (default: automatic strip)");
    census_cmd->add_option("--table", census.table, "rank table file");
    census_cmd->add_option("--format", census.format)->check(CLI::IsMember({"csv", "json"}));
    census_cmd->callback([&] {
        const auto format = resolve_format(census.format, "csv", {"csv", "json"});
        const auto provider = make_provider(census.table, err);
        const auto records = run_census(bounds_from(census.p, census.q, census.m), *provider);
        if (format == "json") out << census_to_json(records) << "\n";
        else out << census_to_csv(records);
    });

    // ---- check ------------------------------------------------------------
    struct {
        std::string p, q, m, table, format;
    } check;
    auto* check_cmd = app.add_subcommand(
        "check", "Run the cross-validation suite over a grid; exit 1 when any failure is found");
    check_cmd->add_option("--p", check.p, "p value or range A..B")->required();
    check_cmd->add_option("--q", check.q, "q value or range A..B")->required();
    check_cmd->add_option("--m", check.m, "m value or range A..B (default: automatic strip)");
    check_cmd->add_option("--table", check.table, "rank table file");
    check_cmd->add_option("--format", check.format)->check(CLI::IsMember({"text", "json"}));
    check_cmd->callback([&] {
        const auto format = resolve_format(check.format, "text", {"text", "json"});
        const auto provider = make_provider(check.table, err);
        const auto bounds = bounds_from(check.p, check.q, check.m);
        const auto triples = enumerate_domain(bounds).size();
        const auto report = consistency_report(bounds, *provider);
        if (format == "json") render_report_json(report, triples, out);
        else render_report_text(report, triples, out);
        if (!report.clean()) exit_code = 1;
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        exit_code = 3;
    } catch (const DomainError& e) {
        err << e.what() << "\n";
        exit_code = 2;
    } catch (const TableParseError& e) {
        err << e.what() << "\n";
        exit_code = 4;
    } catch (const RankInconsistency& e) {
        err << "rank inconsistency (unsound rank table?): " << e.what() << "\n";
        exit_code = 4;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        exit_code = 3;
    } catch (const std::invalid_argument& e) {
        err << "domain error: " << e.what() << "\n";
        exit_code = 2;
    }

    return {exit_code, out.str(), err.str()};
}

int run_cli_main(int argc, char** argv) {
    const CliResult result = run_cli(std::vector<std::string>(argv + 1, argv + argc));
    std::fputs(result.out.c_str(), stdout);
    std::fputs(result.err.c_str(), stderr);
    return result.exit_code;
}

}  // namespace embfin
