#include "commands.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <ostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "cache.hpp"
#include "tower2/error.hpp"
#include "tower2/group2.hpp"
#include "tower2/params.hpp"
#include "tower2/predict.hpp"

namespace tower2::cli {

namespace {

using nlohmann::json;

constexpr double kSpotCheckFraction = 0.05;

struct ScanOptions {
    std::int64_t max_d = 50000;
    unsigned jobs = 1;
    std::string cache;
    std::string format = "csv";
};

struct AnalyzeOptions {
    std::int64_t p1 = 0;
    std::int64_t p2 = 0;
    std::int64_t q = 0;
    bool full = false;
};

struct GroupOptions {
    int m = 2;
    int n = 1;
    int norm = -1;
    std::string variant = "a";
};

struct VerifyOptions {
    std::string fixtures = "data/fixtures";
    std::string format = "text";
    bool verbose = false;
};

std::string opt_sign(const std::optional<int>& v) { return v ? std::to_string(*v) : ""; }

const std::vector<std::string> kScanColumns{"d",     "p1",   "p2",    "q",     "gamma",   "delta",
                                            "N",     "m",    "n",     "pi",    "beta",    "I",
                                            "disc",  "order", "class", "coclass", "label"};

json scan_row_json(const ScanEntry& e) {
    const auto& v = e.inv;
    json row;
    row["d"] = e.triple.d();
    row["p1"] = e.triple.p1;
    row["p2"] = e.triple.p2;
    row["q"] = e.triple.q;
    row["gamma"] = v.gamma;
    row["delta"] = v.delta ? json(*v.delta) : json(nullptr);
    row["N"] = v.unit_norm;
    row["m"] = v.m;
    row["n"] = v.n;
    row["pi"] = v.pi_symbol;
    row["beta"] = v.beta;
    row["I"] = v.big_i ? json(*v.big_i) : json(nullptr);
    row["disc"] = v.disc_k;
    row["order"] = v.order_g;
    row["class"] = v.class_g;
    row["coclass"] = v.coclass_g;
    row["label"] = v.group_label;
    return row;
}

void write_scan_csv(std::ostream& out, const std::vector<ScanEntry>& rows) {
    for (std::size_t i = 0; i < kScanColumns.size(); ++i) out << (i ? "," : "") << kScanColumns[i];
    out << '\n';
    for (const auto& e : rows) {
        const auto& v = e.inv;
        out << e.triple.d() << ',' << e.triple.p1 << ',' << e.triple.p2 << ',' << e.triple.q << ',' << v.gamma << ','
            << opt_sign(v.delta) << ',' << v.unit_norm << ',' << v.m << ',' << v.n << ',' << v.pi_symbol << ','
            << v.beta << ',' << opt_sign(v.big_i) << ',' << v.disc_k << ',' << v.order_g << ',' << v.class_g << ','
            << v.coclass_g << ',' << v.group_label << '\n';
    }
}

/// Scans through the cache when one is given; the cache file is only touched by this thread.
std::vector<ScanEntry> run_scan(const ScanOptions& o, std::ostream& err) {
    if (o.cache.empty()) return scan(o.max_d, o.jobs);
    CachedQuadSource source{std::filesystem::path(o.cache)};
    if (auto bad = source.spot_check(kSpotCheckFraction, std::random_device{}())) {
        throw Error(ErrorKind::io, "cache record for radicand " + std::to_string(*bad) +
                                       " disagrees with recomputation; delete " + o.cache);
    }
    auto rows = scan(o.max_d, o.jobs, source);
    const std::size_t written = source.flush();
    err << "cache: " << source.loaded() - written << " loaded, " << written << " new records\n";
    return rows;
}

int cmd_scan(const ScanOptions& o, std::ostream& out, std::ostream& err) {
    const auto rows = run_scan(o, err);
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& e : rows) arr.push_back(scan_row_json(e));
        out << arr.dump(2) << '\n';
    } else {
        write_scan_csv(out, rows);
    }
    return exit_ok;
}

int cmd_stats(const ScanOptions& o, std::ostream& out, std::ostream& err) {
    const auto rows = run_scan(o, err);
    std::map<std::string, int> hist;
    for (const auto& e : rows) ++hist[e.inv.group_label];
    std::vector<std::pair<std::string, int>> sorted(hist.begin(), hist.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    const double total = static_cast<double>(rows.size());
    if (o.format == "json") {
        json j;
        j["total"] = rows.size();
        j["max_d"] = o.max_d;
        j["labels"] = json::array();
        for (const auto& [label, count] : sorted) j["labels"].push_back({{"label", label}, {"count", count}});
        out << j.dump(2) << '\n';
        return exit_ok;
    }
    out << "label,count,percent\n";
    for (const auto& [label, count] : sorted) {
        out << label << ',' << count << ',' << std::fixed << std::setprecision(1) << 100.0 * count / total << '\n';
    }
    out << "total," << rows.size() << ",100.0\n";
    return exit_ok;
}

std::string types_line(const std::array<AbelianType, 7>& types) {
    std::string s;
    for (std::size_t j = 0; j < 7; ++j) s += (j ? " " : "") + types[j].to_string();
    return s;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    const FieldTriple t = validate_triple(o.p1, o.p2, o.q);
    const FieldInvariants v = compute_invariants(t);
    const PredictionReport p = predict_all(v);
    auto row = [&](const std::string& key, const std::string& value) {
        out << std::left << std::setw(14) << key << value << '\n';
    };
    row("triple", t.to_string() + " (d = " + std::to_string(t.d()) + ")");
    row("gamma", std::to_string(v.gamma));
    row("delta", v.delta ? std::to_string(*v.delta) : "-");
    row("N", std::to_string(v.unit_norm));
    row("m, n", std::to_string(v.m) + ", " + std::to_string(v.n));
    row("pi", std::to_string(v.pi_symbol));
    row("beta", std::to_string(v.beta));
    row("I", v.big_i ? std::to_string(*v.big_i) : "-");
    row("disc(k)", std::to_string(v.disc_k));
    row("|G|", std::to_string(v.order_g));
    row("class", std::to_string(v.class_g));
    row("coclass", std::to_string(v.coclass_g));
    row("label", v.group_label);
    row("tau ideal", to_string(v.tau_ideal));
    row("G'", p.derived.to_string());
    row("h2(K3)", std::to_string(p.h2_k3));
    row("Cl2(K1..K7)", types_line(p.cl2_k));
    row("Cl2(L1..L7)", types_line(p.cl2_l));
    for (std::size_t j = 0; j < 7; ++j) {
        std::string kernels;
        for (std::size_t a = 0; a < p.kappa_k[j].size(); ++a) {
            kernels += (a ? " or " : "") + p.kappa_k[j][a].to_string(kIdealNames);
        }
        row("K" + std::to_string(j + 1), "kappa " + kernels + "  N " + p.norm_groups[j].to_string(kIdealNames));
    }
    if (!o.full) return exit_ok;
    const ConsistencyReport r = run_consistency(v);
    out << '\n' << r.transcript();
    return r.passed() ? exit_ok : exit_mismatch;
}

int cmd_group(const GroupOptions& o, std::ostream& out) {
    if (o.variant.size() != 1) throw Error(ErrorKind::precondition, "variant must be 'a' or 'b'");
    const FiniteTwoGroup g = build_presented_group(o.m, o.n, o.norm, o.variant[0]);
    const GroupFingerprint fp = fingerprint(g);
    const QuotientBasis qb = quotient_basis(g);
    const Layers layers = layer_subgroups(g, qb);
    const char* const names[3] = {"r", "s", "t"};
    auto row = [&](const std::string& key, const std::string& value) {
        out << std::left << std::setw(14) << key << value << '\n';
    };
    row("parameters", "m=" + std::to_string(o.m) + " n=" + std::to_string(o.n) + " N=" + std::to_string(o.norm) +
                          " variant=" + o.variant);
    row("order", std::to_string(fp.order));
    row("class", std::to_string(fp.nilpotency_class));
    row("coclass", std::to_string(fp.coclass));
    row("G/G'", fp.abelianization.to_string());
    row("G'", fp.derived.to_string());
    row("center", fp.center.to_string());
    row("label", group_label(o.m, o.n, o.norm));
    for (std::size_t i = 0; i < 7; ++i) {
        const Subgroup& h = layers.layer1[i];
        row("layer1 " + std::to_string(i + 1), layers.layer1_image[i].to_string(names) + "  TTT " +
                                                   abelianization(g, h).to_string() + "  TKT " +
                                                   transfer_kernel(g, qb, h).to_string(names));
    }
    for (std::size_t i = 0; i < 7; ++i) {
        const Subgroup& h = layers.layer2[i];
        row("layer2 " + std::to_string(i + 1), layers.layer2_image[i].to_string(names) + "  TTT " +
                                                   abelianization(g, h).to_string() + "  TKT " +
                                                   transfer_kernel(g, qb, h).to_string(names));
    }
    row("fingerprint", fp.to_string());
    return exit_ok;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    const std::filesystem::path dir(o.fixtures);
    const auto rows = load_fixture_dir(dir);
    const auto allow = load_allowlist(dir / "allowlist.txt");

    struct Tally {
        int rows = 0, cells = 0, match = 0, mismatch = 0, allowlisted = 0, unchecked = 0;
    };
    std::map<std::string, Tally> tables;
    Tally total;
    json details = json::array();
    for (const auto& r : rows) {
        const auto verdicts = verify_fixture(r, allow);
        Tally& t = tables[r.source];
        ++t.rows;
        ++total.rows;
        for (const auto& v : verdicts) {
            for (Tally* x : {&t, &total}) {
                ++x->cells;
                switch (v.verdict) {
                    case Verdict::match: ++x->match; break;
                    case Verdict::mismatch: ++x->mismatch; break;
                    case Verdict::allowlisted: ++x->allowlisted; break;
                    case Verdict::not_checked: ++x->unchecked; break;
                }
            }
            const bool show = o.verbose || v.verdict != Verdict::match;
            if (o.format == "json") {
                if (show) {
                    details.push_back({{"table", r.source}, {"line", r.line}, {"d", r.triple.d()},
                                       {"column", v.column}, {"printed", v.printed}, {"computed", v.computed},
                                       {"verdict", to_string(v.verdict)}});
                }
            } else if (show) {
                out << r.source << ':' << r.line << " d=" << r.triple.d() << " [" << v.column << "] printed "
                    << v.printed << ", computed " << v.computed << ": " << to_string(v.verdict) << '\n';
            }
        }
    }
    const double allow_share = total.cells ? static_cast<double>(total.allowlisted) / total.cells : 0.0;
    const bool allow_ok = allow_share <= 0.05;
    if (o.format == "json") {
        json j;
        j["tables"] = json::object();
        for (const auto& [name, t] : tables) {
            j["tables"][name] = {{"rows", t.rows},         {"cells", t.cells},
                                 {"match", t.match},       {"mismatch", t.mismatch},
                                 {"allowlisted", t.allowlisted}, {"not_checked", t.unchecked}};
        }
        j["total"] = {{"rows", total.rows}, {"cells", total.cells}, {"mismatch", total.mismatch},
                      {"allowlisted", total.allowlisted}};
        j["cells"] = details;
        out << j.dump(2) << '\n';
    } else {
        for (const auto& [name, t] : tables) {
            out << name << ": " << t.rows << " rows, " << t.cells << " cells, " << t.match << " match, " << t.mismatch
                << " mismatch, " << t.allowlisted << " allowlisted\n";
        }
        out << "total: " << total.rows << " rows, " << total.cells << " cells, " << total.mismatch << " mismatch, "
            << total.allowlisted << " allowlisted (" << std::fixed << std::setprecision(2) << 100.0 * allow_share
            << "% of cells)\n";
        if (!allow_ok) out << "allowlist exceeds 5% of cells\n";
    }
    return total.mismatch == 0 && allow_ok ? exit_ok : exit_mismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Invariants, 2-class groups and table checks for Q(sqrt(p1 p2 q), i)"};
    app.require_subcommand(1);

    ScanOptions scan_opts;
    auto add_scan_flags = [&](CLI::App* sub) {
        sub->add_option("--max-d", scan_opts.max_d, "exclusive bound on d = p1 p2 q")->capture_default_str();
        sub->add_option("--jobs", scan_opts.jobs, "worker threads")->capture_default_str()->check(CLI::PositiveNumber);
        sub->add_option("--cache", scan_opts.cache, "class-number cache file");
        sub->add_option("--format", scan_opts.format)->capture_default_str()->check(CLI::IsMember({"csv", "json"}));
    };
    CLI::App* scan_cmd = app.add_subcommand("scan", "list all admissible triples with d < max-d");
    add_scan_flags(scan_cmd);
    CLI::App* stats_cmd = app.add_subcommand("stats", "group label histogram");
    add_scan_flags(stats_cmd);

    AnalyzeOptions an;
    CLI::App* analyze_cmd = app.add_subcommand("analyze", "invariants and predictions for one triple");
    analyze_cmd->add_option("--p1", an.p1)->required();
    analyze_cmd->add_option("--p2", an.p2)->required();
    analyze_cmd->add_option("--q", an.q)->required();
    analyze_cmd->add_flag("--full", an.full, "also run the group-theoretic consistency check");

    GroupOptions gr;
    CLI::App* group_cmd = app.add_subcommand("group", "report on the presented group G(m, n, N)");
    group_cmd->add_option("--m", gr.m)->required();
    group_cmd->add_option("--n", gr.n)->required();
    group_cmd->add_option("--norm", gr.norm, "N = +1 or -1")->required()->check(CLI::IsMember({-1, 1}));
    group_cmd->add_option("--variant", gr.variant, "rho^2 variant for N = +1")->capture_default_str()
        ->check(CLI::IsMember({"a", "b"}));

    VerifyOptions vf;
    CLI::App* verify_cmd = app.add_subcommand("verify-tables", "recompute the reference fixture tables");
    verify_cmd->add_option("--fixtures", vf.fixtures)->capture_default_str();
    verify_cmd->add_option("--format", vf.format)->capture_default_str()->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_flag("--verbose", vf.verbose, "print matching cells too");

    std::vector<char*> argv;
    std::vector<std::string> copy = args;
    for (auto& a : copy) argv.push_back(a.data());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_invalid;
    }

    try {
        if (*scan_cmd) return cmd_scan(scan_opts, out, err);
        if (*stats_cmd) return cmd_stats(scan_opts, out, err);
        if (*analyze_cmd) return cmd_analyze(an, out);
        if (*group_cmd) return cmd_group(gr, out);
        if (*verify_cmd) return cmd_verify(vf, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return e.kind() == ErrorKind::theorem_inconsistency ? exit_mismatch : exit_invalid;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_invalid;
    }
    return exit_invalid;
}

}  // namespace tower2::cli
