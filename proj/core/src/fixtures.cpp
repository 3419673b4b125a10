#include <algorithm>
#include <fstream>
#include <sstream>

#include "tower2/error.hpp"
#include "tower2/predict.hpp"
#include "tower2/quadfield.hpp"

namespace tower2 {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(trim(cur));
    if (!s.empty() && s.back() == sep) out.push_back("");
    return out;
}

[[noreturn]] void format_error(const std::string& where, const std::string& what) {
    throw Error(ErrorKind::fixture_format, where + ": " + what);
}

std::int64_t parse_int(const std::string& text, const std::string& where) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(text, &used);
    } catch (const std::exception&) {
        format_error(where, "expected an integer, got '" + text + "'");
    }
    if (used != text.size()) format_error(where, "expected an integer, got '" + text + "'");
    return v;
}

/// "435 = 5.29.3"
FieldTriple parse_triple_cell(const std::string& cell, const std::string& where) {
    const auto eq = cell.find('=');
    if (eq == std::string::npos) format_error(where, "triple cell needs 'd = p1.p2.q'");
    const std::int64_t d = parse_int(trim(cell.substr(0, eq)), where);
    const auto parts = split(trim(cell.substr(eq + 1)), '.');
    if (parts.size() != 3) format_error(where, "triple needs three dot-separated primes");
    FieldTriple t{parse_int(parts[0], where), parse_int(parts[1], where), parse_int(parts[2], where)};
    if (t.d() != d) format_error(where, "d does not equal p1 p2 q");
    return t;
}

std::string where_of(const TableFixtureRow& row) { return row.source + ":" + std::to_string(row.line); }

}  // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::match: return "match";
        case Verdict::mismatch: return "MISMATCH";
        case Verdict::not_checked: return "not-checked";
        case Verdict::allowlisted: return "allowlisted";
    }
    return "?";
}

std::vector<std::uint64_t> parse_tuple(const std::string& text) {
    const std::string t = trim(text);
    if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
        throw Error(ErrorKind::fixture_format, "tuple must be parenthesized: '" + text + "'");
    }
    std::vector<std::uint64_t> out;
    for (const std::string& part : split(t.substr(1, t.size() - 2), ',')) {
        const std::int64_t v = parse_int(part, "tuple '" + text + "'");
        if (v < 1) throw Error(ErrorKind::fixture_format, "tuple entries must be positive: '" + text + "'");
        out.push_back(static_cast<std::uint64_t>(v));
    }
    if (out.empty()) throw Error(ErrorKind::fixture_format, "empty tuple");
    return out;
}

AbelianType two_part_of_tuple(const std::vector<std::uint64_t>& factors) {
    std::vector<std::uint64_t> sorted = factors;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i + 1] % sorted[i] != 0) {
            throw Error(ErrorKind::fixture_format, "not an invariant-factor list: " + std::to_string(sorted[i]) +
                                                       " does not divide " + std::to_string(sorted[i + 1]));
        }
    }
    return two_part(sorted);
}

std::vector<TableFixtureRow> load_fixture_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::io, "cannot open fixture file " + path.string());
    const std::string source = path.filename().string();
    std::vector<TableFixtureRow> rows;
    std::vector<std::pair<std::string, std::string>> conditions;
    std::vector<std::string> headers;
    std::string text;
    int lineno = 0;
    while (std::getline(in, text)) {
        ++lineno;
        const std::string where = source + ":" + std::to_string(lineno);
        const std::string t = trim(text);
        if (t.empty() || t[0] == '#') continue;
        if (t[0] == '@') {
            const auto eq = t.find('=');
            if (eq == std::string::npos) format_error(where, "condition needs key=value");
            conditions.emplace_back(trim(t.substr(1, eq - 1)), trim(t.substr(eq + 1)));
            continue;
        }
        if (t.rfind("columns:", 0) == 0) {
            headers = split(trim(t.substr(8)), ';');
            continue;
        }
        if (headers.empty()) format_error(where, "row before the columns line");
        TableFixtureRow row;
        row.source = source;
        row.line = lineno;
        row.conditions = conditions;
        row.headers = headers;
        row.cells = split(t, ';');
        if (row.cells.size() != headers.size()) {
            format_error(where, "expected " + std::to_string(headers.size()) + " cells, found " +
                                    std::to_string(row.cells.size()));
        }
        row.triple = parse_triple_cell(row.cells[0], where);
        for (std::size_t c = 1; c < headers.size(); ++c) {
            if (headers[c].rfind("Cl(", 0) == 0) two_part_of_tuple(parse_tuple(row.cells[c]));
        }
        rows.push_back(std::move(row));
    }
    if (headers.empty()) throw Error(ErrorKind::fixture_format, source + ": no columns line");
    return rows;
}

std::vector<TableFixtureRow> load_fixture_dir(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::io, "fixture directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        if (e.path().extension() == ".txt" && e.path().filename() != "allowlist.txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<TableFixtureRow> rows;
    for (const auto& f : files) {
        auto part = load_fixture_file(f);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

std::vector<AllowlistEntry> load_allowlist(const std::filesystem::path& path) {
    std::vector<AllowlistEntry> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string text;
    int lineno = 0;
    while (std::getline(in, text)) {
        ++lineno;
        const std::string t = trim(text);
        if (t.empty() || t[0] == '#') continue;
        const std::string where = path.filename().string() + ":" + std::to_string(lineno);
        const auto parts = split(t, ';');
        if (parts.size() != 4 || parts[3].empty()) format_error(where, "expected 'file; d; column; justification'");
        out.push_back({parts[0], parse_int(parts[1], where), parts[2], parts[3]});
    }
    return out;
}

std::vector<ColumnVerdict> verify_fixture(const TableFixtureRow& row, const std::vector<AllowlistEntry>& allowlist) {
    const std::string where = where_of(row);
    if (auto why = triple_violation(row.triple.p1, row.triple.p2, row.triple.q)) {
        format_error(where, "invalid triple: " + *why);
    }
    const FieldInvariants inv = compute_invariants(row.triple);
    const PredictionReport pred = predict_all(inv);

    std::vector<ColumnVerdict> out;
    auto add = [&](const std::string& column, const std::string& printed, const std::string& computed, bool ok) {
        ColumnVerdict v{column, printed, computed, ok ? Verdict::match : Verdict::mismatch};
        if (!ok) {
            for (const AllowlistEntry& a : allowlist) {
                if (a.source == row.source && a.d == row.triple.d() && a.column == column) v.verdict = Verdict::allowlisted;
            }
        }
        out.push_back(v);
    };
    auto sign = [](int x) { return std::to_string(x); };

    for (const auto& [key, value] : row.conditions) {
        const int want = static_cast<int>(parse_int(value, where));
        int got = 0;
        if (key == "gamma") {
            got = inv.gamma;
        } else if (key == "pi") {
            got = inv.pi_symbol;
        } else {
            format_error(where, "unknown table condition '" + key + "'");
        }
        add("table condition " + key, value, sign(got), got == want);
    }

    for (std::size_t c = 0; c < row.headers.size(); ++c) {
        const std::string& h = row.headers[c];
        const std::string& cell = row.cells[c];
        if (c == 0) {
            add(h, cell, std::to_string(row.triple.d()), true);
        } else if (h == "gamma") {
            add(h, cell, sign(inv.gamma), parse_int(cell, where) == inv.gamma);
        } else if (h == "delta") {
            const std::string computed = inv.delta ? sign(*inv.delta) : "";
            add(h, cell, computed, cell == computed);
        } else if (h == "N") {
            add(h, cell, sign(inv.unit_norm), parse_int(cell, where) == inv.unit_norm);
        } else if (h == "m, n") {
            const std::string computed = std::to_string(inv.m) + ", " + std::to_string(inv.n);
            const auto parts = split(cell, ',');
            const bool ok = parts.size() == 2 && parse_int(parts[0], where) == inv.m && parse_int(parts[1], where) == inv.n;
            add(h, cell, computed, ok);
        } else if (h == "disc(k)") {
            add(h, cell, std::to_string(inv.disc_k), parse_int(cell, where) == inv.disc_k);
        } else if (h == "cc(G)") {
            add(h, cell, sign(inv.coclass_g), parse_int(cell, where) == inv.coclass_g);
        } else if (h == "Cl(kbar0)") {
            const QuadFieldData data = quad_field_data(-row.triple.d());
            std::vector<std::uint64_t> printed = parse_tuple(cell), computed = data.structure.value_or(
                                                                                std::vector<std::uint64_t>{});
            std::sort(printed.begin(), printed.end());
            std::sort(computed.begin(), computed.end());
            std::ostringstream os;
            os << '(';
            for (std::size_t i = computed.size(); i-- > 0;) os << computed[i] << (i ? ", " : "");
            os << ')';
            add(h, cell, os.str(), printed == computed);
        } else if (h == "Cl(k0)") {
            // real quadratic: the order and the 2-part order are recomputed
            const QuadFieldData data = quad_field_data(row.triple.d());
            const auto printed = parse_tuple(cell);
            std::uint64_t prod = 1;
            for (auto f : printed) prod *= f;
            const auto t2 = two_part_of_tuple(printed);
            add(h, cell, "h=" + std::to_string(data.h) + " h2=" + std::to_string(data.h2),
                prod == data.h && (std::uint64_t{1} << t2.order_log2()) == data.h2);
        } else if (h == "Cl(k)") {
            const AbelianType printed = two_part_of_tuple(parse_tuple(cell));
            const AbelianType expected = AbelianType::from_orders({2, 2, 2});
            add(h + " 2-part", printed.to_string(), expected.to_string(), printed == expected);
        } else if (h.size() == 6 && h.rfind("Cl(", 0) == 0 && (h[3] == 'K' || h[3] == 'L') && h[5] == ')') {
            const std::size_t j = static_cast<std::size_t>(h[4] - '1');
            if (j > 6) format_error(where, "bad column '" + h + "'");
            const AbelianType printed = two_part_of_tuple(parse_tuple(cell));
            if (h[3] == 'K') {
                add(h + " 2-part", printed.to_string(), pred.cl2_k[j].to_string(), printed == pred.cl2_k[j]);
            } else {
                std::string computed = pred.cl2_l[j].to_string();
                if (pred.cl2_l_table[j] != pred.cl2_l[j]) {
                    computed += " [table reading " + pred.cl2_l_table[j].to_string() + "]";
                }
                add(h + " 2-part", printed.to_string(), computed, printed == pred.cl2_l[j]);
            }
        } else {
            format_error(where, "unknown column '" + h + "'");
        }
    }
    return out;
}

}  // namespace tower2
