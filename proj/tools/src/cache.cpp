#include "cache.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <sstream>

#include "tower2/error.hpp"

namespace tower2::cli {

namespace {

std::string join(const std::vector<std::uint64_t>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

std::vector<std::uint64_t> split_numbers(const std::string& s) {
    std::vector<std::uint64_t> out;
    std::istringstream is(s);
    std::string part;
    while (std::getline(is, part, ',')) out.push_back(std::stoull(part));
    return out;
}

}  // namespace

std::string format_record(const QuadFieldData& d) {
    std::ostringstream os;
    os << "radicand:" << d.radicand << " disc:" << d.disc << " h:" << d.h << " h2:" << d.h2;
    if (d.structure) os << " structure:" << join(*d.structure);
    if (d.cl2) {
        std::vector<std::uint64_t> e(d.cl2->exponents().begin(), d.cl2->exponents().end());
        os << " cl2:" << join(e);
    }
    if (d.unit) {
        os << " unit_x:" << d.unit->x_num.get_str() << " unit_y:" << d.unit->y_num.get_str()
           << " denom:" << d.unit->denom << " norm:" << d.unit->norm;
    }
    return os.str();
}

QuadFieldData parse_record(const std::string& line) {
    std::map<std::string, std::string> kv;
    std::istringstream is(line);
    std::string token;
    while (is >> token) {
        const auto colon = token.find(':');
        if (colon == std::string::npos) throw Error(ErrorKind::io, "cache token without ':': " + token);
        kv[token.substr(0, colon)] = token.substr(colon + 1);
    }
    auto need = [&](const char* key) -> const std::string& {
        const auto it = kv.find(key);
        if (it == kv.end()) throw Error(ErrorKind::io, std::string("cache record missing '") + key + "': " + line);
        return it->second;
    };
    QuadFieldData d;
    try {
        d.radicand = std::stoll(need("radicand"));
        d.disc = std::stoll(need("disc"));
        d.h = std::stoull(need("h"));
        d.h2 = std::stoull(need("h2"));
        if (kv.count("structure")) d.structure = split_numbers(kv["structure"]);
        if (kv.count("cl2")) {
            std::vector<int> e;
            for (auto x : split_numbers(kv["cl2"])) e.push_back(static_cast<int>(x));
            d.cl2 = AbelianType::from_exponents(e);
        }
        if (kv.count("unit_x")) {
            FundamentalUnit u;
            u.x_num = BigInt(need("unit_x"));
            u.y_num = BigInt(need("unit_y"));
            u.denom = std::stoi(need("denom"));
            u.norm = std::stoi(need("norm"));
            u.radicand = d.radicand;
            d.unit = u;
        }
    } catch (const std::logic_error&) {
        throw Error(ErrorKind::io, "malformed cache record: " + line);
    }
    return d;
}

bool same_record(const QuadFieldData& a, const QuadFieldData& b) {
    return format_record(a) == format_record(b);
}

CachedQuadSource::CachedQuadSource(std::filesystem::path path) : path_(std::move(path)) {
    std::ifstream in(path_);
    if (!in) return;  // a missing cache file is created on flush
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        QuadFieldData d = parse_record(line);
        loaded_[d.radicand] = std::move(d);  // last writer wins
    }
}

QuadFieldData CachedQuadSource::get(std::int64_t m) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = loaded_.find(m); it != loaded_.end()) {
            ++hits_;
            return it->second;
        }
        if (auto it = fresh_.find(m); it != fresh_.end()) return it->second;
    }
    QuadFieldData d = quad_field_data(m);
    std::lock_guard lock(mutex_);
    fresh_.emplace(m, d);
    return d;
}

std::optional<std::int64_t> CachedQuadSource::spot_check(double fraction, std::uint64_t seed) {
    std::vector<std::int64_t> keys;
    for (const auto& [m, d] : loaded_) keys.push_back(m);
    if (keys.empty()) return std::nullopt;
    const std::size_t want = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(keys.size())));
    std::vector<std::int64_t> sample;
    std::sample(keys.begin(), keys.end(), std::back_inserter(sample), want, std::mt19937_64(seed));
    for (std::int64_t m : sample) {
        if (!same_record(loaded_.at(m), quad_field_data(m))) return m;
    }
    return std::nullopt;
}

std::size_t CachedQuadSource::flush() {
    if (path_.empty() || fresh_.empty()) return 0;
    std::ofstream out(path_, std::ios::app);
    if (!out) throw Error(ErrorKind::io, "cannot write cache file " + path_.string());
    for (const auto& [m, d] : fresh_) out << format_record(d) << '\n';
    if (!out) throw Error(ErrorKind::io, "write failed for cache file " + path_.string());
    const std::size_t n = fresh_.size();
    for (auto& [m, d] : fresh_) loaded_[m] = std::move(d);
    fresh_.clear();
    return n;
}

}  // namespace tower2::cli
