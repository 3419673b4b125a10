#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "tower2/quadfield.hpp"

namespace tower2::cli {

/// One line per radicand, space-separated key:value pairs, e.g.
///   radicand:-455 disc:-455 h:20 h2:4 structure:2,10 cl2:1,2
///   radicand:65 disc:65 h:2 h2:2 unit_x:8 unit_y:1 denom:1 norm:-1
std::string format_record(const QuadFieldData& d);
QuadFieldData parse_record(const std::string& line);

bool same_record(const QuadFieldData& a, const QuadFieldData& b);

/// Thread-safe caching source. Misses are computed outside the lock and kept
/// separately so that a single writer can append them after the run.
class CachedQuadSource final : public QuadDataSource {
public:
    CachedQuadSource() = default;
    explicit CachedQuadSource(std::filesystem::path path);

    QuadFieldData get(std::int64_t m) override;

    /// Recomputes a random sample (at least one record when the cache is non-empty)
    /// and returns the first radicand whose stored record disagrees.
    std::optional<std::int64_t> spot_check(double fraction, std::uint64_t seed);

    /// Appends the records computed during this run; returns how many were written.
    std::size_t flush();

    std::size_t loaded() const { return loaded_.size(); }
    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return fresh_.size(); }

private:
    std::filesystem::path path_;
    std::map<std::int64_t, QuadFieldData> loaded_;
    std::map<std::int64_t, QuadFieldData> fresh_;
    std::size_t hits_ = 0;
    std::mutex mutex_;
};

}  // namespace tower2::cli
