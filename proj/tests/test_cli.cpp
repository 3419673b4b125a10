#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cache.hpp"
#include "commands.hpp"
#include "tower2/error.hpp"

using namespace tower2;
using namespace tower2::cli;

namespace {

const std::filesystem::path kFixtureDir = TOWER2_FIXTURE_DIR;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "tower2");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

int count_lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

std::filesystem::path scratch_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("tower2_cli_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST(CliScan, RowCounts) {
    const auto r = call({"scan", "--max-d", "50000"});
    EXPECT_EQ(r.code, 0);
    EXPECT_EQ(count_lines(r.out), 208);  // header plus 207 rows
    const auto empty = call({"scan", "--max-d", "100"});
    EXPECT_EQ(empty.code, 0);
    EXPECT_EQ(count_lines(empty.out), 1);
}

TEST(CliScan, JsonSmall) {
    const auto r = call({"scan", "--max-d", "500", "--format", "json"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("\"d\": 435"), std::string::npos);
    EXPECT_NE(r.out.find("\"d\": 455"), std::string::npos);
    EXPECT_NE(r.out.find("\"label\": \"64.180\""), std::string::npos);
}

TEST(CliScan, OutputIndependentOfJobs) {
    EXPECT_EQ(call({"scan", "--max-d", "20000", "--jobs", "1"}).out,
              call({"scan", "--max-d", "20000", "--jobs", "4"}).out);
}

TEST(CliScan, BadArguments) {
    EXPECT_EQ(call({"scan", "--format", "xml"}).code, 2);
    EXPECT_EQ(call({"scan", "--jobs", "0"}).code, 2);
    EXPECT_EQ(call({}).code, 2);
}

TEST(CliStats, Histogram) {
    const auto r = call({"stats", "--max-d", "50000"});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("64.180,57,"), std::string::npos);
    EXPECT_NE(r.out.find("128.439,32,"), std::string::npos);
    EXPECT_NE(r.out.find("128.986v,18,"), std::string::npos);
    EXPECT_NE(r.out.find("total,207,"), std::string::npos);
}

TEST(CliAnalyze, Examples) {
    const auto a = call({"analyze", "--p1", "5", "--p2", "13", "--q", "7"});
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("coclass       3"), std::string::npos);
    EXPECT_NE(a.out.find("|G|           64"), std::string::npos);
    EXPECT_NE(a.out.find("64.180"), std::string::npos);

    const auto b = call({"analyze", "--p1", "5", "--p2", "61", "--q", "7", "--full"});
    EXPECT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("verdict: PASS"), std::string::npos);

    const auto c = call({"analyze", "--p1", "5", "--p2", "13", "--q", "11"});
    EXPECT_EQ(c.code, 2);
    EXPECT_NE(c.err.find("legendre(p1,q)"), std::string::npos);
}

TEST(CliGroup, Reports) {
    const auto a = call({"group", "--m", "2", "--n", "1", "--norm", "-1"});
    ASSERT_EQ(a.code, 0);
    EXPECT_NE(a.out.find("order         64"), std::string::npos);
    EXPECT_NE(a.out.find("class         3"), std::string::npos);
    EXPECT_NE(a.out.find("coclass       3"), std::string::npos);

    const auto b = call({"group", "--m", "3", "--n", "1", "--norm", "1"});
    ASSERT_EQ(b.code, 0);
    EXPECT_NE(b.out.find("coclass       4"), std::string::npos);

    const auto c = call({"group", "--m", "2", "--n", "9", "--norm", "-1"});
    EXPECT_EQ(c.code, 2);
    EXPECT_NE(c.err.find("size-cap"), std::string::npos);
    EXPECT_EQ(call({"group", "--m", "2", "--n", "1", "--norm", "3"}).code, 2);
}

TEST(CliVerify, FullSetPasses) {
    const auto r = call({"verify-tables", "--fixtures", kFixtureDir.string()});
    EXPECT_EQ(r.code, 0) << r.out << r.err;
    EXPECT_NE(r.out.find("total: 85 rows"), std::string::npos);
}

TEST(CliVerify, CorruptedRowAndInjectedMismatch) {
    const auto dir = scratch_dir("verify");
    std::filesystem::copy_file(kFixtureDir / "invariants_k.txt", dir / "invariants_k.txt");

    {
        std::ofstream(dir / "broken.txt") << "columns: d = p1.p2.q; m, n\n455 = 5.13.7; 2, 1; extra\n";
        const auto r = call({"verify-tables", "--fixtures", dir.string()});
        EXPECT_EQ(r.code, 2);
        EXPECT_NE(r.err.find("fixture-format"), std::string::npos);
        std::filesystem::remove(dir / "broken.txt");
    }
    {
        std::ofstream(dir / "wrong.txt") << "columns: d = p1.p2.q; m, n\n455 = 5.13.7; 3, 1\n";
        const auto r = call({"verify-tables", "--fixtures", dir.string()});
        EXPECT_EQ(r.code, 1);
        EXPECT_NE(r.out.find("wrong.txt:2 d=455 [m, n]"), std::string::npos);
    }
    {
        std::ofstream(dir / "allowlist.txt") << "wrong.txt; 455; m, n; deliberate test entry\n";
        const auto r = call({"verify-tables", "--fixtures", dir.string()});
        // one allowlisted cell out of 162 stays under the 5% bound
        EXPECT_EQ(r.code, 0) << r.out;
        EXPECT_NE(r.out.find("allowlisted"), std::string::npos);
    }
}

TEST(CliCache, RecordRoundTrip) {
    for (std::int64_t m : {-455, -1, -3, 65, 455, 1515, 94}) {
        const auto d = quad_field_data(m);
        EXPECT_TRUE(same_record(parse_record(format_record(d)), d)) << format_record(d);
    }
    EXPECT_THROW(parse_record("radicand:5 h:1"), Error);
    EXPECT_THROW(parse_record("radicand:x disc:5 h:1 h2:1"), Error);
}

TEST(CliCache, ScanThroughCache) {
    const auto dir = scratch_dir("cache");
    const std::string cache = (dir / "cache.txt").string();
    const auto first = call({"scan", "--max-d", "10000", "--cache", cache, "--jobs", "2"});
    ASSERT_EQ(first.code, 0) << first.err;
    const auto second = call({"scan", "--max-d", "10000", "--cache", cache});
    ASSERT_EQ(second.code, 0) << second.err;
    EXPECT_EQ(first.out, second.out);
    EXPECT_EQ(first.out, call({"scan", "--max-d", "10000"}).out);
    EXPECT_NE(second.err.find(" 0 new records"), std::string::npos);

    // a single poisoned record is always in the sample, since at least one record is checked
    const auto bad_dir = scratch_dir("cache_bad");
    const std::string bad = (bad_dir / "cache.txt").string();
    std::ofstream(bad) << "radicand:-455 disc:-455 h:21 h2:1 structure:21 cl2:\n";
    const auto r = call({"scan", "--max-d", "1000", "--cache", bad});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("disagrees"), std::string::npos);
}

TEST(CliCache, LastWriterWins) {
    const auto dir = scratch_dir("lww");
    const auto path = dir / "cache.txt";
    const auto good = quad_field_data(-455);
    std::ofstream(path) << "radicand:-455 disc:-455 h:1 h2:1\n" << format_record(good) << '\n';
    CachedQuadSource src(path);
    EXPECT_EQ(src.loaded(), 1u);
    EXPECT_TRUE(same_record(src.get(-455), good));
    EXPECT_FALSE(src.spot_check(1.0, 7));
}
