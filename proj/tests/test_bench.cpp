#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "meterflow/bench.hpp"
#include "meterflow/errors.hpp"
#include "meterflow/generator.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace meterflow;
using testing::ScratchDir;
namespace fs = std::filesystem;

namespace {

Decimal dec(const char* s) { return Decimal::parse(s); }

}  // namespace

TEST_CASE("storage cost examples") {
    CHECK(storage_cost(dec("810"), dec("0.01"), 12).to_string() == "631.80");
    CHECK(storage_cost(dec("49"), dec("0.01"), 12).to_string() == "38.22");
    CHECK(storage_cost(dec("1"), dec("1"), 1).to_string() == "1");
    CHECK_THROWS_AS(storage_cost(dec("1"), dec("1"), 0), UsageError);
    const auto table = storage_cost_table(dec("810"), dec("0.01"), 12);
    REQUIRE(table.size() == 12);
    CHECK(table.front().to_string() == "8.10");
    CHECK(table.back().to_string() == "631.80");
}

TEST_CASE("property: monthly increment identity and linearity") {
    const auto d = dec("810"), a = dec("0.01");
    for (std::uint32_t m = 2; m <= 120; ++m) {
        const auto step = storage_cost(d, a, m) - storage_cost(d, a, m - 1);
        CHECK(compare_value(step, d * a * Decimal::from_integer(m)) == std::strong_ordering::equal);
    }
    std::mt19937_64 rng(8);
    for (int i = 0; i < 200; ++i) {
        const auto d1 = Decimal::parse(std::to_string(rng() % 5000) + "." + std::to_string(rng() % 10));
        const auto d2 = Decimal::parse(std::to_string(rng() % 5000));
        const auto price = Decimal::parse("0.0" + std::to_string(1 + rng() % 9));
        const auto m = static_cast<std::uint32_t>(1 + rng() % 120);
        CHECK(compare_value(storage_cost(d1 + d2, price, m), storage_cost(d1, price, m) + storage_cost(d2, price, m)) ==
              std::strong_ordering::equal);
        // Closed form against a big-integer oracle.
        const auto expect = oracle::format_scaled(
            {oracle::parse_scaled(d1.to_string()).units * oracle::parse_scaled(price.to_string()).units * m * (m + 1) / 2,
             d1.scale() + price.scale()});
        CHECK(compare_value(storage_cost(d1, price, m), Decimal::parse(expect)) == std::strong_ordering::equal);
    }
}

TEST_CASE("daily volume projection") {
    CHECK(daily_volume_bytes(27'000'000, 1, 1000) == 27'000'000'000ULL);
    CHECK(format_si_bytes(daily_volume_bytes(27'000'000, 1, 1000)) == "27 GB");
    CHECK(format_si_bytes(daily_volume_bytes(27'000'000, 1440, 1000)) == "38.9 TB");
    CHECK(format_si_bytes(999) == "999 B");
    CHECK(format_si_bytes(1500) == "1.5 kB");
    CHECK(format_si_bytes(0) == "0 B");
    CHECK_THROWS_AS(daily_volume_bytes(1ULL << 40, 1ULL << 20, 1ULL << 10), UsageError);
}

TEST_CASE("timing statistics") {
    const double one[] = {2.5};
    const auto s1 = summarize(one);
    CHECK(s1.mean == 2.5);
    CHECK(s1.stddev == 0.0);
    const double many[] = {1, 2, 3, 4};
    const auto s = summarize(many);
    CHECK(s.mean == doctest::Approx(2.5));
    CHECK(s.stddev == doctest::Approx(std::sqrt(1.25)));
    CHECK(s.min == 1);
    CHECK(s.max == 4);
}

TEST_CASE("CSV report round trip") {
    BatchReport rep;
    rep.rows.push_back({100, kStageParse, {0.1234567890123, 0.01, 0.1, 0.2}, 97500, 24300});
    rep.rows.push_back({100, kStageCopy, {1.0 / 3.0, 0, 1.0 / 3.0, 1.0 / 3.0}, 1, 2});
    const auto text = rep.to_csv();
    CHECK(text.rfind(std::string(BatchReport::kHeader) + "\n", 0) == 0);
    const auto back = BatchReport::parse_csv(text);
    CHECK(back.rows == rep.rows);
    CHECK_FALSE(back.aborted);
    REQUIRE(back.find(100, kStageCopy));
    CHECK(back.find(100, kStageCopy)->bytes_out == 2);
    CHECK(back.find(10, kStageCopy) == nullptr);

    rep.aborted = true;
    rep.abort_reason = "disk full";
    const auto aborted = BatchReport::parse_csv(rep.to_csv());
    CHECK(aborted.aborted);
    CHECK(aborted.abort_reason == "disk full");
    CHECK_THROWS_AS(BatchReport::parse_csv("bad,header\n"), DataError);
}

TEST_CASE("bench config") {
    const auto c = BenchConfig::parse("file_counts=10,20\nrepetitions=2\nwarmups=0\ncorpus_seed=9\ninvalid_ratio=0.5\n");
    CHECK(c.file_counts == std::vector<std::uint64_t>{10, 20});
    CHECK(c.repetitions == 2);
    CHECK(c.warmups == 0);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(BenchConfig::parse("file_counts=20,10\n").validate(), UsageError);
    CHECK_THROWS_AS(BenchConfig::parse("repetitions=0\n").validate(), UsageError);
    CHECK_THROWS_AS(BenchConfig::parse("speed=fast\n"), UsageError);
    CHECK(BenchConfig{}.file_counts == std::vector<std::uint64_t>{100, 1000, 10000, 100000});
}

TEST_CASE("size reduction") {
    ScratchDir dir("reduction");
    testing::write_text(dir / "xml" / "a.xml", std::string(1000, 'x'));
    testing::write_text(dir / "parsed", std::string(250, 'y'));
    CHECK(size_reduction(dir / "xml", dir / "parsed") == doctest::Approx(0.75));
    testing::write_text(dir / "big", std::string(2000, 'y'));
    CHECK(size_reduction(dir / "xml", dir / "big") == 0.0);
    fs::create_directories(dir / "none");
    CHECK_THROWS_AS(size_reduction(dir / "none", dir / "parsed"), UsageError);
    CHECK_THROWS_AS(size_reduction(dir / "xml", dir / "missing"), UsageError);
}

TEST_CASE("small benchmark run writes a complete report") {
    ScratchDir dir("bench");
    BenchConfig c;
    c.file_counts = {5, 20};
    c.repetitions = 2;
    c.warmups = 1;
    c.work_dir = dir / "work";
    const auto report = run_bench(c, dir / "report.csv");
    CHECK(report.rows.size() == 8);
    const auto back = BatchReport::parse_csv(testing::slurp(dir / "report.csv"));
    CHECK(back.rows == report.rows);
    for (const char* stage : {kStageParse, kStageValidate, kStageAggregate, kStageCopy}) {
        const auto* row = back.find(20, stage);
        REQUIRE(row);
        CHECK(row->time.min <= row->time.mean);
        CHECK(row->time.mean <= row->time.max);
        CHECK(row->time.min > 0);
    }
    CHECK(back.find(20, kStageParse)->bytes_in > back.find(5, kStageParse)->bytes_in);
}

TEST_CASE("a failing benchmark leaves an abort-marked report") {
    ScratchDir dir("bench-fail");
    BenchConfig c;
    c.file_counts = {3};
    c.repetitions = 1;
    c.warmups = 0;
    c.work_dir = dir / "work";
    c.tools_dir = dir / "no-tools";
    CHECK_THROWS(run_bench(c, dir / "report.csv"));
    const auto back = BatchReport::parse_csv(testing::slurp(dir / "report.csv"));
    CHECK(back.aborted);
    CHECK(back.rows.empty());
}
