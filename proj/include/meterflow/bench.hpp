#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meterflow/decimal.hpp"

namespace meterflow {

/// Benchmark grid, read from a flat key=value file:
///
///   file_counts=100,1000,10000,100000
///   repetitions=40
///   warmups=3
///   corpus_seed=42
///   invalid_ratio=0.0
///   work_dir=/tmp/meterflow-bench
///   tools_dir=...          (optional)
struct BenchConfig {
    std::vector<std::uint64_t> file_counts{100, 1000, 10000, 100000};
    std::uint32_t repetitions = 40;
    std::uint32_t warmups = 3;
    std::uint64_t corpus_seed = 42;
    double invalid_ratio = 0.0;
    std::filesystem::path work_dir;   // empty: a fresh directory under the system temp dir
    std::filesystem::path tools_dir;  // empty: tools_directory()

    static BenchConfig parse(std::string_view text);
    static BenchConfig load(const std::filesystem::path& path);
    // repetitions >= 1, file_counts non-empty and strictly increasing.
    void validate() const;
};

inline constexpr const char* kStageParse = "parse";
inline constexpr const char* kStageValidate = "validate";
inline constexpr const char* kStageAggregate = "aggregate";
inline constexpr const char* kStageCopy = "copy-baseline";

struct TimingStats {
    double mean = 0, stddev = 0, min = 0, max = 0;
    friend bool operator==(const TimingStats&, const TimingStats&) = default;
};

// Population standard deviation, so a single sample reports 0.
TimingStats summarize(std::span<const double> samples);

struct StageRow {
    std::uint64_t file_count = 0;
    std::string stage;
    TimingStats time;
    std::uint64_t bytes_in = 0;
    std::uint64_t bytes_out = 0;

    friend bool operator==(const StageRow&, const StageRow&) = default;
};

/// Per-(file_count, stage) timing table. CSV columns:
/// file_count,stage,mean_s,std_s,min_s,max_s,bytes_in,bytes_out
struct BatchReport {
    std::vector<StageRow> rows;
    bool aborted = false;
    std::string abort_reason;

    static constexpr const char* kHeader = "file_count,stage,mean_s,std_s,min_s,max_s,bytes_in,bytes_out";

    std::string to_csv() const;
    static BatchReport parse_csv(std::string_view text);
    const StageRow* find(std::uint64_t file_count, std::string_view stage) const;
};

std::string csv_row(const StageRow& row);

/// Steady-state benchmark: per file count, generate one corpus, run `warmups`
/// untimed rounds, then time every stage and a `cp -r` of the corpus
/// `repetitions` times. Rows are appended to `csv_path` as each file count
/// completes; a failure appends "# ABORTED: <reason>" and rethrows.
BatchReport run_bench(const BenchConfig& config, const std::filesystem::path& csv_path,
                      std::ostream* progress = nullptr);

/// 1 - parsed bytes / total *.xml bytes under `xml_dir`, clamped to [0, 1].
/// UsageError when the directory holds no XML.
double size_reduction(const std::filesystem::path& xml_dir, const std::filesystem::path& parsed_file);

std::uint64_t xml_bytes_under(const std::filesystem::path& dir);

/// Cumulative storage cost after `months` months when `monthly_gb` new GB are
/// stored every month at `price_per_gb_month`: D * alpha * m * (m + 1) / 2,
/// evaluated exactly.
Decimal storage_cost(const Decimal& monthly_gb, const Decimal& price_per_gb_month, std::uint32_t months);

// C(1), ..., C(months).
std::vector<Decimal> storage_cost_table(const Decimal& monthly_gb, const Decimal& price_per_gb_month,
                                        std::uint32_t months);

/// Bytes produced per day by a fleet of meters. Throws UsageError on overflow.
std::uint64_t daily_volume_bytes(std::uint64_t meters, std::uint64_t readings_per_day, std::uint64_t bytes_per_reading);

// Decimal SI units with at most one fractional digit: "27 GB", "38.9 TB".
std::string format_si_bytes(std::uint64_t bytes);

}  // namespace meterflow
