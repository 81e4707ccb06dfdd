#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace meterflow {

inline constexpr const char* kParsedFile = "PARSED_FILE";
inline constexpr const char* kValidFile = "ALL_VALID_READINGS";
inline constexpr const char* kInvalidFile = "ALL_INVALID_READINGS";
inline constexpr const char* kAggregateFile = "MEASURED_VALUES_by_TYPE";

/// Directory layout of a pipeline run, read from a flat key=value file:
///
///   readings_dir=/data/xml
///   parsed_dir=/data/parsed
///   valid_dir=/data/valid
///   corrected_dir=/data/corrected
///   master=/data/READING_TYPE_CONVERTER
///   batch_dirs=batch-00,batch-01     (optional; "auto" = every subdirectory)
///   keep_intermediates=false         (optional)
///   tools_dir=/opt/meterflow/bin     (optional)
///
/// '#' starts a comment line.
struct PipelineConfig {
    std::filesystem::path readings_dir;
    std::filesystem::path parsed_dir;
    std::filesystem::path valid_dir;
    std::filesystem::path corrected_dir;
    std::filesystem::path master_path;
    std::vector<std::string> batch_dirs;
    bool keep_intermediates = false;
    std::filesystem::path tools_dir;  // empty: tools_directory()

    static PipelineConfig parse(std::string_view text);
    static PipelineConfig load(const std::filesystem::path& path);
    // Paths set and distinct, master loadable. Throws UsageError / DataError.
    void validate() const;
    std::filesystem::path tools() const;
    // batch_dirs with "auto" expanded against readings_dir.
    std::vector<std::string> resolved_batches() const;
};

/// Inputs and outputs of the three stages for one batch.
struct StagePaths {
    std::filesystem::path readings_dir;
    std::filesystem::path master;
    std::filesystem::path parsed_file;
    std::filesystem::path valid_file;
    std::filesystem::path invalid_file;
    std::filesystem::path aggregate_file;
};

// Outputs directly under the configured directories.
StagePaths single_run_paths(const PipelineConfig& config);
// Outputs under <dir>/<batch>/ for each configured directory.
StagePaths batch_paths(const PipelineConfig& config, const std::string& batch);

/// Every *.xml file beneath `dir`, recursively, in byte-lexicographic path order.
std::vector<std::filesystem::path> find_xml_files(const std::filesystem::path& dir);

// Each stage runs its tools as one OS pipeline and writes its outputs through a
// temporary file renamed on success, so a failed stage leaves nothing behind.

/// xmldir | self NF-1 NF | filter-tags | delr 2 MeterID | group-number | map num=1 | delf 1 | delr 3 0
void stage_parse(const StagePaths& paths, const std::filesystem::path& tools);
/// cjoin1 +ng3 key=2 master PARSED_FILE, valid rows to stdout, rejects on fd 3.
void stage_validate(const StagePaths& paths, const std::filesystem::path& tools);
/// self 3 5 | msort key=1 | sm2 1 1 2 2
void stage_aggregate(const StagePaths& paths, const std::filesystem::path& tools);

void stage_parse(const PipelineConfig& config);
void stage_validate(const PipelineConfig& config);
void stage_aggregate(const PipelineConfig& config);

struct BatchTiming {
    std::string name;
    double parse_s = 0;
    double validate_s = 0;
    double aggregate_s = 0;
    double total_s() const noexcept { return parse_s + validate_s + aggregate_s; }
};

struct RunSummary {
    std::vector<BatchTiming> batches;
    std::filesystem::path totals_file;
    double total_s() const noexcept;
};

/// Runs the three stages once (no batch_dirs) or per batch, sequentially.
/// With batches, per-batch aggregates are re-summed into
/// corrected_dir/MEASURED_VALUES_by_TYPE. PARSED_FILE is removed after
/// validation unless keep_intermediates is set. A failing batch stops the run
/// and earlier batches keep their outputs.
RunSummary run_batches(const PipelineConfig& config, std::ostream* progress = nullptr);

// Sequential wall-clock time for `batches` batches at `seconds_per_batch` each.
double projected_run_seconds(std::uint64_t batches, double seconds_per_batch);

void write_summary(const RunSummary& summary, std::ostream& out);

}  // namespace meterflow
