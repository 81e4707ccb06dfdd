#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "meterflow/decimal.hpp"

namespace meterflow {

struct ReadingType {
    std::string code;  // dotted reading-type identifier
    std::string name;  // TYPE01, TYPE02, ...
};

// The three valid reading types, in master-file order.
const std::vector<ReadingType>& reading_types();
// Master file contents: "<code> <name>" per line.
std::string master_file_text();

struct GeneratorConfig {
    std::uint64_t file_count = 1000;
    std::uint64_t meters = 1000;
    std::uint32_t readings_per_file = 3;
    double invalid_ratio = 0.0;
    std::uint64_t seed = 1;
    std::string date = "2021-01-01";  // YYYY-MM-DD
    // 0 writes every file directly under the output directory; otherwise files
    // are split contiguously into batch-00, batch-01, ... subdirectories.
    std::uint32_t batches = 0;

    // Throws UsageError on out-of-range values.
    void validate() const;
};

/// Exact per-type sums of the valid readings plus the number of planted
/// invalid readings.
struct GroundTruth {
    std::map<std::string, Decimal> sums;
    std::uint64_t invalid = 0;
    std::uint64_t readings = 0;
    std::uint64_t files = 0;
    std::uint64_t xml_bytes = 0;

    // Aggregate-file rows ("TYPE01 123.4567") followed by "INVALID <n>".
    std::string sidecar_text() const;
    static GroundTruth parse_sidecar(std::string_view text);
};

inline constexpr const char* kSidecarName = "GROUND_TRUTH";

struct MeterReading {
    std::string value;
    std::string ref;
};

// One meter readings document laid out like the smart-meter sample file.
std::string render_readings_document(std::string_view meter_id, std::string_view timestamp,
                                     const std::vector<MeterReading>& readings);

/// Writes a deterministic corpus under `out_dir` plus the GROUND_TRUTH sidecar.
///
/// Randomness comes from std::mt19937_64 (fully specified by the standard) with
/// hand-rolled range mapping, so a seed reproduces the same bytes everywhere.
/// Files are named READINGS-<meterID>_<YYYYMMDDhhmmss>.xml.
GroundTruth generate_corpus(const GeneratorConfig& config, const std::filesystem::path& out_dir);

}  // namespace meterflow
