#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "meterflow/line_io.hpp"
#include "meterflow/record.hpp"

namespace meterflow {

struct SortOptions {
    // Bytes of line data (plus per-line bookkeeping) held before a run is spilled.
    std::size_t memory_budget = std::size_t{256} << 20;
    // Runs merged at once; more runs trigger intermediate merge passes.
    std::size_t max_fan_in = 64;
    // Empty means spill_directory().
    std::filesystem::path spill_dir;
};

struct SortStats {
    std::uint64_t rows = 0;
    std::size_t spilled_runs = 0;
};

/// Stable external merge sort on one key field, compared bytewise. Rows with
/// equal keys keep their input order. Rows are written verbatim.
SortStats msort(const FieldSpec& key, LineReader& in, LineWriter& out, const SortOptions& options = {});

/// Column ranges for grouped summation, all 1-based and inclusive.
struct SumColumns {
    std::size_t key_from = 1;
    std::size_t key_to = 1;
    std::size_t value_from = 2;
    std::size_t value_to = 2;

    // Throws UsageError unless 1 <= key_from <= key_to < value_from <= value_to.
    void validate() const;
};

/// Collapses each run of consecutive rows with identical key fields into one
/// row: the key fields followed by the exact decimal sum of every value column.
/// Each sum keeps the largest scale seen in its column within the run. Fields
/// outside the two ranges are dropped. Returns the number of output rows.
std::uint64_t sm2(const SumColumns& columns, LineReader& in, LineWriter& out);

}  // namespace meterflow
