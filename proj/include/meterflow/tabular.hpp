#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "meterflow/line_io.hpp"
#include "meterflow/record.hpp"

namespace meterflow {

// Row operators over whitespace-separated records. Output fields are joined by
// single spaces. Blank input lines carry no fields and are dropped by the
// field-positional operators (select, delete_fields, group_number, map_pivot).

/// Keeps the fields named by `specs`, in spec order. DataError when a spec
/// does not resolve on some row.
void select_fields(std::span<const FieldSpec> specs, LineReader& in, LineWriter& out);

/// Drops the fields named by `specs` and keeps the rest in their original order.
void delete_fields(std::span<const FieldSpec> specs, LineReader& in, LineWriter& out);

/// Drops rows whose field `spec` equals `literal` byte for byte. Rows too short
/// to resolve the spec are kept verbatim.
void delete_rows(const FieldSpec& spec, std::string_view literal, LineReader& in, LineWriter& out);

const std::set<std::string, std::less<>>& default_reading_tags();

/// Keeps rows whose first field is in `allowed`, verbatim.
void filter_tags(const std::set<std::string, std::less<>>& allowed, LineReader& in, LineWriter& out);

/// Numbers reading groups in (label, value) rows coming out of the XML flattener.
///
/// The most recent "name" row is re-emitted in front of every "timeStamp" row,
/// and every emitted row is prefixed with a counter that increments on each
/// emitted "name" row, re-emitted copies included. A "timeStamp" before any "name" is a DataError.
void group_number(LineReader& in, LineWriter& out);

struct PivotOptions {
    std::size_t key_fields = 1;
    // In-memory limit before the input is spilled to a temporary file.
    std::size_t memory_limit = std::size_t{256} << 20;
};

/// Pivots (key, label, value...) cells into one row per consecutive key run:
///
///   key value(label_1) value(label_2) ...
///
/// Labels are the union over the whole stream in byte-lexicographic order, a
/// missing cell is filled with "0", and no header is written. A label repeated
/// within one key run is a DataError. Only one key field is supported.
void map_pivot(LineReader& in, LineWriter& out, const PivotOptions& options = {});

}  // namespace meterflow
