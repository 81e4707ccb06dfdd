#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace meterflow {

/// One text line split into whitespace-separated fields.
///
/// Fields are the maximal runs of characters other than ASCII space and tab.
/// A blank line has zero fields.
struct Record {
    std::string raw_line;
    std::vector<std::string> fields;

    std::size_t size() const noexcept { return fields.size(); }
    bool empty() const noexcept { return fields.empty(); }
    // Fields joined by single spaces.
    std::string normalized() const;
};

inline bool is_field_separator(char c) noexcept { return c == ' ' || c == '\t'; }

Record split_record(std::string_view line);

// Hot-path split: views into `line`, reusing `out`'s storage.
void split_fields(std::string_view line, std::vector<std::string_view>& out);

/// Field selector: an absolute 1-based position or an offset from the last
/// field (NF, NF-1, ...).
class FieldSpec {
public:
    enum class Kind { absolute, end_relative };

    static FieldSpec absolute(std::size_t position);
    static FieldSpec end_relative(std::size_t offset);
    // Accepts "3", "NF", "NF-2". Throws UsageError otherwise.
    static FieldSpec parse(std::string_view text);

    Kind kind() const noexcept { return kind_; }
    std::size_t index() const noexcept { return index_; }

    // 1-based position within a record of `field_count` fields, if in range.
    std::optional<std::size_t> try_resolve(std::size_t field_count) const noexcept;
    // As try_resolve, but throws DataError naming `line_number` when out of range.
    std::size_t resolve(std::size_t field_count, std::uint64_t line_number) const;

    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    FieldSpec(Kind kind, std::size_t index) : kind_(kind), index_(index) {}

    Kind kind_;
    std::size_t index_;
};

std::size_t resolve_field(const FieldSpec& spec, const Record& record, std::uint64_t line_number = 0);

}  // namespace meterflow
