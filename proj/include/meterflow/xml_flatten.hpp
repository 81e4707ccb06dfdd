#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "meterflow/line_io.hpp"

namespace meterflow {

/// Absolute element path such as "/MeterReadings/MeterReading".
class ElementPath {
public:
    // Throws UsageError unless `text` is "/" followed by '/'-separated XML names.
    static ElementPath parse(std::string_view text);

    const std::vector<std::string>& components() const noexcept { return components_; }
    std::string to_string() const;

private:
    std::vector<std::string> components_;
};

struct FlattenStats {
    std::uint64_t documents = 0;
    std::uint64_t rows = 0;
};

/// Streams one or more back-to-back XML documents and writes one row per leaf
/// beneath every instance of `path`:
///
///   <ancestors...> <element> <text>          element holding only text
///   <ancestors...> <element> <attr> <value>  one per attribute
///
/// Ancestors start at the document root. Rows follow document order (attributes
/// at their start tag, text rows at the closing tag). Elements with child
/// elements contribute no text row, and neither do empty or whitespace-only
/// elements. Entities are decoded, CDATA is kept verbatim, and CR/LF inside a
/// value become spaces so every row stays on one line.
///
/// Throws DataError with the byte offset on malformed input.
FlattenStats flatten_xml(const ElementPath& path, int fd, LineWriter& out);
FlattenStats flatten_xml(const ElementPath& path, std::string_view text, LineWriter& out);

}  // namespace meterflow
