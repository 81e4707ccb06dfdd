#pragma once

// Argument helpers shared by the single-purpose stream tools.

#include <optional>
#include <string>
#include <vector>

#include "meterflow/errors.hpp"
#include "meterflow/line_io.hpp"
#include "meterflow/record.hpp"

namespace meterflow::tools {

inline bool looks_like_field_spec(const std::string& arg) {
    try {
        FieldSpec::parse(arg);
        return true;
    } catch (const UsageError&) {
        return false;
    }
}

// At most one trailing input; "-" or none means standard input.
inline LineReader open_input(const std::vector<std::string>& rest) {
    if (rest.size() > 1) throw UsageError("too many arguments");
    return LineReader::open(rest.empty() ? "-" : rest.front());
}

inline LineWriter stdout_writer() { return LineWriter::to_fd(1); }

}  // namespace meterflow::tools
