#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "meterflow/line_io.hpp"
#include "meterflow/record.hpp"

namespace meterflow {

/// Key -> payload map loaded from a master file: field 1 is the key, the
/// remaining fields are the payload. Keys are unique and every payload has
/// the same width.
class MasterIndex {
public:
    // Throws DataError on a short row, a duplicate key, or ragged payload widths.
    static MasterIndex load(LineReader& in);
    static MasterIndex load_file(const std::string& path);

    // Payload fields joined by single spaces, or nullptr for an unknown key.
    const std::string* find(std::string_view key) const;
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::size_t payload_width() const noexcept { return width_; }

private:
    std::map<std::string, std::string, std::less<>> entries_;
    std::size_t width_ = 0;
};

struct JoinCounts {
    std::uint64_t matched = 0;
    std::uint64_t unmatched = 0;
};

/// Hash join of `txn` against `master` on field `key`.
///
/// A matching row is written to `matched` with the payload inserted right after
/// the key field. A non-matching row goes to `rejects` verbatim. Both streams
/// keep input order. A row too short to resolve the key is a DataError.
JoinCounts cjoin1(const FieldSpec& key, const MasterIndex& master, LineReader& txn, LineWriter& matched,
                  LineWriter& rejects);

}  // namespace meterflow
